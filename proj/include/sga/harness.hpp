#pragma once

// Problem specifications (parsing and validation with path-tagged errors),
// bundled fixtures, derived-algebra workbench, verification batteries, report
// assembly in JSON and markdown, and a content-addressed cache for the
// expensive dimension computations.

#include "sga/complexes.hpp"
#include "sga/functors.hpp"
#include "sga/homology.hpp"
#include "sga/skew.hpp"

#include "json.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sga::harness {

using njson = nlohmann::json;          // sorted keys; canonical for hashing
using ordered_json = nlohmann::ordered_json; // insertion order; for reports

// ---------------------------------------------------------------------------
// Specifications.

struct SpecError {
  std::string path; // dotted document path, e.g. "$.algebra.quiver.arrows[0]"
  std::string message;
  std::string str() const { return path + ": " + message; }
};

struct SpecOptions {
  size_t cutoff = 10;
  size_t length_bound = 3;
  size_t mult_bound = 2;
  uint64_t budget = 1000000;
  uint64_t seed = 0;

  ordered_json to_json() const;
  SgldimOptions sgldim_options(bool use_closed_forms = true) const;
};

struct ParsedSpec {
  std::string name; // fixture name or caller-supplied tag
  uint32_t p = 2;
  AlgebraPtr base;
  std::optional<QuiverAlgebra> quiver; // set when presented as a quiver
  FiniteGroup group;                   // trivial group when absent
  std::shared_ptr<const GroupAction> action; // always set once validated
  std::vector<size_t> sylow_elements;  // parent indices, identity included
  SpecOptions options;
  std::string content_hash; // FNV-1a hex of the canonicalized document
};

struct ParseResult {
  std::optional<ParsedSpec> spec;
  std::vector<SpecError> errors;
  bool ok() const { return errors.empty() && spec.has_value(); }
};

/* full schema + semantic validation; unknown fields are rejected */
ParseResult parse_spec(const njson& doc, const std::string& name = "spec");
ParseResult parse_spec_text(const std::string& text,
                            const std::string& name = "spec");
ParseResult parse_spec_file(const std::string& path);

// ---------------------------------------------------------------------------
// Bundled fixtures (self-validating; see `fixtures --check`).

std::vector<std::string> fixture_names();
bool has_fixture(const std::string& name);
/* throws std::invalid_argument on unknown names */
njson fixture_document(const std::string& name);

// ---------------------------------------------------------------------------
// Workbench: the four algebras of interest and their analyses.

struct Workbench {
  ParsedSpec spec;
  SkewAlgebra full;                // Lambda G
  FiniteGroup::SubgroupData sub;   // S <= G
  SkewAlgebra small;               // Lambda S
  CosetSystem cosets;
  FixedAlgebra fixed;              // Lambda^S inside Lambda
  AlgebraDataPtr base_data, full_data, small_data, fixed_data;
};
Workbench make_workbench(const ParsedSpec& spec);

// ---------------------------------------------------------------------------
// Reports.

struct CheckResult {
  std::string name;
  std::string status; // "pass" | "fail" | "inconclusive" | "info"
  ordered_json details;
};

struct Report {
  std::string command;
  std::string subject;     // fixture name / spec tag
  std::string spec_hash;
  SpecOptions options;
  std::vector<CheckResult> checks;
  double elapsed_seconds = 0.0;
  size_t cache_hits = 0, cache_misses = 0;
  // set when an sgldim search ran out of budget before exhausting its bounds
  bool not_exhaustive = false;

  size_t count(const std::string& status) const;
  bool failed() const { return count("fail") > 0; }
  void add(std::string name, std::string status, ordered_json details);

  /* normalized = strip run-environment data (timing, cache counters) */
  ordered_json to_json(bool normalized) const;
  std::string to_markdown(bool normalized) const; // same verdicts, same order
};

// ---------------------------------------------------------------------------
// Serialization of engine results (stable field order).

ordered_json dimension_report_json(const DimensionReport& r);
ordered_json findim_report_json(const FinDimReport& r);
ordered_json gldim_report_json(const GlobalDimReport& r);
ordered_json sgldim_report_json(const SgldimReport& r);
ordered_json verdict_json(const PiecewiseVerdict& v);

/* invariant re-verification used when loading cached dimension payloads */
bool dimension_payload_valid(const njson& j, size_t expected_simples);

// ---------------------------------------------------------------------------
// Content-addressed result cache (files named by key, atomic writes).

class ResultCache {
public:
  ResultCache() = default;                  // disabled
  explicit ResultCache(std::string dir);    // enabled; creates the directory

  bool enabled() const { return enabled_; }
  static uint64_t fnv1a(const std::string& s);
  static std::string key(const ParsedSpec& spec, const std::string& op,
                         const std::string& params);

  // returns the stored document when present and `valid` accepts it;
  // otherwise counts a miss (corrupt entries are treated as absent)
  std::optional<njson> load(const std::string& key,
                            const std::function<bool(const njson&)>& valid);
  void store(const std::string& key, const njson& value);

  size_t hits = 0, misses = 0;

private:
  std::string dir_;
  bool enabled_ = false;
};

// ---------------------------------------------------------------------------
// Subcommand bodies and verification batteries. All of them only record their
// findings; failed assertions become "fail" checks, never exceptions.
// NonSplitError propagates to the caller (exit code 3 in the CLI).

Report run_build(const Workbench& wb);
Report run_dims(const Workbench& wb, ResultCache& cache);
Report run_sgldim(const Workbench& wb, bool use_closed_forms);
Report run_functors(const Workbench& wb);
/* finitistic/strong-global-dimension equalities across the four algebras */
Report battery_dimension_equalities(const Workbench& wb, ResultCache& cache);
/* induction/restriction transfer invariants and split identities */
Report battery_transfer_invariants(const Workbench& wb);
/* both batteries (+ optional open-question diagnostics on fdim transfer) */
Report run_verify(const Workbench& wb, ResultCache& cache,
                  bool fdim_transfer_diagnostics);

} // namespace sga::harness
