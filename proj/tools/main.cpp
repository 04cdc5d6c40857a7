// Command-line front end: build the algebras of a problem specification and
// run the dimension computations, searches, functor identities, and the
// combined verification battery over them.

#include "sga/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <string>

namespace {

using namespace sga;
using namespace sga::harness;

struct CommonArgs {
  std::string fixture;
  std::string spec_path;
  size_t cutoff = 0;
  size_t length_bound = 0;
  size_t mult_bound = 0;
  uint64_t budget = 0;
  uint64_t seed = 0;
  std::string format = "json";
  std::string cache_dir = ".sga-cache";
  bool no_cache = false;
  bool normalized = false;
  bool no_closed_forms = false;
  bool require_exhaustive = false;
  bool fdim_transfer = false;
};

struct SubFlags {
  CLI::Option* cutoff = nullptr;
  CLI::Option* length_bound = nullptr;
  CLI::Option* mult_bound = nullptr;
  CLI::Option* budget = nullptr;
  CLI::Option* seed = nullptr;
};

SubFlags add_common(CLI::App* sub, CommonArgs& a, bool needs_spec) {
  if (needs_spec) {
    auto* f = sub->add_option("--fixture", a.fixture, "bundled fixture name");
    auto* s = sub->add_option("--spec", a.spec_path, "path to a spec JSON file");
    f->excludes(s);
    s->excludes(f);
  }
  SubFlags fl;
  fl.cutoff = sub->add_option("--cutoff", a.cutoff,
                              "resolution cutoff for dimension computations");
  fl.length_bound = sub->add_option("--length-bound", a.length_bound,
                                    "complex length bound for sgldim searches");
  fl.mult_bound = sub->add_option("--mult-bound", a.mult_bound,
                                  "per-degree multiplicity bound for searches");
  fl.budget = sub->add_option("--budget", a.budget,
                              "enumeration step budget for searches");
  fl.seed = sub->add_option("--seed", a.seed, "seed for randomized sampling");
  sub->add_option("--format", a.format, "report format")
      ->check(CLI::IsMember({"json", "md"}));
  sub->add_option("--cache-dir", a.cache_dir, "directory for cached results");
  sub->add_flag("--no-cache", a.no_cache, "disable the result cache");
  sub->add_flag("--normalized", a.normalized,
                "strip run-environment data (timing, cache counters)");
  return fl;
}

int emit_parse_errors(const ParseResult& pr) {
  for (const auto& e : pr.errors) std::cerr << e.str() << "\n";
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"skew group algebra workbench"};
  app.require_subcommand(1);

  CommonArgs a;
  auto* cmd_build = app.add_subcommand("build", "construct and verify the algebras");
  auto* cmd_dims =
      app.add_subcommand("dims", "finitistic and global dimensions of each algebra");
  auto* cmd_sgldim =
      app.add_subcommand("sgldim", "strong global dimension searches and verdicts");
  auto* cmd_verify =
      app.add_subcommand("verify", "run the full verification battery");
  auto* cmd_functors =
      app.add_subcommand("functors", "induction/restriction split identities");
  auto* cmd_fixtures = app.add_subcommand("fixtures", "list bundled fixtures");

  SubFlags fb = add_common(cmd_build, a, true);
  SubFlags fd = add_common(cmd_dims, a, true);
  SubFlags fs = add_common(cmd_sgldim, a, true);
  SubFlags fv = add_common(cmd_verify, a, true);
  SubFlags ff = add_common(cmd_functors, a, true);

  cmd_sgldim->add_flag("--no-closed-forms", a.no_closed_forms,
                       "ignore semisimple/hereditary closed forms");
  cmd_verify->add_flag("--no-closed-forms", a.no_closed_forms,
                       "ignore semisimple/hereditary closed forms");
  cmd_sgldim->add_flag("--require-exhaustive", a.require_exhaustive,
                       "exit 4 unless every search exhausted its bounds");
  cmd_verify->add_flag("--require-exhaustive", a.require_exhaustive,
                       "exit 4 unless every search exhausted its bounds");
  cmd_verify->add_flag("--fdim-transfer-conjecture", a.fdim_transfer,
                       "also record open-question diagnostics on finitistic-"
                       "dimension transfer");

  bool check_fixtures = false;
  cmd_fixtures->add_flag("--check", check_fixtures,
                         "parse and build every bundled fixture");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_fixtures->parsed()) {
      int rc = 0;
      for (const auto& name : fixture_names()) {
        if (!check_fixtures) {
          std::cout << name << "\n";
          continue;
        }
        auto pr = parse_spec(fixture_document(name), name);
        if (!pr.ok()) {
          std::cout << name << ": INVALID\n";
          for (const auto& e : pr.errors) std::cerr << name << ": " << e.str() << "\n";
          rc = 1;
          continue;
        }
        Workbench wb = make_workbench(*pr.spec);
        Report rep = run_build(wb);
        bool ok = !rep.failed();
        std::cout << name << ": " << (ok ? "ok" : "FAILED") << "\n";
        if (!ok) rc = 1;
      }
      return rc;
    }

    CLI::App* sub = app.get_subcommands().front();
    SubFlags* fl = cmd_build->parsed()    ? &fb
                   : cmd_dims->parsed()   ? &fd
                   : cmd_sgldim->parsed() ? &fs
                   : cmd_verify->parsed() ? &fv
                                          : &ff;

    ParseResult pr;
    if (!a.fixture.empty()) {
      if (!has_fixture(a.fixture)) {
        std::cerr << "unknown fixture '" << a.fixture << "'\n";
        return 2;
      }
      pr = parse_spec(fixture_document(a.fixture), a.fixture);
    } else if (!a.spec_path.empty()) {
      pr = parse_spec_file(a.spec_path);
    } else {
      std::cerr << sub->get_name() << " needs --fixture or --spec\n";
      return 2;
    }
    if (!pr.ok()) return emit_parse_errors(pr);

    ParsedSpec spec = std::move(*pr.spec);
    if (fl->cutoff->count()) spec.options.cutoff = a.cutoff;
    if (fl->length_bound->count()) spec.options.length_bound = a.length_bound;
    if (fl->mult_bound->count()) spec.options.mult_bound = a.mult_bound;
    if (fl->budget->count()) spec.options.budget = a.budget;
    if (fl->seed->count()) spec.options.seed = a.seed;

    Workbench wb = make_workbench(spec);
    ResultCache cache = a.no_cache ? ResultCache() : ResultCache(a.cache_dir);

    Report rep;
    if (cmd_build->parsed()) {
      rep = run_build(wb);
    } else if (cmd_dims->parsed()) {
      rep = run_dims(wb, cache);
    } else if (cmd_sgldim->parsed()) {
      rep = run_sgldim(wb, !a.no_closed_forms);
    } else if (cmd_functors->parsed()) {
      rep = run_functors(wb);
    } else {
      rep = run_verify(wb, cache, a.fdim_transfer);
    }

    if (a.format == "md")
      std::cout << rep.to_markdown(a.normalized);
    else
      std::cout << rep.to_json(a.normalized).dump(2) << "\n";

    if (rep.failed()) return 1;
    if (a.require_exhaustive && rep.not_exhaustive) return 4;
    return 0;
  } catch (const sga::NonSplitError& e) {
    std::cerr << "non-split input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
