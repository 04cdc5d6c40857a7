#pragma once

// Homological machinery: Jacobson radicals in characteristic p, splitness
// tests, primitive idempotent decompositions, projective covers, syzygies,
// projective / global / finitistic dimensions, and Nakayama classification.

#include "sga/module.hpp"
#include "sga/skew.hpp"

#include <optional>
#include <utility>

namespace sga {

// Raised whenever an operation needs a split algebra (all simple quotient
// components full matrix algebras over the prime field) and the input fails
// the splitness test.
struct NonSplitError : std::runtime_error {
  explicit NonSplitError(const std::string& what) : std::runtime_error(what) {}
};

/* columns spanning the Jacobson radical, via iterated lifted trace forms */
Mat radical_algebra(const FinDimAlgebra& a);

/* split <=> the Frobenius map fixes the center of a/rad pointwise */
bool check_split(const FinDimAlgebra& a, const Mat& rad_basis);

// true when a/rad is one-dimensional; false when a is split and a/rad is
// bigger; throws NonSplitError otherwise (a non-split semisimple quotient can
// be a field, so locality cannot be decided by dimension alone)
bool is_local_algebra(const FinDimAlgebra& a);

// Radical, semisimple quotient, splitness, and (in the split case) a full
// primitive idempotent decomposition with its Morita bookkeeping.
struct AlgebraData {
  AlgebraPtr alg;
  Mat rad;             // columns
  QuotientAlgebra quo; // a / rad
  bool split = false;

  // populated only when split:
  std::vector<Vec> idem;   // complete primitive orthogonal set
  std::vector<size_t> cls; // idem index -> iso class of the PIM
  size_t n_classes = 0;
  std::vector<size_t> rep;     // class -> representative idem index
  std::vector<AModule> pim;    // per class: A e as a left module
  std::vector<Mat> pim_basis;  // per class: ambient column basis of A e
  std::vector<AModule> simple; // per class: top of the PIM
  std::vector<std::vector<size_t>> cartan; // [i][j] = [P_i : S_j]

  void require_split(const std::string& op) const {
    if (!split) throw NonSplitError(op + " requires a split algebra");
  }
};
AlgebraData analyze_algebra(AlgebraPtr a);

/* complete primitive orthogonal idempotent set of a split algebra */
std::vector<Vec> primitive_idempotents(const FinDimAlgebra& a);

struct PrimitiveSetCheck {
  IdempotentSetCheck basic;
  bool all_primitive = false;
  std::vector<std::string> issues;
  bool ok() const { return basic.ok() && all_primitive; }
};
PrimitiveSetCheck check_primitive_idempotent_set(const FinDimAlgebra& a,
                                                 const std::vector<Vec>& es);

// ---------------------------------------------------------------------------
// Projective covers and dimensions.

/* multiplicity of each simple in m / rad m */
std::vector<size_t> top_multiplicities(const AlgebraData& d, const AModule& m);

struct CoverData {
  std::vector<size_t> classes; // PIM class per summand of the cover
  Mat map;                     // dim m x dim P: the cover P -> m
  AModule total;               // P = direct sum of the listed PIMs
  Mat kernel_basis;            // columns, inside P
  AModule kernel;              // the syzygy, action restricted from P
  // generator images in m (one per summand), retained for diagnostics
  std::vector<Vec> generators;
};
CoverData projective_cover(const AlgebraData& d, const AModule& m);

bool is_projective(const AlgebraData& d, const AModule& m);

struct Resolution {
  std::vector<CoverData> steps; // steps[s] covers the s-th syzygy
};
Resolution resolve(const AlgebraData& d, const AModule& m, size_t length);

struct DimensionReport {
  enum class Kind { exact, at_least, infinite_certified };
  Kind kind = Kind::at_least;
  size_t value = 0; // the dimension, or the certified lower bound
  // for infinite_certified: syzygy indices s < t with certified iso
  std::optional<std::pair<size_t, size_t>> period;

  bool is_exact() const { return kind == Kind::exact; }
  bool is_infinite() const { return kind == Kind::infinite_certified; }
  std::string str() const;
};

DimensionReport pd_module(const AlgebraData& d, const AModule& m, size_t cutoff);

struct GlobalDimReport {
  DimensionReport overall;
  std::vector<DimensionReport> per_simple;
};
GlobalDimReport global_dimension(const AlgebraData& d, size_t cutoff);

// ---------------------------------------------------------------------------
// Nakayama algebras and the finitistic dimension.

/* every left and right PIM has simple radical layers */
bool is_nakayama(const AlgebraData& d);

/* all indecomposables P/rad^j P of a Nakayama algebra, one per iso class */
std::vector<AModule> indecomposables_nakayama(const AlgebraData& d);

struct FinDimReport {
  DimensionReport overall;
  // exact mode walks the full Nakayama catalog; otherwise the bound comes
  // from the sampled module list and is only a lower bound
  bool nakayama_exact = false;
  std::vector<DimensionReport> per_module;
};
FinDimReport finitistic_dimension(const AlgebraData& d, size_t cutoff);
/* catalog variant for arbitrary algebras: max finite pd over the catalog */
FinDimReport finitistic_dimension_catalog(const AlgebraData& d,
                                          const std::vector<AModule>& catalog,
                                          size_t cutoff);

// ---------------------------------------------------------------------------
// Module decomposition and assorted helpers.

/* direct sum decomposition into indecomposables via End(m) idempotents;
   throws NonSplitError when End(m) is not split */
std::vector<AModule> decompose_module(const AModule& m);

/* deterministic pseudo-random module: quotient of a random projective by a
   random submodule of its radical */
AModule random_module(const AlgebraData& d, Rng& rng, size_t max_mult = 2);

// fixed points of a subgroup S inside a module over the skew group algebra,
// as a module over the fixed subalgebra of the base action
AModule fixed_points_module(const SkewAlgebra& sk, const FixedAlgebra& fx,
                            const std::vector<size_t>& sub_elems,
                            const AModule& m);

} // namespace sga
