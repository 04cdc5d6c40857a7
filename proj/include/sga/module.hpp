#pragma once

// Finite-dimensional left modules over a FinDimAlgebra, module maps, and
// isomorphism testing with explicit certificates.

#include "sga/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sga {

struct AModule {
  AlgebraPtr alg;
  size_t dim = 0;
  std::vector<Mat> rho; // action of each algebra basis element, dim x dim

  Mat act_mat(const Vec& x) const;
  Vec act(const Vec& x, const Vec& v) const { return act_mat(x) * v; }
};

AModule regular_module(AlgebraPtr a);
AModule zero_module(AlgebraPtr a);

/* empty = the matrices really define a unital module */
std::vector<std::string> verify_module(const AModule& m);

AModule direct_sum(const AModule& a, const AModule& b);
AModule direct_sum_many(const std::vector<const AModule*>& parts);

/* smallest action-invariant subspace containing the seed columns */
Mat submodule_closure(const AModule& m, const Mat& seed_cols);

/* module structure on an invariant subspace (throws if not invariant) */
AModule submodule(const AModule& m, const Mat& basis_cols);

struct QuotientModule {
  AModule mod;
  QuotientMap qmap;
};
QuotientModule quotient_module(const AModule& m, const Mat& sub_cols);

// module over a subalgebra along an embedding (columns = subalgebra basis
// written in the ambient algebra)
AModule restrict_scalars(const AModule& m, AlgebraPtr sub, const Mat& embedding);

/* basis of Hom(m, n); each column is a dn x dm matrix stored column-major */
Mat hom_basis(const AModule& m, const AModule& n);
Mat unvec_hom(const AModule& m, const AModule& n, const Vec& v);
bool is_module_map(const AModule& m, const AModule& n, const Mat& f);

enum class IsoVerdict { iso, not_iso, inconclusive };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::inconclusive;
  // iso verdicts always carry a witness and are certain; not_iso is certified
  // when the hom space was empty, dimensions differed, or the search was
  // exhaustive; inconclusive only happens when sampling a large hom space
  bool certified = false;
  std::optional<Mat> witness;
};

IsoResult module_iso(const AModule& m, const AModule& n, uint64_t seed = 0,
                     uint64_t enum_budget = uint64_t(1) << 16,
                     size_t samples = 200);

} // namespace sga
