#pragma once

// Change-of-rings functors between skew group algebras of a group and a
// subgroup: induction, restriction, the unit and averaged splittings of the
// round trips, tensoring up along an embedded base subalgebra, and
// projective-dimension comparison across restriction.

#include "sga/homology.hpp"
#include "sga/module.hpp"
#include "sga/skew.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sga {

// thrown when a construction needs |G:H| to be a unit of the ground field
struct IndexNotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Left cosets gH of a subgroup, with deterministic representatives: the
// identity coset comes first and every representative is the smallest parent
// index not yet covered.

struct CosetSystem {
  std::vector<size_t> sub_parent;   // subgroup local index -> parent index
  std::vector<size_t> sub_index_of; // parent index -> local index (npos if outside)
  std::vector<size_t> reps;         // coset representatives; reps[0] = identity
  std::vector<size_t> coset_of;     // parent element -> its coset
  std::vector<size_t> h_part;       // g -> parent index of rep(g)^{-1} * g

  size_t index() const { return reps.size(); }

  static constexpr size_t npos = static_cast<size_t>(-1);
};

CosetSystem coset_system(const FiniteGroup& g, const FiniteGroup::SubgroupData& sub);

// columns express the subgroup skew algebra basis inside the full one
Mat skew_subalgebra_embedding(const SkewAlgebra& big, const SkewAlgebra& small,
                              const CosetSystem& cs);

// ---------------------------------------------------------------------------
// Induction and restriction. `small` must be the skew algebra of the
// restricted action, so that it shares the base algebra of `big`.

// big (x)_small v, realized on coset-indexed blocks; dim = index * dim(v)
AModule induce_module(const SkewAlgebra& big, const SkewAlgebra& small,
                      const CosetSystem& cs, const AModule& v);

// same underlying space, action restricted along the subalgebra embedding
AModule restrict_module(const SkewAlgebra& big, const SkewAlgebra& small,
                        const CosetSystem& cs, const AModule& m);

// block-diagonal matrix of an induced module map (index copies of f)
Mat induce_map(const CosetSystem& cs, const Mat& f);

// ---------------------------------------------------------------------------
// Split pairs. Both maps are verified module maps and backward * forward is
// the identity; construction throws std::logic_error if verification fails.

// v -> induce(v) restricted back: forward inserts into the identity-coset
// block, backward projects onto it (maps of small-modules)
struct UnitSplit {
  AModule up;      // induced module over the full algebra
  AModule up_down; // the same space seen over the subgroup algebra
  Mat iota;        // v -> up_down
  Mat delta;       // up_down -> v, delta * iota = id
};
UnitSplit unit_split(const SkewAlgebra& big, const SkewAlgebra& small,
                     const CosetSystem& cs, const AModule& v);

// m -> restrict(m) induced back: forward averages over coset representatives
// and needs the index invertible (throws IndexNotInvertible otherwise);
// both maps are maps of modules over the full algebra
struct AverageSplit {
  AModule down;    // m restricted to the subgroup algebra
  AModule down_up; // restriction induced back up
  Mat theta;       // m -> down_up
  Mat rho;         // down_up -> m, rho * theta = id
};
AverageSplit average_split(const SkewAlgebra& big, const SkewAlgebra& small,
                           const CosetSystem& cs, const AModule& m);

// ---------------------------------------------------------------------------
// Tensoring up along an embedded subalgebra: big (x)_sub m for a module m
// over sub, presented as the free space big (x) m modulo balancing relations.

struct TensorUp {
  AModule over_big;   // the tensor product as a module over big
  AModule restricted; // the same space as a module over sub
  QuotientMap balance; // from the free space, flat index i*dim(m) + a
};
TensorUp tensor_up(AlgebraPtr big, AlgebraPtr sub, const Mat& embedding,
                   const AModule& m);

// functorial map big (x) f between tensor products over the same algebras
Mat tensor_up_map(const TensorUp& from, const TensorUp& to, const Mat& f);

// m -> tensor_up(m) as sub-modules: forward is m_a -> 1 (x) m_a, backward
// applies a bimodule splitting of the inclusion sub -> big to the left tensor
// factor; both verified, backward * forward = id
struct SubalgebraSplit {
  TensorUp tensor;
  Mat psi; // m -> tensor.restricted
  Mat phi; // tensor.restricted -> m, phi * psi = id
};
SubalgebraSplit subalgebra_split(AlgebraPtr big, AlgebraPtr sub,
                                 const Mat& embedding, const Mat& zeta,
                                 const AModule& m);

// ---------------------------------------------------------------------------
// Projective dimension across restriction: pd over the subgroup algebra never
// exceeds pd over the full one, with equality when the index is invertible.

enum class PdRelation {
  equal,        // both sides resolved (or both certified infinite) and agree
  down_smaller, // both sides resolved, restriction has strictly smaller pd
  inconclusive, // a side is only bounded below (cutoff hit)
  violated,     // restriction certified larger: contradicts the comparison law
};

struct PdComparison {
  DimensionReport down; // pd of the restricted module
  DimensionReport up;   // pd of the module itself
  PdRelation relation = PdRelation::inconclusive;
};

PdComparison pd_compare(const AlgebraData& big_data, const AlgebraData& small_data,
                        const SkewAlgebra& big, const SkewAlgebra& small,
                        const CosetSystem& cs, const AModule& m, size_t cutoff);

std::string pd_relation_name(PdRelation r);

} // namespace sga
