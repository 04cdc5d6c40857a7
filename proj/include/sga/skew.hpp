#pragma once

// Finite groups acting on algebras, skew group algebras, fixed subalgebras,
// and the bimodule splitting solver for the extension Lambda^S <= Lambda.

#include "sga/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sga {

class FiniteGroup {
public:
  /* placeholder state; only from_table / cyclic produce usable groups */
  FiniteGroup() = default;

  // table[a][b] = index of a*b; throws std::invalid_argument unless the
  // table defines a genuine group (associative, identity, inverses).
  static FiniteGroup from_table(std::vector<std::string> labels,
                                std::vector<std::vector<size_t>> table);
  static FiniteGroup cyclic(size_t n);

  size_t order() const { return n_; }
  size_t mul(size_t a, size_t b) const { return mul_[a][b]; }
  size_t identity() const { return id_; }
  size_t inverse(size_t a) const { return inv_[a]; }
  size_t element_order(size_t a) const;
  const std::string& label(size_t i) const { return labels_[i]; }

  bool is_subgroup(const std::vector<size_t>& elems) const;

  // elems must form a subgroup; elements keep the given order except the
  // identity, which is moved to front.
  struct SubgroupData;
  SubgroupData subgroup(std::vector<size_t> elems) const;

  /* brute-force Sylow p-subgroup, intended for small orders */
  std::vector<size_t> find_sylow(uint32_t p) const;

private:
  size_t n_ = 0;
  std::vector<std::vector<size_t>> mul_;
  std::vector<std::string> labels_;
  size_t id_ = 0;
  std::vector<size_t> inv_;
};

struct FiniteGroup::SubgroupData {
  FiniteGroup group;
  std::vector<size_t> parent_of; // local index -> parent index
};

struct SylowCheck {
  bool is_subgroup = false;
  bool order_matches = false; // |H| == p-part of |G|
  size_t expected_order = 0;
  size_t actual_order = 0;
  bool ok() const { return is_subgroup && order_matches; }
};
SylowCheck verify_sylow(const FiniteGroup& g, const std::vector<size_t>& elems,
                        uint32_t p);

// Action of a finite group on an algebra by algebra automorphisms, one
// invertible matrix per group element.
class GroupAction {
public:
  GroupAction(AlgebraPtr alg, FiniteGroup grp, std::vector<Mat> phi);

  const FinDimAlgebra& algebra() const { return *alg_; }
  AlgebraPtr algebra_ptr() const { return alg_; }
  const FiniteGroup& group() const { return grp_; }
  const Mat& phi(size_t g) const { return phi_[g]; }
  Vec apply(size_t g, const Vec& x) const { return phi_[g] * x; }

  /* empty = genuine action (identity at e, multiplicative, automorphisms) */
  std::vector<std::string> verify() const;

  GroupAction restricted(const FiniteGroup::SubgroupData& sub) const;

private:
  AlgebraPtr alg_;
  FiniteGroup grp_;
  std::vector<Mat> phi_;
};

// ---------------------------------------------------------------------------
// Skew group algebra  Lambda G  with basis  b_i (x) g, flat index g*dim + i.

struct SkewAlgebra {
  AlgebraPtr base;
  FiniteGroup group;
  std::vector<Mat> phi;
  AlgebraPtr algebra;

  size_t flat(size_t i, size_t g) const { return g * base->dim() + i; }
  Vec embed_base(const Vec& x) const;  // x |-> x (x) e
  Vec embed_group(size_t g) const;     // g |-> 1 (x) g
  Mat base_embedding() const;          // dim(base) columns
};
SkewAlgebra skew_group_algebra(const GroupAction& act);

// ---------------------------------------------------------------------------
// Fixed subalgebra Lambda^H for a subgroup H (given by parent indices).

struct FixedAlgebra {
  AlgebraPtr ambient;
  AlgebraPtr algebra;
  Mat embedding; // dim(ambient) x dim(fixed)
  // whether span{ sum_{h in H} phi_h(b_j) } equals the fixed subspace;
  // holds in the free regime but can fail in general
  bool trace_span_agrees = false;
};
FixedAlgebra fixed_algebra(const GroupAction& act,
                           const std::vector<size_t>& sub_elems);

// ---------------------------------------------------------------------------
// Idempotent bookkeeping.

/* orthogonality, idempotence, completeness; primitivity lives with the
   homological layer since it needs radicals */
struct IdempotentSetCheck {
  bool all_idempotent = false;
  bool pairwise_orthogonal = false;
  bool complete = false; // sum == 1
  std::vector<std::string> issues;
  bool ok() const { return all_idempotent && pairwise_orthogonal && complete; }
};
IdempotentSetCheck check_idempotent_set(const FinDimAlgebra& a,
                                        const std::vector<Vec>& es);

struct ActionOnIdempotents {
  bool closed = false;      // every phi_h(e_i) is again some e_j
  bool free_action = false; // closed and no nontrivial h fixes any e_i
  // perm[local h][i] = j when phi_h(e_i) = e_j (npos when not closed there)
  std::vector<std::vector<size_t>> perm;
};
ActionOnIdempotents check_action_on_idempotents(
    const GroupAction& act, const std::vector<Vec>& es,
    const std::vector<size_t>& sub_elems);

// ---------------------------------------------------------------------------
// Splitting of the inclusion  Gamma = Lambda^H  c  Lambda  as Gamma-bimodules:
// a projection zeta with  zeta|_Gamma = id,  im(zeta) = Gamma,  and
// zeta(a x b) = a zeta(x) b  for a, b in Gamma.  Returns the projection and a
// basis of its kernel (the complement), or nullopt when no splitting exists.

struct SplittingData {
  Mat zeta;             // dim(ambient) x dim(ambient), idempotent
  Mat complement_basis; // columns span ker(zeta)
};
/* sub_basis columns must span a unital subalgebra (checked) */
std::optional<SplittingData> bimodule_splitting(const FinDimAlgebra& ambient,
                                                const Mat& sub_basis);
std::optional<SplittingData> bimodule_splitting(const FixedAlgebra& fixed);

} // namespace sga
