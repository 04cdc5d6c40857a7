#include "sga/functors.hpp"

#include <stdexcept>

namespace sga {

// ---------------------------------------------------------------------------
// Coset bookkeeping.

CosetSystem coset_system(const FiniteGroup& g, const FiniteGroup::SubgroupData& sub) {
  const size_t n = g.order();
  const size_t h = sub.parent_of.size();
  if (h == 0 || n % h != 0)
    throw std::invalid_argument("subgroup order must divide the group order");

  CosetSystem cs;
  cs.sub_parent = sub.parent_of;
  cs.sub_index_of.assign(n, CosetSystem::npos);
  for (size_t s = 0; s < h; ++s) {
    if (sub.parent_of[s] >= n)
      throw std::invalid_argument("subgroup element outside the group");
    cs.sub_index_of[sub.parent_of[s]] = s;
  }
  cs.coset_of.assign(n, CosetSystem::npos);
  cs.h_part.assign(n, CosetSystem::npos);

  // deterministic sweep: the identity first, then ascending parent indices
  std::vector<size_t> sweep;
  sweep.reserve(n);
  sweep.push_back(g.identity());
  for (size_t a = 0; a < n; ++a)
    if (a != g.identity()) sweep.push_back(a);

  for (size_t a : sweep) {
    if (cs.coset_of[a] != CosetSystem::npos) continue;
    const size_t idx = cs.reps.size();
    cs.reps.push_back(a);
    for (size_t s = 0; s < h; ++s) {
      const size_t q = g.mul(a, sub.parent_of[s]);
      if (cs.coset_of[q] != CosetSystem::npos)
        throw std::logic_error("coset enumeration revisited an element; "
                               "the subgroup data is inconsistent");
      cs.coset_of[q] = idx;
      cs.h_part[q] = sub.parent_of[s];
    }
  }
  if (cs.reps.size() * h != n)
    throw std::logic_error("cosets failed to partition the group");
  return cs;
}

static void check_same_base(const SkewAlgebra& big, const SkewAlgebra& small,
                            const CosetSystem& cs) {
  if (big.base != small.base)
    throw std::invalid_argument("the two skew algebras must share a base algebra");
  if (small.group.order() != cs.sub_parent.size())
    throw std::invalid_argument("coset system does not match the subgroup");
}

Mat skew_subalgebra_embedding(const SkewAlgebra& big, const SkewAlgebra& small,
                              const CosetSystem& cs) {
  check_same_base(big, small, cs);
  const uint32_t p = big.algebra->modulus();
  const size_t nb = big.base->dim();
  Mat emb(p, big.algebra->dim(), small.algebra->dim());
  for (size_t s = 0; s < small.group.order(); ++s)
    for (size_t i = 0; i < nb; ++i)
      emb.set(big.flat(i, cs.sub_parent[s]), small.flat(i, s), 1);
  return emb;
}

// ---------------------------------------------------------------------------
// Induction: on the underlying space (+)_i g_i (x) V, the generator b (x) g
// acts by  (b (x) g).(g_i (x) v) = g_j (x) (phi_{g_j^{-1}}(b) (x) h).v  where
// g g_i = g_j h with h in the subgroup.

AModule induce_module(const SkewAlgebra& big, const SkewAlgebra& small,
                      const CosetSystem& cs, const AModule& v) {
  check_same_base(big, small, cs);
  if (v.alg != small.algebra)
    throw std::invalid_argument("module is not over the subgroup skew algebra");
  const uint32_t p = big.algebra->modulus();
  const size_t nb = big.base->dim();
  const size_t t = cs.index();
  const size_t dv = v.dim;

  AModule out;
  out.alg = big.algebra;
  out.dim = t * dv;
  out.rho.reserve(big.algebra->dim());
  for (size_t g = 0; g < big.group.order(); ++g) {
    for (size_t k = 0; k < nb; ++k) {
      Mat rho(p, out.dim, out.dim);
      for (size_t i = 0; i < t; ++i) {
        const size_t q = big.group.mul(g, cs.reps[i]);
        const size_t j = cs.coset_of[q];
        const size_t s = cs.sub_index_of[cs.h_part[q]];
        const Vec mu = big.phi[big.group.inverse(cs.reps[j])] * Vec::unit(p, nb, k);
        Vec elem(p, small.algebra->dim());
        for (size_t l = 0; l < nb; ++l) elem.set(small.flat(l, s), mu[l]);
        const Mat block = v.act_mat(elem);
        for (size_t a = 0; a < dv; ++a)
          for (size_t b = 0; b < dv; ++b)
            if (block.at(b, a) != 0) rho.set(j * dv + b, i * dv + a, block.at(b, a));
      }
      out.rho.push_back(std::move(rho));
    }
  }
  return out;
}

AModule restrict_module(const SkewAlgebra& big, const SkewAlgebra& small,
                        const CosetSystem& cs, const AModule& m) {
  check_same_base(big, small, cs);
  if (m.alg != big.algebra)
    throw std::invalid_argument("module is not over the full skew algebra");
  return restrict_scalars(m, small.algebra, skew_subalgebra_embedding(big, small, cs));
}

Mat induce_map(const CosetSystem& cs, const Mat& f) {
  const size_t t = cs.index();
  Mat out(f.modulus(), t * f.rows(), t * f.cols());
  for (size_t i = 0; i < t; ++i)
    for (size_t r = 0; r < f.rows(); ++r)
      for (size_t c = 0; c < f.cols(); ++c)
        if (f.at(r, c) != 0) out.set(i * f.rows() + r, i * f.cols() + c, f.at(r, c));
  return out;
}

// ---------------------------------------------------------------------------
// Split pairs around the two round trips.

static void require_split_identities(const AModule& src, const AModule& mid,
                                     const Mat& fwd, const Mat& bwd,
                                     const char* what) {
  if (!is_module_map(src, mid, fwd) || !is_module_map(mid, src, bwd))
    throw std::logic_error(std::string(what) + ": maps are not module maps");
  if (!(bwd * fwd).is_identity())
    throw std::logic_error(std::string(what) + ": retraction identity failed");
}

UnitSplit unit_split(const SkewAlgebra& big, const SkewAlgebra& small,
                     const CosetSystem& cs, const AModule& v) {
  const uint32_t p = big.algebra->modulus();
  const size_t t = cs.index();
  const size_t dv = v.dim;

  UnitSplit out;
  out.up = induce_module(big, small, cs, v);
  out.up_down = restrict_module(big, small, cs, out.up);
  out.iota = Mat(p, t * dv, dv);
  out.delta = Mat(p, dv, t * dv);
  for (size_t a = 0; a < dv; ++a) {
    out.iota.set(a, a, 1);  // v -> identity-coset block
    out.delta.set(a, a, 1); // project the identity-coset block, kill the rest
  }
  require_split_identities(v, out.up_down, out.iota, out.delta, "unit split");
  return out;
}

AverageSplit average_split(const SkewAlgebra& big, const SkewAlgebra& small,
                           const CosetSystem& cs, const AModule& m) {
  const uint32_t p = big.algebra->modulus();
  const size_t t = cs.index();
  if (t % p == 0)
    throw IndexNotInvertible("subgroup index " + std::to_string(t) +
                             " vanishes modulo " + std::to_string(p));
  const uint32_t inv_t = inv_mod(static_cast<uint32_t>(t % p), p);
  const size_t dm = m.dim;

  AverageSplit out;
  out.down = restrict_module(big, small, cs, m);
  out.down_up = induce_module(big, small, cs, out.down);
  out.theta = Mat(p, t * dm, dm);
  out.rho = Mat(p, dm, t * dm);
  for (size_t i = 0; i < t; ++i) {
    // component i of theta: (1/t) g_i^{-1} applied to the vector
    const Mat back = m.act_mat(big.embed_group(big.group.inverse(cs.reps[i]))).scaled(inv_t);
    const Mat fwdi = m.act_mat(big.embed_group(cs.reps[i]));
    for (size_t a = 0; a < dm; ++a)
      for (size_t b = 0; b < dm; ++b) {
        if (back.at(b, a) != 0) out.theta.set(i * dm + b, a, back.at(b, a));
        if (fwdi.at(a, b) != 0) out.rho.set(a, i * dm + b, fwdi.at(a, b));
      }
  }
  require_split_identities(m, out.down_up, out.theta, out.rho, "average split");
  return out;
}

// ---------------------------------------------------------------------------
// Tensoring up along an embedded subalgebra.

// action of x in big on the free space big (x) m: (i, a) -> (x b_i) (x) a
static Mat free_left_action(const FinDimAlgebra& big, size_t dm, const Vec& x) {
  const uint32_t p = big.modulus();
  const size_t nb = big.dim();
  const Mat lx = big.left_mult(x);
  Mat out(p, nb * dm, nb * dm);
  for (size_t i = 0; i < nb; ++i) {
    const Vec c = lx.col(i);
    for (size_t k = 0; k < nb; ++k)
      if (c[k] != 0)
        for (size_t a = 0; a < dm; ++a) out.set(k * dm + a, i * dm + a, c[k]);
  }
  return out;
}

// columns spanning the balancing relations (b_i g_j) (x) a - b_i (x) (g_j . a)
static Mat balancing_relations(const FinDimAlgebra& big, const Mat& embedding,
                               const AModule& m) {
  const uint32_t p = big.modulus();
  const size_t nb = big.dim();
  const size_t ns = embedding.cols();
  const size_t dm = m.dim;
  Mat rels(p, nb * dm, nb * ns * dm);
  size_t cidx = 0;
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < ns; ++j) {
      const Vec lhs = big.mul(big.basis_vec(i), embedding.col(j));
      for (size_t a = 0; a < dm; ++a, ++cidx) {
        for (size_t k = 0; k < nb; ++k)
          if (lhs[k] != 0) rels.set(k * dm + a, cidx, lhs[k]);
        for (size_t b = 0; b < dm; ++b) {
          const uint32_t x = m.rho[j].at(b, a);
          if (x != 0)
            rels.set(i * dm + b, cidx,
                     mod_reduce(static_cast<int64_t>(rels.at(i * dm + b, cidx)) - x, p));
        }
      }
    }
  return rels;
}

TensorUp tensor_up(AlgebraPtr big, AlgebraPtr sub, const Mat& embedding,
                   const AModule& m) {
  if (m.alg != sub)
    throw std::invalid_argument("module is not over the subalgebra");
  if (embedding.rows() != big->dim() || embedding.cols() != sub->dim())
    throw std::invalid_argument("embedding has the wrong shape");
  const uint32_t p = big->modulus();
  const size_t nb = big->dim();
  const size_t dm = m.dim;

  TensorUp out;
  out.balance = QuotientMap::of_subspace(p, nb * dm, balancing_relations(*big, embedding, m));
  const Mat red = out.balance.reduce_mat();
  const Mat lif = out.balance.lift_mat();

  out.over_big.alg = big;
  out.over_big.dim = out.balance.quot_dim();
  for (size_t k = 0; k < nb; ++k)
    out.over_big.rho.push_back(red * free_left_action(*big, dm, big->basis_vec(k)) * lif);

  out.restricted.alg = sub;
  out.restricted.dim = out.balance.quot_dim();
  for (size_t j = 0; j < sub->dim(); ++j)
    out.restricted.rho.push_back(red * free_left_action(*big, dm, embedding.col(j)) * lif);
  return out;
}

Mat tensor_up_map(const TensorUp& from, const TensorUp& to, const Mat& f) {
  const uint32_t p = f.modulus();
  const size_t dv = f.cols();
  const size_t dw = f.rows();
  if (dv == 0 || from.balance.ambient_dim() % dv != 0)
    throw std::invalid_argument("map shape does not match the tensor factors");
  const size_t nb = from.balance.ambient_dim() / dv;
  if (to.balance.ambient_dim() != nb * dw)
    throw std::invalid_argument("tensor products are over different algebras");
  Mat free_map(p, nb * dw, nb * dv);
  for (size_t i = 0; i < nb; ++i)
    for (size_t a = 0; a < dv; ++a)
      for (size_t b = 0; b < dw; ++b)
        if (f.at(b, a) != 0) free_map.set(i * dw + b, i * dv + a, f.at(b, a));
  return to.balance.reduce_mat() * free_map * from.balance.lift_mat();
}

SubalgebraSplit subalgebra_split(AlgebraPtr big, AlgebraPtr sub,
                                 const Mat& embedding, const Mat& zeta,
                                 const AModule& m) {
  const uint32_t p = big->modulus();
  const size_t nb = big->dim();
  const size_t dm = m.dim;

  SubalgebraSplit out;
  out.tensor = tensor_up(big, sub, embedding, m);

  // psi: a -> class of 1 (x) a
  const Vec& one = big->unit();
  Mat psi_free(p, nb * dm, dm);
  for (size_t a = 0; a < dm; ++a)
    for (size_t k = 0; k < nb; ++k)
      if (one[k] != 0) psi_free.set(k * dm + a, a, one[k]);
  out.psi = out.tensor.balance.reduce_mat() * psi_free;

  // phi on the free space: b_i (x) a -> zeta(b_i) . a
  Mat phi_free(p, dm, nb * dm);
  for (size_t i = 0; i < nb; ++i) {
    const Vec gamma = coords_in_basis(embedding, zeta * big->basis_vec(i));
    const Mat act = m.act_mat(gamma);
    for (size_t a = 0; a < dm; ++a)
      for (size_t b = 0; b < dm; ++b)
        if (act.at(b, a) != 0) phi_free.set(b, i * dm + a, act.at(b, a));
  }
  // well-definedness: phi_free must kill every balancing relation
  if (!(phi_free * balancing_relations(*big, embedding, m)).is_zero())
    throw std::logic_error("left-factor splitting is not balanced over the subalgebra");
  out.phi = phi_free * out.tensor.balance.lift_mat();

  require_split_identities(m, out.tensor.restricted, out.psi, out.phi,
                           "subalgebra split");
  return out;
}

// ---------------------------------------------------------------------------
// Projective dimension across restriction.

PdComparison pd_compare(const AlgebraData& big_data, const AlgebraData& small_data,
                        const SkewAlgebra& big, const SkewAlgebra& small,
                        const CosetSystem& cs, const AModule& m, size_t cutoff) {
  if (big_data.alg != big.algebra || small_data.alg != small.algebra)
    throw std::invalid_argument("algebra analyses do not match the skew algebras");
  PdComparison out;
  out.up = pd_module(big_data, m, cutoff);
  out.down = pd_module(small_data, restrict_module(big, small, cs, m), cutoff);

  const auto& dn = out.down;
  const auto& up = out.up;
  if (dn.is_exact() && up.is_exact())
    out.relation = dn.value == up.value  ? PdRelation::equal
                   : dn.value < up.value ? PdRelation::down_smaller
                                         : PdRelation::violated;
  else if (dn.is_infinite() && up.is_infinite())
    out.relation = PdRelation::equal;
  else if (dn.is_exact() && up.is_infinite())
    out.relation = PdRelation::down_smaller;
  else if (dn.is_infinite() && up.is_exact())
    out.relation = PdRelation::violated;
  else
    out.relation = PdRelation::inconclusive;
  return out;
}

std::string pd_relation_name(PdRelation r) {
  switch (r) {
    case PdRelation::equal: return "equal";
    case PdRelation::down_smaller: return "down_smaller";
    case PdRelation::inconclusive: return "inconclusive";
    case PdRelation::violated: return "violated";
  }
  return "unknown";
}

} // namespace sga
