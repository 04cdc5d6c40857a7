#include "sga/homology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sga {

namespace {

// --- small integer matrix helpers (entries mod m, m < 2^32) ----------------

using ZMat = std::vector<uint64_t>; // n x n row-major

ZMat zmul(const ZMat& a, const ZMat& b, size_t n, uint64_t m) {
  ZMat c(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      uint64_t aik = a[i * n + k];
      if (!aik) continue;
      for (size_t j = 0; j < n; ++j)
        c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % m;
    }
  return c;
}

ZMat zpow(ZMat base, uint64_t e, size_t n, uint64_t m) {
  ZMat acc(n * n, 0);
  for (size_t i = 0; i < n; ++i) acc[i * n + i] = 1 % m;
  while (e > 0) {
    if (e & 1) acc = zmul(acc, base, n, m);
    base = zmul(base, base, n, m);
    e >>= 1;
  }
  return acc;
}

uint64_t ztrace(const ZMat& a, size_t n, uint64_t m) {
  uint64_t t = 0;
  for (size_t i = 0; i < n; ++i) t = (t + a[i * n + i]) % m;
  return t;
}

} // namespace

Mat radical_algebra(const FinDimAlgebra& a) {
  const uint32_t p = a.modulus();
  const size_t n = a.dim();

  // integer lifts of the left regular representation
  std::vector<ZMat> reg(n, ZMat(n * n, 0));
  for (size_t k = 0; k < n; ++k) {
    Mat lk = a.left_mult(a.basis_vec(k));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) reg[k][i * n + j] = lk.at(i, j);
  }
  auto lifted = [&](const Vec& x, uint64_t m) {
    ZMat out(n * n, 0);
    for (size_t k = 0; k < n; ++k) {
      if (x[k] == 0) continue;
      for (size_t e = 0; e < n * n; ++e)
        out[e] = (out[e] + uint64_t(x[k]) * reg[k][e]) % m;
    }
    return out;
  };

  // iteration count: smallest l with p^l > n
  size_t l = 1;
  {
    size_t t = n;
    while (t >= p) {
      t /= p;
      ++l;
    }
  }

  Mat basis = Mat::identity(p, n); // columns spanning the current space
  uint64_t pk = 1;                 // p^i
  for (size_t it = 0; it < l; ++it, pk *= p) {
    const uint64_t mod = pk * p; // p^{i+1}
    const size_t r = basis.cols();
    if (r == 0) break;
    std::vector<ZMat> lift_cols;
    for (size_t c = 0; c < r; ++c) lift_cols.push_back(lifted(basis.col(c), mod));

    // g(x, y) = Tr((xy)^{p^i}) / p^i mod p, on integer lifts
    Mat gram(p, r, r);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) {
        ZMat prod = zmul(lift_cols[i], lift_cols[j], n, mod);
        uint64_t tr = ztrace(zpow(std::move(prod), pk, n, mod), n, mod);
        if (tr % pk != 0)
          throw std::logic_error("trace form lost required divisibility");
        gram.set(i, j, int64_t((tr / pk) % p));
      }
    // x in radical of the form: g(x, y) = 0 for all y in the current space
    Mat ker = kernel_basis_mat(gram.transpose());
    basis = basis * ker;
  }

  // the result must be a nilpotent two-sided ideal; cheap, so always checked
  for (size_t c = 0; c < basis.cols(); ++c)
    for (size_t i = 0; i < n; ++i) {
      if (!in_span(basis, a.mul(a.basis_vec(i), basis.col(c))) ||
          !in_span(basis, a.mul(basis.col(c), a.basis_vec(i))))
        throw std::logic_error("radical candidate is not an ideal");
    }
  Mat power = basis;
  for (size_t round = 0; round < n + 1 && power.cols() > 0; ++round) {
    std::vector<Vec> next;
    for (size_t i = 0; i < power.cols(); ++i)
      for (size_t j = 0; j < basis.cols(); ++j)
        next.push_back(a.mul(power.col(i), basis.col(j)));
    Mat np = column_space_basis(Mat::from_cols(p, n, next));
    if (np.cols() >= power.cols() && np.cols() > 0)
      throw std::logic_error("radical candidate is not nilpotent");
    power = np;
  }
  return basis;
}

namespace {

Mat center_basis(const FinDimAlgebra& a) {
  const uint32_t p = a.modulus();
  const size_t n = a.dim();
  Mat stacked(p, 0, n);
  bool first = true;
  for (size_t i = 0; i < n; ++i) {
    Vec bi = a.basis_vec(i);
    Mat diff = a.left_mult(bi) - a.right_mult(bi);
    stacked = first ? diff : stacked.vstack(diff);
    first = false;
  }
  return kernel_basis_mat(stacked);
}

bool split_from_quotient(const FinDimAlgebra& quo) {
  Mat z = center_basis(quo);
  for (size_t c = 0; c < z.cols(); ++c)
    if (quo.power(z.col(c), quo.modulus()) != z.col(c)) return false;
  return true;
}

} // namespace

bool check_split(const FinDimAlgebra& a, const Mat& rad_basis) {
  if (rad_basis.cols() == 0) return split_from_quotient(a);
  return split_from_quotient(*quotient_algebra(a, rad_basis).algebra);
}

// ---------------------------------------------------------------------------
// Idempotent search.

namespace {

/* monic minimal polynomial of x, lowest degree first */
std::vector<uint32_t> minimal_polynomial(const FinDimAlgebra& a, const Vec& x) {
  const uint32_t p = a.modulus();
  std::vector<Vec> powers = {a.unit()};
  Vec cur = a.unit();
  for (;;) {
    cur = a.mul(cur, x);
    Mat basis = Mat::from_cols(p, a.dim(), powers);
    if (in_span(basis, cur)) {
      Vec c = coords_in_basis(basis, cur);
      std::vector<uint32_t> m(powers.size() + 1);
      for (size_t j = 0; j < powers.size(); ++j)
        m[j] = mod_reduce(-int64_t(c[j]), p);
      m.back() = 1;
      return m;
    }
    powers.push_back(cur);
  }
}

uint32_t eval_poly_scalar(const std::vector<uint32_t>& poly, uint32_t lambda,
                          uint32_t p) {
  uint64_t acc = 0;
  for (size_t k = poly.size(); k-- > 0;) acc = (acc * lambda + poly[k]) % p;
  return uint32_t(acc);
}

// Elements of k[x] fixed by the Frobenius map form F_p^r with r the number
// of distinct irreducible factors of the minimal polynomial; columns of the
// result span that subalgebra (ambient coordinates).
Mat frobenius_fixed_in_kx(const FinDimAlgebra& a, const Vec& x) {
  const uint32_t p = a.modulus();
  std::vector<uint32_t> m = minimal_polynomial(a, x);
  const size_t d = m.size() - 1;
  std::vector<Vec> powers = {a.unit()};
  for (size_t j = 1; j < d; ++j) powers.push_back(a.mul(powers.back(), x));
  Mat k_basis = Mat::from_cols(p, a.dim(), powers);

  Mat frob(p, d, d);
  Vec xp = a.power(x, p);
  Vec cur = a.unit();
  for (size_t j = 0; j < d; ++j) {
    frob.set_col(j, coords_in_basis(k_basis, cur)); // (x^j)^p = (x^p)^j
    if (j + 1 < d) cur = a.mul(cur, xp);
  }
  Mat ker = kernel_basis_mat(frob - Mat::identity(p, d));
  return k_basis * ker;
}

std::optional<Vec> try_idempotent_from(const FinDimAlgebra& a, const Vec& x) {
  if (x.is_zero()) return std::nullopt;
  const uint32_t p = a.modulus();
  Mat fixed = frobenius_fixed_in_kx(a, x);
  if (fixed.cols() < 2) return std::nullopt;
  Mat unit_span = Mat::from_cols(p, a.dim(), {a.unit()});
  Vec b(p, a.dim());
  bool found = false;
  for (size_t c = 0; c < fixed.cols(); ++c)
    if (!in_span(unit_span, fixed.col(c))) {
      b = fixed.col(c);
      found = true;
      break;
    }
  if (!found) return std::nullopt;

  // b^p = b, so its minimal polynomial is squarefree with roots in F_p;
  // a Lagrange projector onto one eigenvalue is an exact idempotent
  std::vector<uint32_t> mb = minimal_polynomial(a, b);
  std::vector<uint32_t> roots;
  for (uint32_t lam = 0; lam < p; ++lam)
    if (eval_poly_scalar(mb, lam, p) == 0) roots.push_back(lam);
  if (roots.size() != mb.size() - 1 || roots.size() < 2)
    throw std::logic_error("Frobenius-fixed element with non-split spectrum");
  Vec e = a.unit();
  for (size_t k = 1; k < roots.size(); ++k) {
    Vec factor = b - a.unit().scaled(roots[k]);
    uint32_t scale =
        inv_mod(mod_reduce(int64_t(roots[0]) - roots[k], p), p);
    e = a.mul(e, factor.scaled(scale));
  }
  if (!a.is_idempotent(e) || e.is_zero() || e == a.unit())
    throw std::logic_error("Lagrange projector failed to be idempotent");
  return e;
}

std::optional<Vec> find_nontrivial_idempotent(const FinDimAlgebra& a) {
  const size_t n = a.dim();
  std::vector<Vec> cands;
  for (size_t i = 0; i < n; ++i) cands.push_back(a.basis_vec(i));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      cands.push_back(a.basis_vec(i) + a.basis_vec(j));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) cands.push_back(a.basis_product(i, j));
  Rng rng(0x1d3a11f5u ^ (uint64_t(n) << 8) ^ a.modulus());
  const size_t cap = 500;
  for (size_t t = 0; cands.size() < cap; ++t) {
    Vec v(a.modulus(), n);
    for (size_t i = 0; i < n; ++i) v.set(i, rng.residue(a.modulus()));
    cands.push_back(v);
  }
  for (const Vec& x : cands)
    if (auto e = try_idempotent_from(a, x)) return e;
  return std::nullopt;
}

void decompose_into_primitives(const FinDimAlgebra& c, const Mat& ambient_basis,
                               std::vector<Vec>& out) {
  Mat rad = radical_algebra(c);
  if (c.dim() - rad.cols() == 1) {
    out.push_back(ambient_basis * c.unit());
    return;
  }
  auto e = find_nontrivial_idempotent(c);
  if (!e)
    throw NonSplitError(
        "primitive idempotent search failed; the algebra is not split");
  CornerAlgebra c1 = corner_algebra(c, *e);
  CornerAlgebra c2 = corner_algebra(c, c.unit() - *e);
  decompose_into_primitives(*c1.algebra, ambient_basis * c1.basis, out);
  decompose_into_primitives(*c2.algebra, ambient_basis * c2.basis, out);
}

} // namespace

std::vector<Vec> primitive_idempotents(const FinDimAlgebra& a) {
  std::vector<Vec> out;
  decompose_into_primitives(a, Mat::identity(a.modulus(), a.dim()), out);
  return out;
}

bool is_local_algebra(const FinDimAlgebra& a) {
  Mat rad = radical_algebra(a);
  if (a.dim() - rad.cols() == 1) return true;
  if (check_split(a, rad)) return false;
  throw NonSplitError("locality is undecided for a non-split quotient");
}

PrimitiveSetCheck check_primitive_idempotent_set(const FinDimAlgebra& a,
                                                 const std::vector<Vec>& es) {
  PrimitiveSetCheck out;
  out.basic = check_idempotent_set(a, es);
  out.all_primitive = true;
  for (size_t i = 0; i < es.size(); ++i) {
    if (!a.is_idempotent(es[i]) || es[i].is_zero()) {
      out.all_primitive = false;
      continue;
    }
    CornerAlgebra corner = corner_algebra(a, es[i]);
    if (!is_local_algebra(*corner.algebra)) {
      out.all_primitive = false;
      out.issues.push_back("idempotent " + std::to_string(i) +
                           " is not primitive");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

AlgebraData analyze_algebra(AlgebraPtr a) {
  AlgebraData d;
  d.alg = a;
  d.rad = radical_algebra(*a);
  d.quo = quotient_algebra(*a, d.rad);
  d.split = split_from_quotient(*d.quo.algebra);
  if (!d.split) return d;

  d.idem = primitive_idempotents(*a);
  {
    auto chk = check_idempotent_set(*a, d.idem);
    if (!chk.ok())
      throw std::logic_error("primitive decomposition failed its own check");
  }

  // iso classes: P_i ~ P_j iff the image of e_i A e_j in a/rad is nonzero
  const FinDimAlgebra& q = *d.quo.algebra;
  std::vector<Vec> qidem;
  for (const Vec& e : d.idem) qidem.push_back(d.quo.qmap.reduce(e));
  auto linked = [&](size_t i, size_t j) {
    for (size_t k = 0; k < q.dim(); ++k)
      if (!q.mul(qidem[i], q.mul(q.basis_vec(k), qidem[j])).is_zero())
        return true;
    return false;
  };
  d.cls.assign(d.idem.size(), size_t(-1));
  for (size_t i = 0; i < d.idem.size(); ++i) {
    for (size_t c = 0; c < d.rep.size(); ++c)
      if (linked(i, d.rep[c])) {
        d.cls[i] = c;
        break;
      }
    if (d.cls[i] == size_t(-1)) {
      d.cls[i] = d.rep.size();
      d.rep.push_back(i);
    }
  }
  d.n_classes = d.rep.size();

  AModule reg = regular_module(a);
  for (size_t c = 0; c < d.n_classes; ++c) {
    const Vec& e = d.idem[d.rep[c]];
    Mat basis = column_space_basis(a->right_mult(e)); // A e
    AModule pim = submodule(reg, basis);
    // rad P = rad e, expressed in PIM coordinates
    std::vector<Vec> radp;
    for (size_t r = 0; r < d.rad.cols(); ++r)
      for (size_t s = 0; s < basis.cols(); ++s)
        radp.push_back(
            coords_in_basis(basis, a->mul(d.rad.col(r), basis.col(s))));
    Mat radp_cols = Mat::from_cols(a->modulus(), basis.cols(), radp);
    d.pim.push_back(pim);
    d.pim_basis.push_back(basis);
    d.simple.push_back(quotient_module(pim, radp_cols).mod);
  }

  d.cartan.assign(d.n_classes, std::vector<size_t>(d.n_classes, 0));
  for (size_t i = 0; i < d.n_classes; ++i)
    for (size_t j = 0; j < d.n_classes; ++j) {
      const Vec& ei = d.idem[d.rep[i]];
      const Vec& ej = d.idem[d.rep[j]];
      std::vector<Vec> cols;
      for (size_t k = 0; k < a->dim(); ++k)
        cols.push_back(a->mul(ej, a->mul(a->basis_vec(k), ei)));
      d.cartan[i][j] =
          rank_of(Mat::from_cols(a->modulus(), a->dim(), cols));
    }
  return d;
}

// ---------------------------------------------------------------------------

namespace {

/* columns spanning rad * m inside m */
Mat radical_part(const AlgebraData& d, const AModule& m) {
  const uint32_t p = m.alg->modulus();
  if (m.dim == 0 || d.rad.cols() == 0) return Mat(p, m.dim, 0);
  Mat acc = m.act_mat(d.rad.col(0));
  for (size_t r = 1; r < d.rad.cols(); ++r)
    acc = acc.hstack(m.act_mat(d.rad.col(r)));
  return column_space_basis(acc);
}

} // namespace

std::vector<size_t> top_multiplicities(const AlgebraData& d, const AModule& m) {
  d.require_split("top_multiplicities");
  QuotientModule top = quotient_module(m, radical_part(d, m));
  std::vector<size_t> mult;
  for (size_t c = 0; c < d.n_classes; ++c)
    mult.push_back(rank_of(top.mod.act_mat(d.idem[d.rep[c]])));
  return mult;
}

CoverData projective_cover(const AlgebraData& d, const AModule& m) {
  d.require_split("projective_cover");
  const uint32_t p = m.alg->modulus();
  CoverData out;
  if (m.dim == 0) {
    out.total = zero_module(d.alg);
    out.kernel = zero_module(d.alg);
    out.map = Mat(p, 0, 0);
    out.kernel_basis = Mat(p, 0, 0);
    return out;
  }

  Mat radm = radical_part(d, m);
  QuotientModule top = quotient_module(m, radm);
  const QuotientMap& qt = top.qmap;

  // per class: generators whose images are independent in e_c * top
  std::vector<const AModule*> parts;
  for (size_t c = 0; c < d.n_classes; ++c) {
    Mat tc = top.mod.act_mat(d.idem[d.rep[c]]);
    const size_t want = rank_of(tc);
    Mat chosen(p, top.mod.dim, 0);
    for (size_t k = 0; k < top.mod.dim && chosen.cols() < want; ++k) {
      Vec img = tc.col(k);
      if (img.is_zero()) continue;
      Mat cand = chosen.cols() == 0 ? Mat::from_cols(p, top.mod.dim, {img})
                                    : chosen.hstack(Mat::from_cols(
                                          p, top.mod.dim, {img}));
      if (rank_of(cand) > chosen.cols()) {
        chosen = column_space_basis(cand);
        Vec gen = m.act_mat(d.idem[d.rep[c]]) * qt.lift(Vec::unit(p, top.mod.dim, k));
        out.classes.push_back(c);
        out.generators.push_back(gen);
        parts.push_back(&d.pim[c]);
      }
    }
  }

  out.total = parts.empty() ? zero_module(d.alg) : direct_sum_many(parts);
  out.map = Mat(p, m.dim, out.total.dim);
  {
    size_t off = 0;
    for (size_t t = 0; t < out.classes.size(); ++t) {
      const Mat& basis = d.pim_basis[out.classes[t]];
      for (size_t s = 0; s < basis.cols(); ++s)
        out.map.set_col(off + s, m.act_mat(basis.col(s)) * out.generators[t]);
      off += basis.cols();
    }
  }
  if (rank_of(out.map) != m.dim)
    throw std::logic_error("projective cover map is not surjective");
  out.kernel_basis = kernel_basis_mat(out.map);
  out.kernel = out.total.dim == 0
                   ? zero_module(d.alg)
                   : submodule(out.total, out.kernel_basis);
  return out;
}

bool is_projective(const AlgebraData& d, const AModule& m) {
  return projective_cover(d, m).kernel.dim == 0;
}

Resolution resolve(const AlgebraData& d, const AModule& m, size_t length) {
  Resolution res;
  AModule cur = m;
  for (size_t s = 0; s <= length; ++s) {
    res.steps.push_back(projective_cover(d, cur));
    cur = res.steps.back().kernel;
    if (cur.dim == 0) break;
  }
  return res;
}

std::string DimensionReport::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::exact:
      os << value;
      break;
    case Kind::at_least:
      os << ">= " << value;
      break;
    case Kind::infinite_certified:
      os << "infinite";
      if (period) os << " (syzygy " << period->first << " ~ " << period->second << ")";
      break;
  }
  return os.str();
}

DimensionReport pd_module(const AlgebraData& d, const AModule& m, size_t cutoff) {
  DimensionReport rep;
  AModule cur = m;
  std::vector<std::pair<size_t, AModule>> seen; // non-projective syzygies
  for (size_t s = 0; s <= cutoff; ++s) {
    CoverData cover = projective_cover(d, cur);
    if (cover.kernel.dim == 0) {
      rep.kind = DimensionReport::Kind::exact;
      rep.value = s;
      return rep;
    }
    for (const auto& [t, old] : seen) {
      if (old.dim != cur.dim || cur.dim == 0) continue;
      IsoResult iso = module_iso(old, cur);
      if (iso.verdict == IsoVerdict::iso) {
        rep.kind = DimensionReport::Kind::infinite_certified;
        rep.period = {t, s};
        return rep;
      }
    }
    seen.emplace_back(s, cur);
    cur = cover.kernel;
  }
  rep.kind = DimensionReport::Kind::at_least;
  rep.value = cutoff + 1;
  return rep;
}

GlobalDimReport global_dimension(const AlgebraData& d, size_t cutoff) {
  d.require_split("global_dimension");
  GlobalDimReport out;
  for (size_t c = 0; c < d.n_classes; ++c)
    out.per_simple.push_back(pd_module(d, d.simple[c], cutoff));

  bool any_lb = false;
  size_t best = 0;
  for (const auto& r : out.per_simple) {
    if (r.is_infinite()) {
      out.overall = r;
      return out;
    }
    if (r.kind == DimensionReport::Kind::at_least) any_lb = true;
    best = std::max(best, r.value);
  }
  out.overall.kind = any_lb ? DimensionReport::Kind::at_least
                            : DimensionReport::Kind::exact;
  out.overall.value = best;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/* radical filtration subspaces rad^k P in PIM coordinates, k = 1.. */
std::vector<Mat> radical_filtration(const AlgebraData& d, const AModule& m) {
  std::vector<Mat> out;
  Mat cur = radical_part(d, m);
  while (cur.cols() > 0) {
    out.push_back(cur);
    std::vector<Vec> next;
    for (size_t r = 0; r < d.rad.cols(); ++r)
      for (size_t c = 0; c < cur.cols(); ++c)
        next.push_back(m.act_mat(d.rad.col(r)) * cur.col(c));
    cur = column_space_basis(Mat::from_cols(m.alg->modulus(), m.dim, next));
  }
  return out;
}

bool pims_uniserial(const AlgebraData& d) {
  for (size_t c = 0; c < d.n_classes; ++c) {
    const AModule& pm = d.pim[c];
    std::vector<Mat> filt = radical_filtration(d, pm);
    filt.insert(filt.begin(), Mat::identity(pm.alg->modulus(), pm.dim));
    filt.push_back(Mat(pm.alg->modulus(), pm.dim, 0));
    for (size_t k = 0; k + 1 < filt.size(); ++k) {
      if (filt[k].cols() == filt[k + 1].cols()) continue;
      AModule layer_sub = submodule(pm, filt[k]);
      Mat inner(pm.alg->modulus(), filt[k].cols(), filt[k + 1].cols());
      for (size_t j = 0; j < filt[k + 1].cols(); ++j)
        inner.set_col(j, coords_in_basis(filt[k], filt[k + 1].col(j)));
      AModule layer = quotient_module(layer_sub, inner).mod;
      size_t mult = 0;
      for (size_t cc = 0; cc < d.n_classes; ++cc)
        mult += rank_of(layer.act_mat(d.idem[d.rep[cc]]));
      if (mult != 1) return false;
    }
  }
  return true;
}

} // namespace

bool is_nakayama(const AlgebraData& d) {
  d.require_split("is_nakayama");
  if (!pims_uniserial(d)) return false;
  AlgebraData op = analyze_algebra(opposite_algebra(*d.alg));
  op.require_split("is_nakayama (opposite)");
  return pims_uniserial(op);
}

std::vector<AModule> indecomposables_nakayama(const AlgebraData& d) {
  d.require_split("indecomposables_nakayama");
  std::vector<AModule> out;
  for (size_t c = 0; c < d.n_classes; ++c) {
    const AModule& pm = d.pim[c];
    std::vector<Mat> filt = radical_filtration(d, pm);
    filt.push_back(Mat(pm.alg->modulus(), pm.dim, 0));
    for (const Mat& w : filt) out.push_back(quotient_module(pm, w).mod);
  }
  return out;
}

FinDimReport finitistic_dimension_catalog(const AlgebraData& d,
                                          const std::vector<AModule>& catalog,
                                          size_t cutoff) {
  FinDimReport out;
  bool any_lb = false;
  size_t best = 0;
  for (const AModule& m : catalog) {
    out.per_module.push_back(pd_module(d, m, cutoff));
    const auto& r = out.per_module.back();
    if (r.kind == DimensionReport::Kind::exact) best = std::max(best, r.value);
    if (r.kind == DimensionReport::Kind::at_least) any_lb = true;
  }
  out.overall.value = best;
  out.overall.kind = any_lb ? DimensionReport::Kind::at_least
                            : DimensionReport::Kind::exact;
  return out;
}

FinDimReport finitistic_dimension(const AlgebraData& d, size_t cutoff) {
  d.require_split("finitistic_dimension");
  if (is_nakayama(d)) {
    FinDimReport out =
        finitistic_dimension_catalog(d, indecomposables_nakayama(d), cutoff);
    out.nakayama_exact = true;
    // pd >= cutoff for some indecomposable leaves the sup undecided
    if (out.overall.kind != DimensionReport::Kind::exact)
      out.nakayama_exact = false;
    return out;
  }
  // general algebras: sample the catalog of PIM radical quotients; the
  // result is only a lower bound
  std::vector<AModule> catalog;
  for (size_t c = 0; c < d.n_classes; ++c) {
    const AModule& pm = d.pim[c];
    std::vector<Mat> filt = radical_filtration(d, pm);
    filt.push_back(Mat(pm.alg->modulus(), pm.dim, 0));
    for (const Mat& w : filt) catalog.push_back(quotient_module(pm, w).mod);
  }
  FinDimReport out = finitistic_dimension_catalog(d, catalog, cutoff);
  out.overall.kind = DimensionReport::Kind::at_least;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<AModule> decompose_module(const AModule& m) {
  if (m.dim == 0) return {};
  const uint32_t p = m.alg->modulus();
  Mat homs = hom_basis(m, m);
  const size_t h = homs.cols();
  std::vector<Mat> hom_mats;
  for (size_t k = 0; k < h; ++k)
    hom_mats.push_back(unvec_hom(m, m, homs.col(k)));

  std::vector<std::vector<Vec>> table(h, std::vector<Vec>(h, Vec(p, h)));
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < h; ++j) {
      Mat comp = hom_mats[i] * hom_mats[j];
      Vec v(p, m.dim * m.dim);
      for (size_t cc = 0; cc < m.dim; ++cc)
        for (size_t rr = 0; rr < m.dim; ++rr)
          v.set(cc * m.dim + rr, comp.at(rr, cc));
      table[i][j] = coords_in_basis(homs, v);
    }
  Vec unit_vec(p, m.dim * m.dim);
  for (size_t i = 0; i < m.dim; ++i) unit_vec.set(i * m.dim + i, 1);
  auto end_alg = std::make_shared<FinDimAlgebra>(
      p, std::vector<std::string>{}, table, coords_in_basis(homs, unit_vec));

  Mat end_rad = radical_algebra(*end_alg);
  if (!check_split(*end_alg, end_rad))
    throw NonSplitError("module endomorphism algebra is not split");

  std::vector<AModule> out;
  for (const Vec& eps : primitive_idempotents(*end_alg)) {
    Mat e_mat(p, m.dim, m.dim);
    for (size_t k = 0; k < h; ++k)
      if (eps[k] != 0) e_mat = e_mat + hom_mats[k].scaled(eps[k]);
    Mat img = column_space_basis(e_mat);
    out.push_back(submodule(m, img));
  }
  return out;
}

AModule random_module(const AlgebraData& d, Rng& rng, size_t max_mult) {
  d.require_split("random_module");
  std::vector<const AModule*> parts;
  for (size_t c = 0; c < d.n_classes; ++c) {
    size_t mult = rng.below(uint32_t(max_mult + 1));
    for (size_t k = 0; k < mult; ++k) parts.push_back(&d.pim[c]);
  }
  if (parts.empty()) parts.push_back(&d.pim[rng.below(uint32_t(d.n_classes))]);
  AModule proj = direct_sum_many(parts);

  Mat radp = radical_part(d, proj);
  std::vector<Vec> seeds;
  size_t n_seeds = rng.below(3);
  for (size_t k = 0; k < n_seeds && radp.cols() > 0; ++k) {
    Vec v(proj.alg->modulus(), proj.dim);
    for (size_t c = 0; c < radp.cols(); ++c)
      v.add_scaled(radp.col(c), rng.residue(proj.alg->modulus()));
    seeds.push_back(v);
  }
  Mat closure = submodule_closure(
      proj, Mat::from_cols(proj.alg->modulus(), proj.dim, seeds));
  return quotient_module(proj, closure).mod;
}

AModule fixed_points_module(const SkewAlgebra& sk, const FixedAlgebra& fx,
                            const std::vector<size_t>& sub_elems,
                            const AModule& m) {
  const uint32_t p = m.alg->modulus();
  Mat stacked(p, 0, m.dim);
  bool first = true;
  for (size_t s : sub_elems) {
    if (s == sk.group.identity()) continue;
    Mat diff = m.act_mat(sk.embed_group(s)) - Mat::identity(p, m.dim);
    stacked = first ? diff : stacked.vstack(diff);
    first = false;
  }
  Mat fixed = first ? Mat::identity(p, m.dim) : kernel_basis_mat(stacked);

  AModule out;
  out.alg = fx.algebra;
  out.dim = fixed.cols();
  for (size_t j = 0; j < fx.algebra->dim(); ++j) {
    Vec emb = sk.embed_base(fx.embedding.col(j));
    Mat t = m.act_mat(emb);
    Mat r(p, out.dim, out.dim);
    for (size_t c = 0; c < out.dim; ++c)
      r.set_col(c, coords_in_basis(fixed, t * fixed.col(c)));
    out.rho.push_back(r);
  }
  return out;
}

} // namespace sga
