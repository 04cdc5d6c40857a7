#include "sga/module.hpp"

namespace sga {

Mat AModule::act_mat(const Vec& x) const {
  Mat m(alg->modulus(), dim, dim);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) m = m + rho[i].scaled(x[i]);
  return m;
}

AModule regular_module(AlgebraPtr a) {
  AModule m;
  m.alg = a;
  m.dim = a->dim();
  for (size_t i = 0; i < a->dim(); ++i)
    m.rho.push_back(a->left_mult(a->basis_vec(i)));
  return m;
}

AModule zero_module(AlgebraPtr a) {
  AModule m;
  m.alg = a;
  m.dim = 0;
  m.rho.assign(a->dim(), Mat(a->modulus(), 0, 0));
  return m;
}

std::vector<std::string> verify_module(const AModule& m) {
  std::vector<std::string> issues;
  const FinDimAlgebra& a = *m.alg;
  if (m.rho.size() != a.dim()) {
    issues.push_back("wrong number of action matrices");
    return issues;
  }
  for (const Mat& r : m.rho)
    if (r.rows() != m.dim || r.cols() != m.dim || r.modulus() != a.modulus()) {
      issues.push_back("action matrix with wrong shape or modulus");
      return issues;
    }
  if (!m.act_mat(a.unit()).is_identity() && m.dim > 0)
    issues.push_back("unit does not act as the identity");
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < a.dim(); ++j)
      if (m.rho[i] * m.rho[j] != m.act_mat(a.basis_product(i, j)))
        issues.push_back("action not multiplicative at (" + a.label(i) + ", " +
                         a.label(j) + ")");
  return issues;
}

AModule direct_sum(const AModule& a, const AModule& b) {
  return direct_sum_many({&a, &b});
}

AModule direct_sum_many(const std::vector<const AModule*>& parts) {
  assert(!parts.empty());
  AModule out;
  out.alg = parts[0]->alg;
  const uint32_t p = out.alg->modulus();
  for (const AModule* m : parts) {
    assert(m->alg->dim() == out.alg->dim());
    out.dim += m->dim;
  }
  for (size_t i = 0; i < out.alg->dim(); ++i) {
    Mat blk(p, out.dim, out.dim);
    size_t off = 0;
    for (const AModule* m : parts) {
      for (size_t r = 0; r < m->dim; ++r)
        for (size_t c = 0; c < m->dim; ++c)
          blk.set(off + r, off + c, m->rho[i].at(r, c));
      off += m->dim;
    }
    out.rho.push_back(blk);
  }
  return out;
}

Mat submodule_closure(const AModule& m, const Mat& seed_cols) {
  Mat basis = column_space_basis(seed_cols);
  for (;;) {
    std::vector<Vec> next;
    for (size_t c = 0; c < basis.cols(); ++c) next.push_back(basis.col(c));
    size_t before = basis.cols();
    for (size_t i = 0; i < m.alg->dim(); ++i)
      for (size_t c = 0; c < basis.cols(); ++c)
        next.push_back(m.rho[i] * basis.col(c));
    basis = column_space_basis(Mat::from_cols(m.alg->modulus(), m.dim, next));
    if (basis.cols() == before) return basis;
  }
}

AModule submodule(const AModule& m, const Mat& basis_cols) {
  AModule out;
  out.alg = m.alg;
  out.dim = basis_cols.cols();
  for (size_t i = 0; i < m.alg->dim(); ++i) {
    Mat r(m.alg->modulus(), out.dim, out.dim);
    for (size_t c = 0; c < out.dim; ++c) {
      Vec w = m.rho[i] * basis_cols.col(c);
      if (!in_span(basis_cols, w))
        throw std::invalid_argument("columns do not span a submodule");
      r.set_col(c, coords_in_basis(basis_cols, w));
    }
    out.rho.push_back(r);
  }
  return out;
}

QuotientModule quotient_module(const AModule& m, const Mat& sub_cols) {
  QuotientMap qm =
      QuotientMap::of_subspace(m.alg->modulus(), m.dim, sub_cols);
  AModule out;
  out.alg = m.alg;
  out.dim = qm.quot_dim();
  Mat red = qm.reduce_mat(), lift = qm.lift_mat();
  for (size_t i = 0; i < m.alg->dim(); ++i)
    out.rho.push_back(red * (m.rho[i] * lift));
  return {out, qm};
}

AModule restrict_scalars(const AModule& m, AlgebraPtr sub, const Mat& embedding) {
  assert(embedding.cols() == sub->dim());
  AModule out;
  out.alg = sub;
  out.dim = m.dim;
  for (size_t j = 0; j < sub->dim(); ++j)
    out.rho.push_back(m.act_mat(embedding.col(j)));
  return out;
}

Mat hom_basis(const AModule& m, const AModule& n) {
  const uint32_t p = m.alg->modulus();
  const size_t dm = m.dim, dn = n.dim;
  if (dm == 0 || dn == 0) return Mat(p, dm * dn, 0);
  const Mat im = Mat::identity(p, dm), in_ = Mat::identity(p, dn);
  Mat stacked(p, 0, dm * dn);
  bool first = true;
  for (size_t i = 0; i < m.alg->dim(); ++i) {
    // f rho_m(b) = rho_n(b) f, vectorized column-major
    Mat row = kron(m.rho[i].transpose(), in_) - kron(im, n.rho[i]);
    stacked = first ? row : stacked.vstack(row);
    first = false;
  }
  return kernel_basis_mat(stacked);
}

Mat unvec_hom(const AModule& m, const AModule& n, const Vec& v) {
  Mat f(m.alg->modulus(), n.dim, m.dim);
  for (size_t j = 0; j < m.dim; ++j)
    for (size_t i = 0; i < n.dim; ++i) f.set(i, j, v[j * n.dim + i]);
  return f;
}

bool is_module_map(const AModule& m, const AModule& n, const Mat& f) {
  for (size_t i = 0; i < m.alg->dim(); ++i)
    if (f * m.rho[i] != n.rho[i] * f) return false;
  return true;
}

IsoResult module_iso(const AModule& m, const AModule& n, uint64_t seed,
                     uint64_t enum_budget, size_t samples) {
  IsoResult out;
  if (m.dim != n.dim) {
    out.verdict = IsoVerdict::not_iso;
    out.certified = true;
    return out;
  }
  if (m.dim == 0) {
    out.verdict = IsoVerdict::iso;
    out.certified = true;
    out.witness = Mat(m.alg->modulus(), 0, 0);
    return out;
  }
  const uint32_t p = m.alg->modulus();
  Mat homs = hom_basis(m, n);
  const size_t h = homs.cols();
  if (h == 0) {
    out.verdict = IsoVerdict::not_iso;
    out.certified = true;
    return out;
  }

  auto combine = [&](const std::vector<uint32_t>& coef) {
    Vec v(p, homs.rows());
    for (size_t k = 0; k < h; ++k)
      if (coef[k] != 0) v.add_scaled(homs.col(k), coef[k]);
    return unvec_hom(m, n, v);
  };

  // p^h small: walk every coefficient tuple, which also certifies not_iso
  bool exhaustive = true;
  {
    uint64_t total = 1;
    for (size_t k = 0; k < h; ++k) {
      total *= p;
      if (total > enum_budget) {
        exhaustive = false;
        break;
      }
    }
  }
  if (exhaustive) {
    std::vector<uint32_t> coef(h, 0);
    for (;;) {
      Mat f = combine(coef);
      if (rank_of(f) == m.dim) {
        out.verdict = IsoVerdict::iso;
        out.certified = true;
        out.witness = f;
        return out;
      }
      size_t k = 0;
      while (k < h && ++coef[k] == p) coef[k++] = 0;
      if (k == h) break;
    }
    out.verdict = IsoVerdict::not_iso;
    out.certified = true;
    return out;
  }

  Rng rng(seed ^ 0x6d6f645f69736fULL);
  for (size_t t = 0; t < samples; ++t) {
    std::vector<uint32_t> coef(h);
    for (size_t k = 0; k < h; ++k) coef[k] = rng.residue(p);
    Mat f = combine(coef);
    if (rank_of(f) == m.dim) {
      out.verdict = IsoVerdict::iso;
      out.certified = true;
      out.witness = f;
      return out;
    }
  }
  out.verdict = IsoVerdict::inconclusive;
  out.certified = false;
  return out;
}

} // namespace sga
