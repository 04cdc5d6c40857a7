#include "sga/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sga {

FinDimAlgebra::FinDimAlgebra(uint32_t p, std::vector<std::string> labels,
                             std::vector<std::vector<Vec>> table, Vec unit)
    : p_(p), dim_(table.size()), labels_(std::move(labels)),
      table_(std::move(table)), unit_(std::move(unit)) {
  if (!is_prime(p_)) throw std::invalid_argument("modulus must be prime");
  if (labels_.empty() && dim_ > 0) {
    for (size_t i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
  }
  if (labels_.size() != dim_)
    throw std::invalid_argument("label count does not match dimension");
  if (dim_ == 0) throw std::invalid_argument("zero-dimensional algebra");
  for (const auto& row : table_) {
    if (row.size() != dim_)
      throw std::invalid_argument("structure constant table is not square");
    for (const auto& v : row)
      if (v.size() != dim_ || v.modulus() != p_)
        throw std::invalid_argument("bad structure constant vector");
  }
  if (unit_.size() != dim_ || unit_.modulus() != p_)
    throw std::invalid_argument("bad unit vector");
}

Vec FinDimAlgebra::mul(const Vec& x, const Vec& y) const {
  assert(x.size() == dim_ && y.size() == dim_);
  Vec acc(p_, dim_);
  for (size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0) continue;
      acc.add_scaled(table_[i][j], mod_reduce(int64_t(x[i]) * y[j], p_));
    }
  }
  return acc;
}

Mat FinDimAlgebra::left_mult(const Vec& x) const {
  Mat m(p_, dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) {
    Vec col(p_, dim_);
    for (size_t i = 0; i < dim_; ++i)
      if (x[i] != 0) col.add_scaled(table_[i][j], x[i]);
    m.set_col(j, col);
  }
  return m;
}

Mat FinDimAlgebra::right_mult(const Vec& x) const {
  Mat m(p_, dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) {
    Vec col(p_, dim_);
    for (size_t i = 0; i < dim_; ++i)
      if (x[i] != 0) col.add_scaled(table_[j][i], x[i]);
    m.set_col(j, col);
  }
  return m;
}

Vec FinDimAlgebra::power(const Vec& x, uint64_t n) const {
  Vec acc = unit_;
  Vec base = x;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

bool FinDimAlgebra::is_idempotent(const Vec& x) const {
  return mul(x, x) == x;
}

std::string AlgebraViolation::str() const {
  std::ostringstream os;
  os << kind << " fails at (" << i << ", " << j << ", " << k << ")";
  return os.str();
}

std::vector<AlgebraViolation> verify_algebra(const FinDimAlgebra& a) {
  std::vector<AlgebraViolation> out;
  const size_t n = a.dim();
  for (size_t i = 0; i < n; ++i) {
    Vec bi = a.basis_vec(i);
    if (a.mul(a.unit(), bi) != bi) out.push_back({"left_unit", i, 0, 0});
    if (a.mul(bi, a.unit()) != bi) out.push_back({"right_unit", i, 0, 0});
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const Vec& ij = a.basis_product(i, j);
      for (size_t k = 0; k < n; ++k) {
        Vec lhs = a.mul(ij, a.basis_vec(k));
        Vec rhs = a.mul(a.basis_vec(i), a.basis_product(j, k));
        if (lhs != rhs) out.push_back({"assoc", i, j, k});
      }
    }
  return out;
}

QuotientAlgebra quotient_algebra(const FinDimAlgebra& a, const Mat& ideal_cols) {
  const uint32_t p = a.modulus();
  const size_t n = a.dim();
  if (ideal_cols.rows() != n || ideal_cols.modulus() != p)
    throw std::invalid_argument("ideal columns do not match the algebra");
  QuotientMap qm = QuotientMap::of_subspace(p, n, ideal_cols);
  // two-sidedness of the given subspace
  for (size_t c = 0; c < ideal_cols.cols(); ++c) {
    Vec w = ideal_cols.col(c);
    for (size_t i = 0; i < n; ++i) {
      if (!qm.contains(a.mul(a.basis_vec(i), w)) ||
          !qm.contains(a.mul(w, a.basis_vec(i))))
        throw std::invalid_argument("subspace is not a two-sided ideal");
    }
  }
  if (qm.contains(a.unit()))
    throw std::invalid_argument("ideal contains the unit");

  const size_t d = qm.quot_dim();
  std::vector<Vec> reps;
  std::vector<std::string> labels;
  for (size_t k = 0; k < d; ++k) {
    reps.push_back(qm.lift(Vec::unit(p, d, k)));
    labels.push_back(a.label(qm.free_coords()[k]));
  }
  std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, Vec(p, d)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      table[i][j] = qm.reduce(a.mul(reps[i], reps[j]));
  Vec unit = qm.reduce(a.unit());
  auto alg = std::make_shared<FinDimAlgebra>(p, labels, table, unit);
  return {alg, qm};
}

CornerAlgebra corner_algebra(const FinDimAlgebra& a, const Vec& e) {
  const uint32_t p = a.modulus();
  const size_t n = a.dim();
  if (!a.is_idempotent(e))
    throw std::invalid_argument("corner requires an idempotent");
  Mat image(p, n, n);
  for (size_t i = 0; i < n; ++i)
    image.set_col(i, a.mul(e, a.mul(a.basis_vec(i), e)));
  Mat basis = column_space_basis(image);
  const size_t d = basis.cols();
  std::vector<std::string> labels;
  for (size_t i = 0; i < d; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, Vec(p, d)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      table[i][j] = coords_in_basis(basis, a.mul(basis.col(i), basis.col(j)));
  Vec unit = coords_in_basis(basis, e);
  auto alg = std::make_shared<FinDimAlgebra>(p, labels, table, unit);
  return {alg, basis};
}

AlgebraPtr opposite_algebra(const FinDimAlgebra& a) {
  const size_t n = a.dim();
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, Vec(a.modulus(), n)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) table[i][j] = a.basis_product(j, i);
  return std::make_shared<FinDimAlgebra>(a.modulus(), a.labels(), table, a.unit());
}

AlgebraPtr product_algebra(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("modulus mismatch in product");
  const uint32_t p = a.modulus();
  const size_t na = a.dim(), nb = b.dim(), n = na + nb;
  auto embed_a = [&](const Vec& v) {
    Vec w(p, n);
    for (size_t i = 0; i < na; ++i) w.set(i, v[i]);
    return w;
  };
  auto embed_b = [&](const Vec& v) {
    Vec w(p, n);
    for (size_t i = 0; i < nb; ++i) w.set(na + i, v[i]);
    return w;
  };
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, Vec(p, n)));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) table[i][j] = embed_a(a.basis_product(i, j));
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j)
      table[na + i][na + j] = embed_b(b.basis_product(i, j));
  std::vector<std::string> labels;
  for (size_t i = 0; i < na; ++i) labels.push_back("L:" + a.label(i));
  for (size_t i = 0; i < nb; ++i) labels.push_back("R:" + b.label(i));
  Vec unit = embed_a(a.unit()) + embed_b(b.unit());
  return std::make_shared<FinDimAlgebra>(p, labels, table, unit);
}

// ---------------------------------------------------------------------------
// Quiver presentations.

namespace {

std::string path_label(const QuiverPresentation& q, const QuiverPath& path) {
  if (path.arrow_seq.empty()) return "e_" + q.vertices[path.src];
  std::string s;
  for (size_t k = 0; k < path.arrow_seq.size(); ++k) {
    if (k) s += "*";
    s += q.arrows[path.arrow_seq[k]].label;
  }
  return s;
}

} // namespace

QuiverAlgebra algebra_from_quiver(const QuiverPresentation& q) {
  if (!is_prime(q.p)) throw std::invalid_argument("modulus must be prime");
  if (q.nilpotency_bound < 1)
    throw std::invalid_argument("nilpotency bound must be at least 1");
  const size_t nv = q.vertices.size();
  if (nv == 0) throw std::invalid_argument("quiver needs at least one vertex");
  {
    std::set<std::string> seen(q.vertices.begin(), q.vertices.end());
    if (seen.size() != nv || seen.count(""))
      throw std::invalid_argument("vertex labels must be unique and nonempty");
  }
  std::map<std::string, size_t> arrow_index;
  for (size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& ar = q.arrows[i];
    if (ar.label.empty() || arrow_index.count(ar.label))
      throw std::invalid_argument("arrow labels must be unique and nonempty");
    if (ar.src >= nv || ar.tgt >= nv)
      throw std::invalid_argument("arrow endpoint out of range: " + ar.label);
    arrow_index[ar.label] = i;
  }

  const size_t bound = q.nilpotency_bound;
  std::vector<QuiverPath> paths;
  std::map<std::vector<size_t>, size_t> seq_index; // nonempty arrow sequences
  for (size_t v = 0; v < nv; ++v) paths.push_back({v, v, {}});
  size_t layer_begin = 0, layer_end = paths.size();
  for (size_t len = 1; len < bound; ++len) {
    for (size_t pi = layer_begin; pi < layer_end; ++pi) {
      for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        if (q.arrows[ai].src != paths[pi].tgt) continue;
        QuiverPath np{paths[pi].src, q.arrows[ai].tgt, paths[pi].arrow_seq};
        np.arrow_seq.push_back(ai);
        seq_index[np.arrow_seq] = paths.size();
        paths.push_back(std::move(np));
      }
    }
    layer_begin = layer_end;
    layer_end = paths.size();
    if (layer_begin == layer_end) break; // no longer paths exist
  }
  const size_t D = paths.size();
  const uint32_t p = q.p;

  // resolve relation terms once: (coeff, src, tgt, path index or npos)
  struct ResolvedTerm {
    uint32_t coeff;
    size_t src, tgt;
    size_t path; // npos when length >= bound (already zero)
  };
  constexpr size_t npos = size_t(-1);
  std::vector<std::vector<ResolvedTerm>> rels;
  for (const auto& rel : q.relations) {
    if (rel.empty()) throw std::invalid_argument("empty relation");
    std::vector<ResolvedTerm> rr;
    for (const auto& term : rel) {
      if (term.arrows.empty())
        throw std::invalid_argument("relation term with empty path");
      std::vector<size_t> seq;
      for (const auto& lab : term.arrows) {
        auto it = arrow_index.find(lab);
        if (it == arrow_index.end())
          throw std::invalid_argument("unknown arrow in relation: " + lab);
        seq.push_back(it->second);
      }
      for (size_t k = 0; k + 1 < seq.size(); ++k)
        if (q.arrows[seq[k]].tgt != q.arrows[seq[k + 1]].src)
          throw std::invalid_argument("relation path is not composable");
      uint32_t c = mod_reduce(int64_t(term.coeff), p);
      if (c == 0) continue;
      size_t src = q.arrows[seq.front()].src, tgt = q.arrows[seq.back()].tgt;
      size_t idx = npos;
      if (seq.size() < bound) idx = seq_index.at(seq);
      rr.push_back({c, src, tgt, idx});
    }
    if (rr.empty()) continue; // relation vanished after reduction
    for (const auto& t : rr)
      if (t.src != rr.front().src || t.tgt != rr.front().tgt)
        throw std::invalid_argument("relation terms are not parallel");
    rels.push_back(std::move(rr));
  }

  // ideal generators: u . relation . v over all path pairs, degreewise
  std::vector<Vec> gens;
  for (const auto& rel : rels) {
    const size_t rsrc = rel.front().src, rtgt = rel.front().tgt;
    for (size_t u = 0; u < D; ++u) {
      if (paths[u].tgt != rsrc) continue;
      for (size_t v = 0; v < D; ++v) {
        if (paths[v].src != rtgt) continue;
        Vec gen(p, D);
        bool nonzero = false;
        for (const auto& t : rel) {
          if (t.path == npos) continue;
          size_t total =
              paths[u].arrow_seq.size() + paths[t.path].arrow_seq.size() +
              paths[v].arrow_seq.size();
          if (total >= bound) continue;
          std::vector<size_t> seq = paths[u].arrow_seq;
          seq.insert(seq.end(), paths[t.path].arrow_seq.begin(),
                     paths[t.path].arrow_seq.end());
          seq.insert(seq.end(), paths[v].arrow_seq.begin(),
                     paths[v].arrow_seq.end());
          gen.set(seq_index.at(seq), int64_t(gen[seq_index.at(seq)]) + t.coeff);
          nonzero = true;
        }
        if (nonzero && !gen.is_zero()) gens.push_back(std::move(gen));
      }
    }
  }
  QuotientMap qm = QuotientMap::of_subspace(p, D, Mat::from_cols(p, D, gens));

  // multiplication in the truncated path space: concat in traversal order,
  // product x*y traverses y first
  auto path_mul = [&](const Vec& x, const Vec& y) {
    Vec acc(p, D);
    for (size_t i = 0; i < D; ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < D; ++j) {
        if (y[j] == 0) continue;
        const QuiverPath& pi = paths[i];
        const QuiverPath& pj = paths[j];
        if (pj.tgt != pi.src) continue;
        size_t total = pi.arrow_seq.size() + pj.arrow_seq.size();
        if (total >= bound) continue;
        size_t idx;
        if (total == 0) {
          idx = pi.src; // trivial path times itself
        } else {
          std::vector<size_t> seq = pj.arrow_seq;
          seq.insert(seq.end(), pi.arrow_seq.begin(), pi.arrow_seq.end());
          idx = seq_index.at(seq);
        }
        acc.set(idx, int64_t(acc[idx]) + int64_t(x[i]) * y[j]);
      }
    }
    return acc;
  };

  const size_t d = qm.quot_dim();
  std::vector<Vec> reps;
  std::vector<std::string> labels;
  for (size_t k = 0; k < d; ++k) {
    reps.push_back(qm.lift(Vec::unit(p, d, k)));
    labels.push_back(path_label(q, paths[qm.free_coords()[k]]));
  }
  std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, Vec(p, d)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      table[i][j] = qm.reduce(path_mul(reps[i], reps[j]));
  Vec unit_path(p, D);
  for (size_t v = 0; v < nv; ++v) unit_path.set(v, 1);
  Vec unit = qm.reduce(unit_path);

  QuiverAlgebra out;
  out.algebra = std::make_shared<FinDimAlgebra>(p, labels, table, unit);
  for (size_t v = 0; v < nv; ++v)
    out.vertex_idempotents.push_back(qm.reduce(Vec::unit(p, D, v)));
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    Vec av(p, D);
    if (bound >= 2) av.set(seq_index.at({ai}), 1);
    out.arrow_elements.push_back(qm.reduce(av));
  }
  out.paths = paths;
  out.qmap = qm;
  return out;
}

} // namespace sga
