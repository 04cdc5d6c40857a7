#include "sga/skew.hpp"

#include <algorithm>
#include <set>

namespace sga {

namespace {
constexpr size_t npos = size_t(-1);
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> labels,
                                    std::vector<std::vector<size_t>> table) {
  FiniteGroup g;
  g.n_ = table.size();
  if (g.n_ == 0) throw std::invalid_argument("empty group table");
  for (const auto& row : table) {
    if (row.size() != g.n_)
      throw std::invalid_argument("group table is not square");
    for (size_t v : row)
      if (v >= g.n_) throw std::invalid_argument("group table entry out of range");
  }
  g.mul_ = std::move(table);
  if (labels.empty())
    for (size_t i = 0; i < g.n_; ++i) labels.push_back("g" + std::to_string(i));
  if (labels.size() != g.n_)
    throw std::invalid_argument("label count does not match group order");
  g.labels_ = std::move(labels);

  size_t id = npos;
  for (size_t e = 0; e < g.n_; ++e) {
    bool ok = true;
    for (size_t a = 0; a < g.n_ && ok; ++a)
      ok = g.mul_[e][a] == a && g.mul_[a][e] == a;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id == npos) throw std::invalid_argument("group table has no identity");
  g.id_ = id;
  g.inv_.assign(g.n_, npos);
  for (size_t a = 0; a < g.n_; ++a) {
    for (size_t b = 0; b < g.n_; ++b)
      if (g.mul_[a][b] == id && g.mul_[b][a] == id) {
        g.inv_[a] = b;
        break;
      }
    if (g.inv_[a] == npos)
      throw std::invalid_argument("group table element has no inverse");
  }
  for (size_t a = 0; a < g.n_; ++a)
    for (size_t b = 0; b < g.n_; ++b)
      for (size_t c = 0; c < g.n_; ++c)
        if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]])
          throw std::invalid_argument("group table is not associative");
  return g;
}

FiniteGroup FiniteGroup::cyclic(size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group needs positive order");
  std::vector<std::vector<size_t>> table(n, std::vector<size_t>(n));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  return from_table(std::move(labels), std::move(table));
}

size_t FiniteGroup::element_order(size_t a) const {
  size_t x = a, ord = 1;
  while (x != id_) {
    x = mul_[x][a];
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_subgroup(const std::vector<size_t>& elems) const {
  if (elems.empty()) return false;
  std::set<size_t> s(elems.begin(), elems.end());
  if (s.size() != elems.size()) return false;
  for (size_t v : s)
    if (v >= n_) return false;
  if (!s.count(id_)) return false;
  for (size_t a : s)
    for (size_t b : s)
      if (!s.count(mul_[a][b])) return false;
  return true; // inverses follow from closure in a finite group
}

FiniteGroup::SubgroupData FiniteGroup::subgroup(std::vector<size_t> elems) const {
  if (!is_subgroup(elems))
    throw std::invalid_argument("elements do not form a subgroup");
  auto it = std::find(elems.begin(), elems.end(), id_);
  std::rotate(elems.begin(), it, it + 1);

  const size_t m = elems.size();
  std::vector<size_t> local(n_, npos);
  for (size_t i = 0; i < m; ++i) local[elems[i]] = i;
  std::vector<std::vector<size_t>> table(m, std::vector<size_t>(m));
  std::vector<std::string> labels;
  for (size_t i = 0; i < m; ++i) {
    labels.push_back(labels_[elems[i]]);
    for (size_t j = 0; j < m; ++j) table[i][j] = local[mul_[elems[i]][elems[j]]];
  }
  return {from_table(std::move(labels), std::move(table)), std::move(elems)};
}

std::vector<size_t> FiniteGroup::find_sylow(uint32_t p) const {
  size_t q = 1;
  {
    size_t n = n_;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
  }
  if (q == 1) return {id_};

  bool abelian = true;
  for (size_t a = 0; a < n_ && abelian; ++a)
    for (size_t b = a + 1; b < n_; ++b)
      if (mul_[a][b] != mul_[b][a]) {
        abelian = false;
        break;
      }
  if (abelian) {
    // in an abelian group the p-power-order elements form the Sylow subgroup
    std::vector<size_t> out;
    for (size_t a = 0; a < n_; ++a) {
      size_t ord = element_order(a);
      while (ord % p == 0) ord /= p;
      if (ord == 1) out.push_back(a);
    }
    return out;
  }
  if (n_ > 20)
    throw std::invalid_argument("brute-force Sylow search capped at order 20");
  for (uint32_t mask = 0; mask < (1u << n_); ++mask) {
    if (size_t(__builtin_popcount(mask)) != q) continue;
    if (!(mask >> id_ & 1)) continue;
    std::vector<size_t> elems;
    for (size_t a = 0; a < n_; ++a)
      if (mask >> a & 1) elems.push_back(a);
    bool closed = true;
    for (size_t a : elems) {
      for (size_t b : elems)
        if (!(mask >> mul_[a][b] & 1)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) return elems;
  }
  throw std::logic_error("no Sylow subgroup found, impossible");
}

SylowCheck verify_sylow(const FiniteGroup& g, const std::vector<size_t>& elems,
                        uint32_t p) {
  SylowCheck out;
  size_t q = 1, n = g.order();
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  out.expected_order = q;
  out.actual_order = std::set<size_t>(elems.begin(), elems.end()).size();
  out.is_subgroup = g.is_subgroup(elems);
  out.order_matches = out.actual_order == q;
  return out;
}

// ---------------------------------------------------------------------------

GroupAction::GroupAction(AlgebraPtr alg, FiniteGroup grp, std::vector<Mat> phi)
    : alg_(std::move(alg)), grp_(std::move(grp)), phi_(std::move(phi)) {
  if (phi_.size() != grp_.order())
    throw std::invalid_argument("need one matrix per group element");
  for (const Mat& m : phi_)
    if (m.rows() != alg_->dim() || m.cols() != alg_->dim() ||
        m.modulus() != alg_->modulus())
      throw std::invalid_argument("action matrix has wrong shape or modulus");
}

std::vector<std::string> GroupAction::verify() const {
  std::vector<std::string> issues;
  const FinDimAlgebra& a = *alg_;
  const size_t n = a.dim(), m = grp_.order();
  if (!phi_[grp_.identity()].is_identity())
    issues.push_back("identity element does not act as the identity map");
  for (size_t g = 0; g < m; ++g)
    for (size_t h = 0; h < m; ++h)
      if (phi_[g] * phi_[h] != phi_[grp_.mul(g, h)]) {
        issues.push_back("action is not multiplicative at (" + grp_.label(g) +
                         ", " + grp_.label(h) + ")");
      }
  for (size_t g = 0; g < m; ++g) {
    if (rank_of(phi_[g]) != n)
      issues.push_back("action of " + grp_.label(g) + " is singular");
    if (apply(g, a.unit()) != a.unit())
      issues.push_back("action of " + grp_.label(g) + " moves the unit");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Vec lhs = apply(g, a.basis_product(i, j));
        Vec rhs = a.mul(phi_[g].col(i), phi_[g].col(j));
        if (lhs != rhs) {
          issues.push_back("action of " + grp_.label(g) +
                           " is not an algebra map at (" + a.label(i) + ", " +
                           a.label(j) + ")");
        }
      }
  }
  return issues;
}

GroupAction GroupAction::restricted(const FiniteGroup::SubgroupData& sub) const {
  std::vector<Mat> phi;
  for (size_t parent : sub.parent_of) phi.push_back(phi_[parent]);
  return GroupAction(alg_, sub.group, std::move(phi));
}

// ---------------------------------------------------------------------------

Vec SkewAlgebra::embed_base(const Vec& x) const {
  Vec out(algebra->modulus(), algebra->dim());
  for (size_t i = 0; i < base->dim(); ++i)
    out.set(flat(i, group.identity()), x[i]);
  return out;
}

Vec SkewAlgebra::embed_group(size_t g) const {
  Vec out(algebra->modulus(), algebra->dim());
  const Vec& u = base->unit();
  for (size_t i = 0; i < base->dim(); ++i) out.set(flat(i, g), u[i]);
  return out;
}

Mat SkewAlgebra::base_embedding() const {
  Mat m(algebra->modulus(), algebra->dim(), base->dim());
  for (size_t i = 0; i < base->dim(); ++i)
    m.set_col(i, embed_base(base->basis_vec(i)));
  return m;
}

SkewAlgebra skew_group_algebra(const GroupAction& act) {
  AlgebraPtr base = act.algebra_ptr();
  const FiniteGroup& grp = act.group();
  const uint32_t p = base->modulus();
  const size_t n = base->dim(), m = grp.order(), N = n * m;

  auto flat = [&](size_t i, size_t g) { return g * n + i; };
  std::vector<std::vector<Vec>> table(N, std::vector<Vec>(N, Vec(p, N)));
  for (size_t g = 0; g < m; ++g)
    for (size_t i = 0; i < n; ++i)
      for (size_t h = 0; h < m; ++h) {
        size_t gh = grp.mul(g, h);
        for (size_t j = 0; j < n; ++j) {
          // (b_i x g)(b_j x h) = b_i g(b_j) x gh
          Vec w = base->mul(base->basis_vec(i), act.phi(g).col(j));
          Vec& cell = table[flat(i, g)][flat(j, h)];
          for (size_t k = 0; k < n; ++k) cell.set(flat(k, gh), w[k]);
        }
      }
  std::vector<std::string> labels(N);
  for (size_t g = 0; g < m; ++g)
    for (size_t i = 0; i < n; ++i)
      labels[flat(i, g)] = base->label(i) + "@" + grp.label(g);
  Vec unit(p, N);
  for (size_t i = 0; i < n; ++i)
    unit.set(flat(i, grp.identity()), base->unit()[i]);

  SkewAlgebra out;
  out.base = base;
  out.group = grp;
  for (size_t g = 0; g < m; ++g) out.phi.push_back(act.phi(g));
  out.algebra = std::make_shared<FinDimAlgebra>(p, labels, table, unit);
  return out;
}

// ---------------------------------------------------------------------------

FixedAlgebra fixed_algebra(const GroupAction& act,
                           const std::vector<size_t>& sub_elems) {
  const FinDimAlgebra& a = act.algebra();
  const uint32_t p = a.modulus();
  const size_t n = a.dim();
  const size_t id = act.group().identity();

  Mat stacked(p, 0, n);
  for (size_t h : sub_elems) {
    if (h == id) continue;
    stacked = stacked.rows() == 0 ? act.phi(h) - Mat::identity(p, n)
                                  : stacked.vstack(act.phi(h) - Mat::identity(p, n));
  }
  Mat fixed = stacked.rows() == 0 ? Mat::identity(p, n) : kernel_basis_mat(stacked);
  const size_t s = fixed.cols();
  if (!in_span(fixed, a.unit()))
    throw std::invalid_argument("unit is not fixed; action is not unital");

  std::vector<std::string> labels;
  for (size_t i = 0; i < s; ++i) labels.push_back("f" + std::to_string(i));
  std::vector<std::vector<Vec>> table(s, std::vector<Vec>(s, Vec(p, s)));
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      Vec w = a.mul(fixed.col(i), fixed.col(j));
      if (!in_span(fixed, w))
        throw std::logic_error("fixed subspace is not closed under products");
      table[i][j] = coords_in_basis(fixed, w);
    }
  Vec unit = coords_in_basis(fixed, a.unit());

  // trace span: { sum_{h in H} phi_h(b_j) }
  Mat traces(p, n, n);
  for (size_t j = 0; j < n; ++j) {
    Vec t(p, n);
    for (size_t h : sub_elems) t = t + act.phi(h).col(j);
    traces.set_col(j, t);
  }
  Mat tr_basis = column_space_basis(traces);
  bool agrees = tr_basis.cols() == s;
  for (size_t c = 0; agrees && c < tr_basis.cols(); ++c)
    agrees = in_span(fixed, tr_basis.col(c));

  FixedAlgebra out;
  out.ambient = act.algebra_ptr();
  out.algebra = std::make_shared<FinDimAlgebra>(p, labels, table, unit);
  out.embedding = fixed;
  out.trace_span_agrees = agrees;
  return out;
}

// ---------------------------------------------------------------------------

IdempotentSetCheck check_idempotent_set(const FinDimAlgebra& a,
                                        const std::vector<Vec>& es) {
  IdempotentSetCheck out;
  out.all_idempotent = true;
  out.pairwise_orthogonal = true;
  Vec sum(a.modulus(), a.dim());
  for (size_t i = 0; i < es.size(); ++i) {
    if (!a.is_idempotent(es[i])) {
      out.all_idempotent = false;
      out.issues.push_back("element " + std::to_string(i) + " is not idempotent");
    }
    if (es[i].is_zero()) {
      out.all_idempotent = false;
      out.issues.push_back("element " + std::to_string(i) + " is zero");
    }
    sum = sum + es[i];
    for (size_t j = 0; j < es.size(); ++j) {
      if (i == j) continue;
      if (!a.mul(es[i], es[j]).is_zero()) {
        out.pairwise_orthogonal = false;
        out.issues.push_back("products e_" + std::to_string(i) + " e_" +
                             std::to_string(j) + " do not vanish");
      }
    }
  }
  out.complete = sum == a.unit();
  if (!out.complete) out.issues.push_back("idempotents do not sum to 1");
  return out;
}

ActionOnIdempotents check_action_on_idempotents(
    const GroupAction& act, const std::vector<Vec>& es,
    const std::vector<size_t>& sub_elems) {
  ActionOnIdempotents out;
  out.closed = true;
  out.free_action = true;
  const size_t id = act.group().identity();
  for (size_t h : sub_elems) {
    std::vector<size_t> row(es.size(), npos);
    for (size_t i = 0; i < es.size(); ++i) {
      Vec w = act.apply(h, es[i]);
      for (size_t j = 0; j < es.size(); ++j)
        if (es[j] == w) {
          row[i] = j;
          break;
        }
      if (row[i] == npos) out.closed = false;
      if (h != id && row[i] == i) out.free_action = false;
    }
    out.perm.push_back(std::move(row));
  }
  if (!out.closed) out.free_action = false;
  return out;
}

// ---------------------------------------------------------------------------

std::optional<SplittingData> bimodule_splitting(const FinDimAlgebra& a,
                                                const Mat& sub_basis) {
  const uint32_t p = a.modulus();
  const size_t n = a.dim();
  const Mat F = column_space_basis(sub_basis);
  const size_t s = F.cols();
  if (!in_span(F, a.unit()))
    throw std::invalid_argument("subalgebra does not contain the unit");
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j)
      if (!in_span(F, a.mul(F.col(i), F.col(j))))
        throw std::invalid_argument("columns do not span a subalgebra");

  // unknown Z as vec(Z), column-major: vec(A Z B) = (B^T kron A) vec(Z)
  const Mat I = Mat::identity(p, n);
  std::vector<Mat> blocks;
  std::vector<Vec> rhs_parts;
  for (size_t j = 0; j < s; ++j) {
    Mat sj = Mat::from_cols(p, n, {F.col(j)});
    blocks.push_back(kron(sj.transpose(), I)); // Z s_j = s_j
    rhs_parts.push_back(F.col(j));
  }
  Mat left_null = Mat::from_rows(p, n, kernel_basis(F.transpose()));
  if (left_null.rows() > 0) {
    blocks.push_back(kron(I, left_null)); // C Z = 0, forces im(Z) <= im(F)
    rhs_parts.push_back(Vec(p, left_null.rows() * n));
  }
  for (size_t j = 0; j < s; ++j) {
    Mat L = a.left_mult(F.col(j));
    Mat R = a.right_mult(F.col(j));
    blocks.push_back(kron(L.transpose(), I) - kron(I, L)); // Z L = L Z
    rhs_parts.push_back(Vec(p, n * n));
    blocks.push_back(kron(R.transpose(), I) - kron(I, R)); // Z R = R Z
    rhs_parts.push_back(Vec(p, n * n));
  }
  Mat big = blocks.front();
  Vec rhs = rhs_parts.front();
  for (size_t k = 1; k < blocks.size(); ++k) {
    big = big.vstack(blocks[k]);
    rhs = rhs.concat(rhs_parts[k]);
  }
  auto x = solve(big, rhs);
  if (!x) return std::nullopt;

  Mat zeta(p, n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) zeta.set(i, j, (*x)[j * n + i]);
  assert(zeta * zeta == zeta);
  assert(zeta * F == F);
  SplittingData out;
  out.zeta = zeta;
  out.complement_basis = kernel_basis_mat(zeta);
  return out;
}

std::optional<SplittingData> bimodule_splitting(const FixedAlgebra& fixed) {
  return bimodule_splitting(*fixed.ambient, fixed.embedding);
}

} // namespace sga
