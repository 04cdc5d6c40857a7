#include "sga/gf.hpp"

#include <algorithm>
#include <sstream>

namespace sga {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t mod_reduce(int64_t a, uint32_t p) {
  assert(p >= 2);
  int64_t r = a % int64_t(p);
  if (r < 0) r += p;
  return uint32_t(r);
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("division by zero in GF(p)");
  // extended euclid
  int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  return mod_reduce(t, p);
}

Vec::Vec(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
}

Vec Vec::unit(uint32_t p, size_t n, size_t i) {
  Vec v(p, n);
  v.set(i, 1);
  return v;
}

bool Vec::is_zero() const {
  for (uint32_t x : c_)
    if (x) return false;
  return true;
}

Vec Vec::operator+(const Vec& o) const {
  assert(p_ == o.p_ && size() == o.size());
  Vec r(p_, size());
  for (size_t i = 0; i < size(); ++i) r.c_[i] = (c_[i] + o.c_[i]) % p_;
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  assert(p_ == o.p_ && size() == o.size());
  Vec r(p_, size());
  for (size_t i = 0; i < size(); ++i) r.c_[i] = (c_[i] + p_ - o.c_[i]) % p_;
  return r;
}

Vec Vec::scaled(uint32_t s) const {
  s %= p_;
  Vec r(p_, size());
  for (size_t i = 0; i < size(); ++i) r.c_[i] = uint32_t((uint64_t(c_[i]) * s) % p_);
  return r;
}

void Vec::add_scaled(const Vec& o, uint32_t s) {
  assert(p_ == o.p_ && size() == o.size());
  s %= p_;
  if (s == 0) return;
  for (size_t i = 0; i < size(); ++i)
    c_[i] = uint32_t((c_[i] + uint64_t(o.c_[i]) * s) % p_);
}

Vec Vec::concat(const Vec& o) const {
  assert(p_ == o.p_);
  Vec r(p_, size() + o.size());
  for (size_t i = 0; i < size(); ++i) r.c_[i] = c_[i];
  for (size_t i = 0; i < o.size(); ++i) r.c_[size() + i] = o.c_[i];
  return r;
}

Vec Vec::slice(size_t begin, size_t len) const {
  assert(begin + len <= size());
  Vec r(p_, len);
  for (size_t i = 0; i < len; ++i) r.c_[i] = c_[begin + i];
  return r;
}

std::string Vec::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < size(); ++i) os << (i ? " " : "") << c_[i];
  os << "]";
  return os.str();
}

Mat Mat::identity(uint32_t p, size_t n) {
  Mat m(p, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat Mat::from_cols(uint32_t p, size_t rows, const std::vector<Vec>& cols) {
  Mat m(p, rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    assert(cols[j].size() == rows && cols[j].modulus() == p);
    for (size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

Mat Mat::from_rows(uint32_t p, size_t cols, const std::vector<Vec>& rows) {
  Mat m(p, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols && rows[i].modulus() == p);
    for (size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Vec Mat::col(size_t j) const {
  Vec v(p_, rows_);
  for (size_t i = 0; i < rows_; ++i) v.set(i, at(i, j));
  return v;
}

Vec Mat::row(size_t i) const {
  Vec v(p_, cols_);
  for (size_t j = 0; j < cols_; ++j) v.set(j, at(i, j));
  return v;
}

void Mat::set_col(size_t j, const Vec& v) {
  assert(v.size() == rows_ && v.modulus() == p_);
  for (size_t i = 0; i < rows_; ++i) set(i, j, v[i]);
}

void Mat::set_row(size_t i, const Vec& v) {
  assert(v.size() == cols_ && v.modulus() == p_);
  for (size_t j = 0; j < cols_; ++j) set(i, j, v[j]);
}

Mat Mat::operator*(const Mat& o) const {
  assert(p_ == o.p_ && cols_ == o.rows_);
  Mat r(p_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      uint64_t s = at(i, k);
      if (!s) continue;
      for (size_t j = 0; j < o.cols_; ++j)
        r.a_[i * o.cols_ + j] = uint32_t((r.a_[i * o.cols_ + j] + s * o.at(k, j)) % p_);
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  assert(p_ == v.modulus() && cols_ == v.size());
  Vec r(p_, rows_);
  for (size_t i = 0; i < rows_; ++i) {
    uint64_t s = 0;
    for (size_t j = 0; j < cols_; ++j) s += uint64_t(at(i, j)) * v[j];
    r.set(i, int64_t(s % p_));
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  assert(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  assert(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + p_ - o.a_[i]) % p_;
  return r;
}

Mat Mat::scaled(uint32_t s) const {
  s %= p_;
  Mat r(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = uint32_t((uint64_t(a_[i]) * s) % p_);
  return r;
}

Mat Mat::transpose() const {
  Mat r(p_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Mat Mat::hstack(const Mat& o) const {
  assert(p_ == o.p_ && rows_ == o.rows_);
  Mat r(p_, rows_, cols_ + o.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (size_t j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
  }
  return r;
}

Mat Mat::vstack(const Mat& o) const {
  assert(p_ == o.p_ && cols_ == o.cols_);
  Mat r(p_, rows_ + o.rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (size_t i = 0; i < o.rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
  return r;
}

Mat Mat::submatrix(size_t r0, size_t c0, size_t nrows, size_t ncols) const {
  assert(r0 + nrows <= rows_ && c0 + ncols <= cols_);
  Mat r(p_, nrows, ncols);
  for (size_t i = 0; i < nrows; ++i)
    for (size_t j = 0; j < ncols; ++j) r.set(i, j, at(r0 + i, c0 + j));
  return r;
}

bool Mat::is_zero() const {
  for (uint32_t x : a_)
    if (x) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Mat::operator==(const Mat& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    os << "\n";
  }
  return os.str();
}

Mat kron(const Mat& a, const Mat& b) {
  assert(a.modulus() == b.modulus());
  uint32_t p = a.modulus();
  Mat r(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      uint64_t s = a.at(i, j);
      if (!s) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          r.set(i * b.rows() + k, j * b.cols() + l, int64_t((s * b.at(k, l)) % p));
    }
  return r;
}

RrefResult rref(const Mat& m) {
  Mat r = m;
  uint32_t p = m.modulus();
  size_t nr = m.rows(), nc = m.cols();
  std::vector<size_t> pivots;
  size_t cur = 0;
  for (size_t col = 0; col < nc && cur < nr; ++col) {
    size_t piv = nr;
    for (size_t i = cur; i < nr; ++i)
      if (r.at(i, col)) {
        piv = i;
        break;
      }
    if (piv == nr) continue;
    if (piv != cur) {
      Vec tmp = r.row(piv);
      r.set_row(piv, r.row(cur));
      r.set_row(cur, tmp);
    }
    uint32_t inv = inv_mod(r.at(cur, col), p);
    Vec prow = r.row(cur).scaled(inv);
    r.set_row(cur, prow);
    for (size_t i = 0; i < nr; ++i) {
      if (i == cur) continue;
      uint32_t f = r.at(i, col);
      if (!f) continue;
      Vec rw = r.row(i);
      rw.add_scaled(prow, p - f);
      r.set_row(i, rw);
    }
    pivots.push_back(col);
    ++cur;
  }
  return RrefResult{r, pivots, cur};
}

size_t rank_of(const Mat& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Mat& m) {
  RrefResult rr = rref(m);
  uint32_t p = m.modulus();
  size_t nc = m.cols();
  std::vector<bool> is_piv(nc, false);
  for (size_t c : rr.pivots) is_piv[c] = true;
  std::vector<Vec> out;
  for (size_t f = 0; f < nc; ++f) {
    if (is_piv[f]) continue;
    Vec x(p, nc);
    x.set(f, 1);
    for (size_t j = 0; j < rr.pivots.size(); ++j)
      x.set(rr.pivots[j], -int64_t(rr.reduced.at(j, f)));
    out.push_back(x);
  }
  return out;
}

Mat kernel_basis_mat(const Mat& m) {
  return Mat::from_cols(m.modulus(), m.cols(), kernel_basis(m));
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (m.modulus() != b.modulus())
    throw std::invalid_argument("solve: modulus mismatch");
  if (m.rows() != b.size())
    throw std::invalid_argument("solve: shape mismatch");
  Mat aug = m.hstack(Mat::from_cols(m.modulus(), b.size(), {b}));
  RrefResult rr = rref(aug);
  size_t nc = m.cols();
  Vec x(m.modulus(), nc);
  for (size_t j = 0; j < rr.pivots.size(); ++j) {
    if (rr.pivots[j] == nc) return std::nullopt; // pivot in rhs column
    x.set(rr.pivots[j], rr.reduced.at(j, nc));
  }
  return x;
}

std::optional<Mat> solve_matrix(const Mat& m, const Mat& b) {
  if (m.modulus() != b.modulus())
    throw std::invalid_argument("solve_matrix: modulus mismatch");
  if (m.rows() != b.rows())
    throw std::invalid_argument("solve_matrix: shape mismatch");
  Mat aug = m.hstack(b);
  RrefResult rr = rref(aug);
  size_t nc = m.cols();
  for (size_t c : rr.pivots)
    if (c >= nc) return std::nullopt;
  Mat x(m.modulus(), nc, b.cols());
  for (size_t j = 0; j < rr.pivots.size(); ++j)
    for (size_t k = 0; k < b.cols(); ++k)
      x.set(rr.pivots[j], k, rr.reduced.at(j, nc + k));
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve_matrix(m, Mat::identity(m.modulus(), m.rows()));
  if (!x) return std::nullopt;
  if (!((*x) * m).is_identity()) return std::nullopt; // rank deficient
  return x;
}

Mat column_space_basis(const Mat& m) {
  RrefResult rr = rref(m);
  std::vector<Vec> cols;
  for (size_t c : rr.pivots) cols.push_back(m.col(c));
  return Mat::from_cols(m.modulus(), m.rows(), cols);
}

bool in_span(const Mat& basis_cols, const Vec& v) {
  if (v.is_zero()) return true;
  if (basis_cols.cols() == 0) return false;
  return solve(basis_cols, v).has_value();
}

Vec coords_in_basis(const Mat& basis_cols, const Vec& v) {
  if (basis_cols.cols() == 0 && v.is_zero()) return Vec(v.modulus(), 0);
  auto c = solve(basis_cols, v);
  if (!c) throw std::logic_error("coords_in_basis: vector outside span");
  return *c;
}

Mat subspace_intersection(const Mat& a_cols, const Mat& b_cols) {
  assert(a_cols.modulus() == b_cols.modulus() && a_cols.rows() == b_cols.rows());
  uint32_t p = a_cols.modulus();
  size_t n = a_cols.rows();
  if (a_cols.cols() == 0 || b_cols.cols() == 0) return Mat(p, n, 0);
  Mat stacked = a_cols.hstack(b_cols);
  std::vector<Vec> gens;
  for (const Vec& k : kernel_basis(stacked)) {
    Vec x = k.slice(0, a_cols.cols());
    gens.push_back(a_cols * x);
  }
  return column_space_basis(Mat::from_cols(p, n, gens));
}

QuotientMap QuotientMap::of_subspace(uint32_t p, size_t n, const Mat& w_cols) {
  assert(w_cols.rows() == n || w_cols.cols() == 0);
  QuotientMap q;
  q.n_ = n;
  Mat wt = (w_cols.cols() == 0) ? Mat(p, 0, n) : w_cols.transpose();
  RrefResult rr = rref(wt);
  q.rows_ = rr.reduced.submatrix(0, 0, rr.rank, n);
  q.piv_ = rr.pivots;
  std::vector<bool> is_piv(n, false);
  for (size_t c : q.piv_) is_piv[c] = true;
  for (size_t j = 0; j < n; ++j)
    if (!is_piv[j]) q.free_.push_back(j);
  return q;
}

Vec QuotientMap::reduce(const Vec& v) const {
  assert(v.size() == n_);
  Vec w = v;
  for (size_t j = 0; j < piv_.size(); ++j) {
    uint32_t f = w[piv_[j]];
    if (f) w.add_scaled(rows_.row(j), w.modulus() - f);
  }
  Vec q(v.modulus(), free_.size());
  for (size_t t = 0; t < free_.size(); ++t) q.set(t, w[free_[t]]);
  return q;
}

Vec QuotientMap::lift(const Vec& q) const {
  assert(q.size() == free_.size());
  Vec v(q.modulus(), n_);
  for (size_t t = 0; t < free_.size(); ++t) v.set(free_[t], q[t]);
  return v;
}

Mat QuotientMap::reduce_mat() const {
  uint32_t p = rows_.modulus();
  Mat m(p, free_.size(), n_);
  for (size_t j = 0; j < n_; ++j) m.set_col(j, reduce(Vec::unit(p, n_, j)));
  return m;
}

Mat QuotientMap::lift_mat() const {
  uint32_t p = rows_.modulus();
  Mat m(p, n_, free_.size());
  for (size_t t = 0; t < free_.size(); ++t) m.set_col(t, lift(Vec::unit(p, free_.size(), t)));
  return m;
}

bool QuotientMap::contains(const Vec& v) const {
  assert(v.size() == n_);
  Vec w = v;
  for (size_t j = 0; j < piv_.size(); ++j) {
    uint32_t f = w[piv_[j]];
    if (f) w.add_scaled(rows_.row(j), w.modulus() - f);
  }
  return w.is_zero();
}

uint64_t Rng::next() {
  // splitmix64: tiny, seed-stable and platform-independent
  uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint32_t Rng::below(uint32_t n) {
  assert(n > 0);
  return uint32_t(next() % n);
}

} // namespace sga
