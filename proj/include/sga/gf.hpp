#pragma once

// Exact dense linear algebra over prime fields GF(p).
// All types are plain value types; once built they are treated as immutable,
// so concurrent reads are safe.  p = 0 (characteristic zero) is unsupported.

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sga {

bool is_prime(uint32_t n);

/* residue of a mod p with a given as any int64 */
uint32_t mod_reduce(int64_t a, uint32_t p);

/* multiplicative inverse mod prime p; throws std::domain_error when a == 0 mod p */
uint32_t inv_mod(uint32_t a, uint32_t p);

// Scalar in GF(p).  The modulus travels with the value; mixing moduli is a
// bug, caught by assert in debug builds and by explicit checks in the solver
// entry points.
class Fp {
public:
  Fp(int64_t residue, uint32_t p) : p_(p), v_(mod_reduce(residue, p)) {}
  uint32_t val() const { return v_; }
  uint32_t modulus() const { return p_; }

  Fp operator+(const Fp& o) const {
    assert(p_ == o.p_);
    return Fp(int64_t(v_) + o.v_, p_);
  }
  Fp operator-(const Fp& o) const {
    assert(p_ == o.p_);
    return Fp(int64_t(v_) - o.v_, p_);
  }
  Fp operator*(const Fp& o) const {
    assert(p_ == o.p_);
    return Fp(int64_t(v_) * o.v_, p_);
  }
  Fp operator/(const Fp& o) const {
    assert(p_ == o.p_);
    return Fp(int64_t(v_) * inv_mod(o.v_, p_), p_);
  }
  Fp operator-() const { return Fp(-int64_t(v_), p_); }
  bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool is_zero() const { return v_ == 0; }

private:
  uint32_t p_;
  uint32_t v_;
};

// Coordinate vector over GF(p).
class Vec {
public:
  Vec() : p_(2) {}
  Vec(uint32_t p, size_t n) : p_(p), c_(n, 0) {}
  Vec(uint32_t p, std::vector<uint32_t> coeffs);
  static Vec unit(uint32_t p, size_t n, size_t i);

  size_t size() const { return c_.size(); }
  uint32_t modulus() const { return p_; }
  uint32_t operator[](size_t i) const { return c_[i]; }
  void set(size_t i, int64_t v) { c_[i] = mod_reduce(v, p_); }
  bool is_zero() const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec scaled(uint32_t s) const;
  /* this += s * o, used in elimination loops */
  void add_scaled(const Vec& o, uint32_t s);
  Vec concat(const Vec& o) const;
  Vec slice(size_t begin, size_t len) const;
  bool operator==(const Vec& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const Vec& o) const { return !(*this == o); }
  std::string str() const;

private:
  uint32_t p_;
  std::vector<uint32_t> c_;
};

// Dense row-major matrix over GF(p); all entries share one modulus.
class Mat {
public:
  Mat() : rows_(0), cols_(0), p_(2) {}
  Mat(uint32_t p, size_t rows, size_t cols) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}
  static Mat identity(uint32_t p, size_t n);
  static Mat from_cols(uint32_t p, size_t rows, const std::vector<Vec>& cols);
  static Mat from_rows(uint32_t p, size_t cols, const std::vector<Vec>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t modulus() const { return p_; }
  uint32_t at(size_t r, size_t c) const {
    assert(r < rows_ && c < cols_);
    return a_[r * cols_ + c];
  }
  void set(size_t r, size_t c, int64_t v) {
    assert(r < rows_ && c < cols_);
    a_[r * cols_ + c] = mod_reduce(v, p_);
  }

  Vec col(size_t j) const;
  Vec row(size_t i) const;
  void set_col(size_t j, const Vec& v);
  void set_row(size_t i, const Vec& v);

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(uint32_t s) const;
  Mat transpose() const;
  Mat hstack(const Mat& o) const;
  Mat vstack(const Mat& o) const;
  Mat submatrix(size_t r0, size_t c0, size_t nrows, size_t ncols) const;
  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  std::string str() const;

private:
  size_t rows_, cols_;
  uint32_t p_;
  std::vector<uint32_t> a_;
};

Mat kron(const Mat& a, const Mat& b);

struct RrefResult {
  Mat reduced;
  std::vector<size_t> pivots; // pivot column per nonzero row
  size_t rank;
};

/* reduced row echelon form, deterministic (first nonzero pivot) */
RrefResult rref(const Mat& m);
size_t rank_of(const Mat& m);

/* basis of the right kernel {x : m x = 0} */
std::vector<Vec> kernel_basis(const Mat& m);
Mat kernel_basis_mat(const Mat& m); // same, as columns (cols may be 0)

/* one solution of m x = b, or nullopt when inconsistent;
   throws std::invalid_argument on modulus or shape mismatch */
std::optional<Vec> solve(const Mat& m, const Vec& b);
/* columnwise m X = b; nullopt if any column is inconsistent */
std::optional<Mat> solve_matrix(const Mat& m, const Mat& b);
std::optional<Mat> inverse(const Mat& m);

/* subset of the input columns forming a basis of the column space */
Mat column_space_basis(const Mat& m);
bool in_span(const Mat& basis_cols, const Vec& v);
/* coordinates of v in the given independent columns; throws std::logic_error
   when v is outside the span (callers use it only when membership is known) */
Vec coords_in_basis(const Mat& basis_cols, const Vec& v);
/* basis (as columns) of the intersection of two column spans */
Mat subspace_intersection(const Mat& a_cols, const Mat& b_cols);

// Coordinates on F_p^n / W for a subspace W, with a fixed section.
// Used for quotient algebras, quotient modules and homotopy categories alike.
class QuotientMap {
public:
  QuotientMap() : n_(0) {}
  static QuotientMap of_subspace(uint32_t p, size_t n, const Mat& w_cols);

  size_t ambient_dim() const { return n_; }
  size_t sub_dim() const { return rows_.rows(); }
  size_t quot_dim() const { return free_.size(); }
  Vec reduce(const Vec& v) const; // quotient coordinates
  Vec lift(const Vec& q) const;   // canonical representative
  Mat reduce_mat() const;         // quot_dim x n
  Mat lift_mat() const;           // n x quot_dim
  bool contains(const Vec& v) const;
  /* ambient coordinates that survive as quotient coordinates, in order */
  const std::vector<size_t>& free_coords() const { return free_; }

private:
  size_t n_;
  Mat rows_;                  // rref rows spanning W
  std::vector<size_t> piv_;   // pivot columns of rows_
  std::vector<size_t> free_;  // complementary coordinates
};

// Deterministic seeded RNG; raw engine output is reduced directly so results
// are identical across platforms (std distributions are not portable).
class Rng {
public:
  explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next();
  uint32_t below(uint32_t n); // uniform-ish in [0, n)
  uint32_t residue(uint32_t p) { return below(p); }

private:
  uint64_t s_; // splitmix64 state
};

} // namespace sga
