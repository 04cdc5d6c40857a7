#pragma once

// Finite-dimensional associative unital algebras over GF(p), given by
// structure constants, plus quiver presentations (path algebra modulo an
// admissible-style ideal truncated at a nilpotency bound).

#include "sga/gf.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sga {

class FinDimAlgebra {
public:
  // table[i][j] = coordinates of b_i * b_j
  FinDimAlgebra(uint32_t p, std::vector<std::string> labels,
                std::vector<std::vector<Vec>> table, Vec unit);

  uint32_t modulus() const { return p_; }
  size_t dim() const { return dim_; }
  const std::string& label(size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& basis_product(size_t i, size_t j) const { return table_[i][j]; }
  const Vec& unit() const { return unit_; }

  Vec mul(const Vec& x, const Vec& y) const;
  /* L_x : y -> x y */
  Mat left_mult(const Vec& x) const;
  /* R_x : y -> y x */
  Mat right_mult(const Vec& x) const;
  Vec power(const Vec& x, uint64_t n) const;
  bool is_idempotent(const Vec& x) const;
  Vec basis_vec(size_t i) const { return Vec::unit(p_, dim_, i); }

private:
  uint32_t p_;
  size_t dim_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> table_;
  Vec unit_;
};

using AlgebraPtr = std::shared_ptr<const FinDimAlgebra>;

struct AlgebraViolation {
  std::string kind; // "assoc", "left_unit", "right_unit"
  size_t i, j, k;
  std::string str() const;
};

/* exhaustive associativity and unit check; empty result = pass */
std::vector<AlgebraViolation> verify_algebra(const FinDimAlgebra& a);

// Quotient a/I by a two-sided ideal, with the coordinate change retained.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  QuotientMap qmap; // ambient coordinates -> quotient coordinates
};
QuotientAlgebra quotient_algebra(const FinDimAlgebra& a, const Mat& ideal_cols);

// Corner algebra e a e for an idempotent e; basis columns live in a.
struct CornerAlgebra {
  AlgebraPtr algebra;
  Mat basis; // dim(a) x dim(corner)
};
CornerAlgebra corner_algebra(const FinDimAlgebra& a, const Vec& e);

AlgebraPtr opposite_algebra(const FinDimAlgebra& a);

/* direct product a x b with block-diagonal structure constants */
AlgebraPtr product_algebra(const FinDimAlgebra& a, const FinDimAlgebra& b);

// ---------------------------------------------------------------------------
// Quiver presentations.

struct QuiverArrow {
  std::string label;
  size_t src, tgt; // vertex indices
};

/* one summand of a relation: coeff * (arrows traversed left to right) */
struct PathTerm {
  uint32_t coeff;
  std::vector<std::string> arrows;
};

struct QuiverPresentation {
  uint32_t p;
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<std::vector<PathTerm>> relations;
  size_t nilpotency_bound; // N: all paths of length >= N lie in the ideal
};

/* path in traversal order; length 0 = trivial path at src (== tgt) */
struct QuiverPath {
  size_t src, tgt;
  std::vector<size_t> arrow_seq;
};

struct QuiverAlgebra {
  AlgebraPtr algebra;
  std::vector<Vec> vertex_idempotents; // in quotient coordinates
  std::vector<Vec> arrow_elements;     // images of the arrows
  // path-space bookkeeping, needed to extend vertex/arrow actions
  std::vector<QuiverPath> paths; // all paths of length < N, fixed order
  QuotientMap qmap;              // path space -> algebra coordinates
};

// Constructs k Q / (relations + all paths of length >= N), working degreewise
// inside the span of paths of length < N.  Throws std::invalid_argument on
// malformed input (unknown labels, non-parallel relation terms, N < 1).
QuiverAlgebra algebra_from_quiver(const QuiverPresentation& q);

} // namespace sga
