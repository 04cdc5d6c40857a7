#pragma once

// Small hand-checked algebras, groups and actions shared across test suites.
// Expected values asserted against these were derived by hand from the
// defining formulas, independent of the library code paths.

#include "sga/algebra.hpp"
#include "sga/skew.hpp"

#include <algorithm>
#include <array>

namespace sga::testing {

/* path algebra of 1 -> 2, no relations */
inline QuiverAlgebra make_ka2(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  q.nilpotency_bound = 2;
  return algebra_from_quiver(q);
}

/* k[x]/(x^2) as a one-loop quiver */
inline QuiverAlgebra make_kxx(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  q.nilpotency_bound = 2;
  return algebra_from_quiver(q);
}

/* k x k as a two-vertex quiver with no arrows */
inline QuiverAlgebra make_kk(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"1", "2"};
  q.nilpotency_bound = 1;
  return algebra_from_quiver(q);
}

/* two copies of 1 -> 2 side by side (component swap fixture) */
inline QuiverAlgebra make_ka2_ka2(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"1", "2", "3", "4"};
  q.arrows = {{"a", 0, 1}, {"b", 2, 3}};
  q.nilpotency_bound = 2;
  return algebra_from_quiver(q);
}

/* two loops on two vertices: (k[x]/(x^2))^2 */
inline QuiverAlgebra make_kxx_kxx(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"u", "v"};
  q.arrows = {{"xu", 0, 0}, {"xv", 1, 1}};
  q.nilpotency_bound = 2;
  return algebra_from_quiver(q);
}

/* full 2x2 matrix algebra, basis E11 E12 E21 E22 */
inline AlgebraPtr make_m2(uint32_t p) {
  auto idx = [](size_t a, size_t b) { return a * 2 + b; };
  std::vector<std::vector<Vec>> table(4, std::vector<Vec>(4, Vec(p, 4)));
  for (size_t a = 0; a < 2; ++a)
    for (size_t b = 0; b < 2; ++b)
      for (size_t c = 0; c < 2; ++c)
        for (size_t d = 0; d < 2; ++d)
          if (b == c) table[idx(a, b)][idx(c, d)].set(idx(a, d), 1);
  Vec unit(p, 4);
  unit.set(idx(0, 0), 1);
  unit.set(idx(1, 1), 1);
  return std::make_shared<FinDimAlgebra>(
      p, std::vector<std::string>{"E11", "E12", "E21", "E22"}, table, unit);
}

/* permutation action matrix from an index map */
inline Mat perm_mat(uint32_t p, const std::vector<size_t>& image) {
  Mat m(p, image.size(), image.size());
  for (size_t j = 0; j < image.size(); ++j) m.set(image[j], j, 1);
  return m;
}

/* Z/2 swapping the two factors of k x k */
inline GroupAction make_swap_kk(uint32_t p) {
  auto qa = make_kk(p);
  std::vector<Mat> phi = {Mat::identity(p, 2), perm_mat(p, {1, 0})};
  return GroupAction(qa.algebra, FiniteGroup::cyclic(2), phi);
}

/* Z/2 swapping the two components of kA2 x kA2 */
inline GroupAction make_swap_ka2_ka2(uint32_t p) {
  auto qa = make_ka2_ka2(p);
  std::vector<Mat> phi = {Mat::identity(p, 6), perm_mat(p, {2, 3, 0, 1, 5, 4})};
  return GroupAction(qa.algebra, FiniteGroup::cyclic(2), phi);
}

/* Z/2 swapping the two loops of (k[x]/(x^2))^2 */
inline GroupAction make_swap_kxx_kxx(uint32_t p) {
  auto qa = make_kxx_kxx(p);
  std::vector<Mat> phi = {Mat::identity(p, 4), perm_mat(p, {1, 0, 3, 2})};
  return GroupAction(qa.algebra, FiniteGroup::cyclic(2), phi);
}

/* Z/2 on k[x]/(x^2) with the sign flip x -> -x (faithful only for p odd) */
inline GroupAction make_sign_kxx(uint32_t p) {
  auto qa = make_kxx(p);
  Mat sigma = Mat::identity(p, 2);
  sigma.set(1, 1, int64_t(p) - 1);
  std::vector<Mat> phi = {Mat::identity(p, 2), sigma};
  return GroupAction(qa.algebra, FiniteGroup::cyclic(2), phi);
}

/* trivial Z/2 on the ground field */
inline GroupAction make_trivial_k(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"v"};
  q.nilpotency_bound = 1;
  auto qa = algebra_from_quiver(q);
  std::vector<Mat> phi = {Mat::identity(p, 1), Mat::identity(p, 1)};
  return GroupAction(qa.algebra, FiniteGroup::cyclic(2), phi);
}

/* symmetric group on 3 letters via permutation composition */
inline FiniteGroup make_s3() {
  std::vector<std::array<size_t, 3>> all;
  std::array<size_t, 3> cur = {0, 1, 2};
  do {
    all.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  auto index_of = [&](const std::array<size_t, 3>& q) {
    for (size_t i = 0; i < all.size(); ++i)
      if (all[i] == q) return i;
    return size_t(-1);
  };
  std::vector<std::vector<size_t>> table(6, std::vector<size_t>(6));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      std::array<size_t, 3> comp;
      for (size_t x = 0; x < 3; ++x) comp[x] = all[i][all[j][x]];
      table[i][j] = index_of(comp);
    }
  return FiniteGroup::from_table({}, table);
}

} // namespace sga::testing
