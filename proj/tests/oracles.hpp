#pragma once

// Test-only oracles, kept independent of the library's elimination-based
// implementations: rank via minor expansion, determinants via cofactors.

#include "sga/gf.hpp"

namespace sga::testing {

inline uint32_t det_cofactor(const Mat& m) {
  size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square");
  uint32_t p = m.modulus();
  if (n == 0) return 1 % p;
  if (n == 1) return m.at(0, 0);
  uint64_t acc = 0;
  for (size_t j = 0; j < n; ++j) {
    if (!m.at(0, j)) continue;
    Mat minor(p, n - 1, n - 1);
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.set(r - 1, cc++, m.at(r, c));
      }
    }
    uint64_t term = uint64_t(m.at(0, j)) * det_cofactor(minor) % p;
    acc = (j % 2 == 0) ? (acc + term) % p : (acc + p - term % p) % p;
  }
  return uint32_t(acc % p);
}

/* rank = size of the largest nonvanishing minor (exhaustive) */
inline size_t rank_by_minors(const Mat& m) {
  size_t nr = m.rows(), nc = m.cols();
  size_t maxk = std::min(nr, nc);
  for (size_t k = maxk; k >= 1; --k) {
    // enumerate k-subsets of rows and of columns
    std::vector<size_t> rsel(k), csel(k);
    for (size_t i = 0; i < k; ++i) rsel[i] = i;
    while (true) {
      for (size_t i = 0; i < k; ++i) csel[i] = i;
      while (true) {
        Mat sub(m.modulus(), k, k);
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub.set(i, j, m.at(rsel[i], csel[j]));
        if (det_cofactor(sub) != 0) return k;
        // next column subset
        size_t i = k;
        while (i > 0 && csel[i - 1] == nc - k + (i - 1)) --i;
        if (i == 0) break;
        ++csel[i - 1];
        for (size_t j = i; j < k; ++j) csel[j] = csel[j - 1] + 1;
      }
      size_t i = k;
      while (i > 0 && rsel[i - 1] == nr - k + (i - 1)) --i;
      if (i == 0) break;
      ++rsel[i - 1];
      for (size_t j = i; j < k; ++j) rsel[j] = rsel[j - 1] + 1;
    }
  }
  return 0;
}

inline Mat random_mat(Rng& rng, uint32_t p, size_t rows, size_t cols) {
  Mat m(p, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.set(i, j, rng.residue(p));
  return m;
}

} // namespace sga::testing
