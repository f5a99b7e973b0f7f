#pragma once

// Small dense exact linear algebra over the rationals (internal).

#include <utility>
#include <vector>

#include "conicpen/rational.hpp"

namespace conicpen::detail {

using Matrix = std::vector<std::vector<Rational>>;

/// Determinant by Gaussian elimination with exact pivoting; the input is copied.
inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Rank of a rectangular matrix.
inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (m[k][c].is_zero()) continue;
      Rational f = m[k][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Signed maximal minors of an (n-1) x n matrix: entry k is (-1)^k times the
/// determinant with column k removed. This vector spans the null space when
/// the matrix has full row rank.
inline std::vector<Rational> signed_minors(const Matrix& m) {
  const std::size_t n = m.empty() ? 0 : m[0].size();
  std::vector<Rational> out(n);
  for (std::size_t skip = 0; skip < n; ++skip) {
    Matrix sub(m.size(), std::vector<Rational>());
    for (std::size_t r = 0; r < m.size(); ++r) {
      sub[r].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != skip) sub[r].push_back(m[r][c]);
    }
    Rational d = determinant(std::move(sub));
    out[skip] = (skip % 2 == 0) ? d : -d;
  }
  return out;
}

}  // namespace conicpen::detail
