#pragma once

// Independent reference computations used only by tests. None of these call
// the gcd, resultant or root-finding code they are checking.

#include <vector>

#include "folab/poly.hpp"

namespace folab::testing {

/// Determinant by fraction-based Gaussian elimination.
inline Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Resultant of dense univariate coefficient vectors (index = power) through the Sylvester matrix.
inline Rat sylvester_resultant(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return Rat(1);
  std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  return determinant(s);
}

/// Coefficients of p(x0 = value, x1) in x1, for a bivariate p.
inline std::vector<Rat> specialize_dense(const Poly& p, const Rat& value) {
  std::vector<Rat> c;
  for (const auto& [e, a] : p.terms()) {
    if (c.size() <= e[1]) c.resize(e[1] + 1, Rat(0));
    c[e[1]] += a * rat_pow(value, e[0]);
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

/// Pointwise check p == q at a handful of rational points.
inline bool agree_at_points(const Poly& p, const Poly& q, const std::vector<std::vector<Rat>>& pts) {
  for (const auto& pt : pts)
    if (evaluate(p, pt) != evaluate(q, pt)) return false;
  return true;
}

/// Ground truth for the reduced-singularity test from known eigenvalues.
inline bool reduced_from_eigenvalues(const Rat& l1, const Rat& l2) {
  if (l1 == 0 && l2 == 0) return false;
  if (l1 == 0 || l2 == 0) return true;
  return (l1 / l2) < 0;
}

}  // namespace folab::testing
