#pragma once

#include <optional>
#include <vector>

#include "folab/rational.hpp"

namespace folab {

/// Dense exact Gauss-Jordan elimination. Returns one solution of A x = b with
/// every free variable set to zero, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw Error(ErrorKind::InvalidArgument, "right-hand side has wrong length");
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rat inv = 1 / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (a[r][k] != 0) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace folab
