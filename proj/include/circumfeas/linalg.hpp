#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "circumfeas/errors.hpp"
#include "circumfeas/tolerance.hpp"
#include "circumfeas/vec.hpp"

namespace circumfeas {

// Solve G t = rhs by Gaussian elimination with full pivoting, G dense
// symmetric k x k (k <= 16 here, so direct elimination is exact enough and
// needs no library). Returns nullopt when a pivot falls below
// eps_degen * max(1, largest initial diagonal), i.e. rank deficiency.
inline std::optional<std::vector<double>> try_solve_dense(
    std::vector<std::vector<double>> g, std::vector<double> rhs, double eps_degen) {
  const size_t k = rhs.size();
  // rank test is relative to the matrix scale, not absolute: the iteration
  // operators are scale-equivariant for cones, so a triple shrunk by 1e-8
  // must factor exactly as well as the unit-scale one
  double scale_ref = 0.0;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) scale_ref = std::max(scale_ref, std::abs(g[i][j]));
  if (scale_ref == 0.0) return std::nullopt;
  std::vector<size_t> col(k);
  for (size_t i = 0; i < k; ++i) col[i] = i;

  for (size_t step = 0; step < k; ++step) {
    // full pivot search over the remaining block
    size_t pr = step, pc = step;
    double best = -1.0;
    for (size_t r = step; r < k; ++r)
      for (size_t c = step; c < k; ++c)
        if (std::abs(g[r][c]) > best) { best = std::abs(g[r][c]); pr = r; pc = c; }
    if (best <= eps_degen * scale_ref) return std::nullopt;
    std::swap(g[step], g[pr]);
    std::swap(rhs[step], rhs[pr]);
    if (pc != step) {
      for (size_t r = 0; r < k; ++r) std::swap(g[r][step], g[r][pc]);
      std::swap(col[step], col[pc]);
    }
    for (size_t r = step + 1; r < k; ++r) {
      double f = g[r][step] / g[step][step];
      if (f == 0.0) continue;
      for (size_t c = step; c < k; ++c) g[r][c] -= f * g[step][c];
      rhs[r] -= f * rhs[step];
    }
  }
  // back substitution, then undo the column permutation
  std::vector<double> y(k);
  for (size_t i = k; i-- > 0;) {
    double s = rhs[i];
    for (size_t c = i + 1; c < k; ++c) s -= g[i][c] * y[c];
    y[i] = s / g[i][i];
  }
  std::vector<double> t(k);
  for (size_t i = 0; i < k; ++i) t[col[i]] = y[i];
  return t;
}

// Coefficients t with sum_i t_i <b_i, b_j> = rhs_j. Nullopt if the basis is
// dependent at eps_degen. This is the kernel behind circumcenter, subspace
// projection, and the active-face least squares.
inline std::optional<std::vector<double>> try_solve_gram(
    const std::vector<Vec>& basis, const std::vector<double>& rhs, double eps_degen) {
  const size_t k = basis.size();
  if (rhs.size() != k)
    fail(ErrKind::DimensionMismatch, "gram solve: basis and rhs sizes differ");
  if (k == 0) return std::vector<double>{};
  std::vector<std::vector<double>> g(k, std::vector<double>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i; j < k; ++j) g[i][j] = g[j][i] = dot(basis[i], basis[j]);
  return try_solve_dense(std::move(g), rhs, eps_degen);
}

inline std::vector<double> solve_gram(const std::vector<Vec>& basis,
                                      const std::vector<double>& rhs,
                                      const Tolerance& tol) {
  auto t = try_solve_gram(basis, rhs, tol.eps_degen);
  if (!t) fail(ErrKind::RankDeficient, "basis vectors dependent at eps_degen");
  return *t;
}

}  // namespace circumfeas
