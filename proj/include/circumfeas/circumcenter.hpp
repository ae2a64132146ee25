#pragma once

#include <string>
#include <vector>

#include "circumfeas/linalg.hpp"
#include "circumfeas/tolerance.hpp"
#include "circumfeas/vec.hpp"

namespace circumfeas {

// Points that remain after collapsing near-coincident inputs, in first-seen
// order. Shared with the iteration layer, which tags its case split off the
// same dedup so the two can never disagree.
inline std::vector<Vec> dedup_points(const std::vector<Vec>& points, double eps_degen) {
  std::vector<Vec> reps;
  for (const Vec& p : points) {
    bool seen = false;
    for (const Vec& q : reps)
      if (coincide(p, q, eps_degen)) { seen = true; break; }
    if (!seen) reps.push_back(p);
  }
  return reps;
}

// Generalized circumcenter: the point of aff{p_i} equidistant to all inputs.
// Coincident inputs collapse first, so the degenerate cardinalities come out
// of one code path: a single point returns itself, two points return their
// exact midpoint, k >= 3 solve <c - p0, p_j - p0> = ||p_j - p0||^2 / 2 in the
// difference basis.
inline Vec circumcenter(const std::vector<Vec>& points, const Tolerance& tol) {
  if (points.empty())
    fail(ErrKind::DegenerateConfiguration, "circumcenter of no points");
  const size_t dim = points[0].size();
  for (const Vec& p : points) check_same_dim(points[0], p, "circumcenter");
  if (points.size() > dim + 1)
    fail(ErrKind::DegenerateConfiguration,
         "more than dim+1 points cannot be affinely independent");

  std::vector<Vec> reps = dedup_points(points, tol.eps_degen);
  if (reps.size() == 1) return reps[0];
  if (reps.size() == 2) return midpoint(reps[0], reps[1]);

  std::vector<Vec> basis;
  std::vector<double> rhs;
  for (size_t j = 1; j < reps.size(); ++j) {
    basis.push_back(sub(reps[j], reps[0]));
    rhs.push_back(0.5 * norm2(basis.back()));
  }
  auto t = try_solve_gram(basis, rhs, tol.eps_degen);
  if (!t)
    fail(ErrKind::DegenerateConfiguration,
         "distinct points are affinely dependent; circumcenter undefined");
  Vec c = reps[0];
  for (size_t j = 0; j < basis.size(); ++j) axpy((*t)[j], basis[j], c);
  return c;
}

}  // namespace circumfeas
