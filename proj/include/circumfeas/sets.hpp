#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "circumfeas/linalg.hpp"
#include "circumfeas/tolerance.hpp"
#include "circumfeas/vec.hpp"

namespace circumfeas {

// ---- set representations ----

struct HalfSpace {  // {x : <a,x> <= b}
  Vec a;
  double b = 0.0;
};

struct Polyhedron {  // intersection of half-spaces
  std::vector<HalfSpace> halfspaces;
};

struct ConeV {  // conic hull of generators
  std::vector<Vec> generators;
};

struct LinearSubspace {  // span of basis; empty basis means {0}
  std::vector<Vec> basis;
};

struct Ray {  // {t * direction : t >= 0}
  Vec direction;
};

using ConvexSet = std::variant<HalfSpace, Polyhedron, ConeV, LinearSubspace, Ray>;

inline size_t set_dim(const ConvexSet& set) {
  // 0 when the representation does not pin the ambient dimension ({0} subspace)
  return std::visit(
      [](const auto& s) -> size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) return s.a.size();
        else if constexpr (std::is_same_v<T, Polyhedron>)
          return s.halfspaces.empty() ? 0 : s.halfspaces[0].a.size();
        else if constexpr (std::is_same_v<T, ConeV>)
          return s.generators.empty() ? 0 : s.generators[0].size();
        else if constexpr (std::is_same_v<T, LinearSubspace>)
          return s.basis.empty() ? 0 : s.basis[0].size();
        else return s.direction.size();
      },
      set);
}

inline void validate_set(const ConvexSet& set, const Tolerance& tol) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          check_finite(s.a, "halfspace normal");
          if (norm(s.a) == 0.0) fail(ErrKind::DimensionMismatch, "halfspace normal is zero");
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          if (s.halfspaces.empty())
            fail(ErrKind::DimensionMismatch, "polyhedron needs at least one halfspace");
          for (const auto& h : s.halfspaces) {
            check_finite(h.a, "halfspace normal");
            check_same_dim(s.halfspaces[0].a, h.a, "polyhedron");
            if (norm(h.a) == 0.0) fail(ErrKind::DimensionMismatch, "halfspace normal is zero");
          }
        } else if constexpr (std::is_same_v<T, ConeV>) {
          if (s.generators.empty())
            fail(ErrKind::DimensionMismatch, "cone needs at least one generator");
          for (const auto& g : s.generators) {
            check_finite(g, "cone generator");
            check_same_dim(s.generators[0], g, "cone");
            if (norm(g) == 0.0) fail(ErrKind::DimensionMismatch, "cone generator is zero");
          }
        } else if constexpr (std::is_same_v<T, LinearSubspace>) {
          for (const auto& v : s.basis) {
            check_finite(v, "subspace basis vector");
            check_same_dim(s.basis[0], v, "subspace");
          }
          if (!s.basis.empty()) {
            // independence check: Gram elimination must not hit a tiny pivot
            std::vector<double> rhs(s.basis.size(), 0.0);
            if (!try_solve_gram(s.basis, rhs, tol.eps_degen))
              fail(ErrKind::RankDeficient, "subspace basis is dependent at eps_degen");
          }
        } else {
          check_finite(s.direction, "ray direction");
          if (norm(s.direction) == 0.0)
            fail(ErrKind::DimensionMismatch, "ray direction is zero");
        }
      },
      set);
}

// ---- subset enumeration (desk scale: m <= ~12, k <= dim) ----

template <class F>
inline void for_each_index_subset(size_t m, size_t kmax, F&& body) {
  std::vector<size_t> idx;
  for (size_t k = 1; k <= std::min(m, kmax); ++k) {
    idx.resize(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      body(idx);
      // advance to the next k-combination of {0..m-1}
      size_t i = k;
      while (i-- > 0) {
        if (idx[i] + (k - i) < m) {
          ++idx[i];
          for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) { i = SIZE_MAX; break; }
      }
      if (i == SIZE_MAX) break;
    }
  }
}

// ---- projections ----

namespace detail {

inline Vec project_halfspace(const HalfSpace& h, const Vec& x) {
  check_same_dim(h.a, x, "project");
  double s = dot(h.a, x) - h.b;
  if (s <= 0.0) return x;
  Vec p = x;
  axpy(-s / norm2(h.a), h.a, p);
  return p;
}

inline Vec project_ray(const Ray& r, const Vec& x) {
  check_same_dim(r.direction, x, "project");
  double t = dot(x, r.direction) / norm2(r.direction);
  if (t <= 0.0) return zeros(x.size());
  return scale(t, r.direction);
}

inline Vec project_subspace(const LinearSubspace& s, const Vec& x, const Tolerance& tol) {
  if (s.basis.empty()) return zeros(x.size());
  check_same_dim(s.basis[0], x, "project");
  std::vector<double> rhs(s.basis.size());
  for (size_t i = 0; i < s.basis.size(); ++i) rhs[i] = dot(s.basis[i], x);
  std::vector<double> t = solve_gram(s.basis, rhs, tol);
  Vec p = zeros(x.size());
  for (size_t i = 0; i < s.basis.size(); ++i) axpy(t[i], s.basis[i], p);
  return p;
}

// Exhaustive face enumeration. The true projection lies on the nonnegative
// span of some linearly independent generator subset (conic Caratheodory), so
// solving the least-squares system for every subset and keeping certified
// candidates is exact at desk scale. The certificate is the optimality
// characterization: p in cone, <g, x-p> <= 0 for all generators, <p, x-p> = 0.
inline Vec project_cone(const ConeV& cone, const Vec& x, const Tolerance& tol) {
  check_same_dim(cone.generators[0], x, "project");
  const size_t n = x.size();
  const size_t m = cone.generators.size();
  const double smax = std::max(1.0, norm(x));
  const double cert = std::max(tol.eps_feas, 1e-9) * smax;
  const double mu_slack = 1e-9;

  std::vector<Vec> candidates;
  candidates.push_back(zeros(n));  // apex
  for_each_index_subset(m, n, [&](const std::vector<size_t>& S) {
    std::vector<Vec> gens;
    std::vector<double> rhs;
    for (size_t i : S) {
      gens.push_back(cone.generators[i]);
      rhs.push_back(dot(cone.generators[i], x));
    }
    auto mu = try_solve_gram(gens, rhs, tol.eps_degen);
    if (!mu) return;  // dependent subset; an independent one covers this face
    for (double v : *mu)
      if (v < -mu_slack) return;
    Vec p = zeros(n);
    for (size_t i = 0; i < gens.size(); ++i)
      axpy(std::max((*mu)[i], 0.0), gens[i], p);  // clamp keeps p in the cone exactly
    candidates.push_back(std::move(p));
  });

  const Vec* best = nullptr;
  double best_d = 0.0;
  for (const Vec& p : candidates) {
    Vec r = sub(x, p);
    bool ok = std::abs(dot(p, r)) <= cert * smax;
    if (ok)
      for (const Vec& g : cone.generators)
        if (dot(g, r) > cert * std::max(1.0, norm(g))) { ok = false; break; }
    if (!ok) continue;
    double d = norm(r);
    if (!best || d < best_d) { best = &p; best_d = d; }
  }
  if (!best)
    fail(ErrKind::NumericalFailure, "no cone projection candidate passed certification");
  return *best;
}

// Active-set enumeration over constraint subsets. A candidate is the equality
// projection onto the subset's affine slice; KKT holds when its multipliers
// are nonnegative and the point is feasible, and the nearest such candidate
// is the projection. Emptiness surfaces here (lazily) as no feasible
// candidate at all.
inline Vec project_polyhedron(const Polyhedron& poly, const Vec& x, const Tolerance& tol) {
  check_same_dim(poly.halfspaces[0].a, x, "project");
  const size_t n = x.size();
  const size_t m = poly.halfspaces.size();
  const double smax = std::max(1.0, norm(x));
  const double cert = std::max(tol.eps_feas, 1e-9) * smax;
  const double lam_slack = 1e-9;

  auto feasible = [&](const Vec& p) {
    for (const auto& h : poly.halfspaces)
      if (dot(h.a, p) - h.b > cert * std::max(1.0, norm(h.a))) return false;
    return true;
  };
  if (feasible(x)) return x;

  std::optional<Vec> best;
  double best_d = 0.0;
  for_each_index_subset(m, n, [&](const std::vector<size_t>& S) {
    std::vector<Vec> normals;
    std::vector<double> slack;
    for (size_t i : S) {
      normals.push_back(poly.halfspaces[i].a);
      slack.push_back(dot(poly.halfspaces[i].a, x) - poly.halfspaces[i].b);
    }
    auto lam = try_solve_gram(normals, slack, tol.eps_degen);
    if (!lam) return;
    for (double v : *lam)
      if (v < -lam_slack) return;
    Vec p = x;
    for (size_t i = 0; i < normals.size(); ++i) axpy(-(*lam)[i], normals[i], p);
    if (!feasible(p)) return;
    double d = dist(x, p);
    if (!best || d < best_d) { best = std::move(p); best_d = d; }
  });
  if (!best)
    fail(ErrKind::InfeasibleSet,
         "no feasible projection candidate; polyhedron is empty at desk scale");
  return *best;
}

}  // namespace detail

inline Vec project(const ConvexSet& set, const Vec& x, const Tolerance& tol) {
  check_finite(x, "projection input");
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) return detail::project_halfspace(s, x);
        else if constexpr (std::is_same_v<T, Polyhedron>) return detail::project_polyhedron(s, x, tol);
        else if constexpr (std::is_same_v<T, ConeV>) return detail::project_cone(s, x, tol);
        else if constexpr (std::is_same_v<T, LinearSubspace>) return detail::project_subspace(s, x, tol);
        else return detail::project_ray(s, x);
      },
      set);
}

inline Vec reflect(const ConvexSet& set, const Vec& x, const Tolerance& tol) {
  Vec p = project(set, x, tol);
  Vec r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = 2.0 * p[i] - x[i];
  return r;
}

inline bool membership(const ConvexSet& set, const Vec& x, const Tolerance& tol) {
  return dist(x, project(set, x, tol)) <= tol.eps_feas;
}

// Polar-cone membership: against generators is enough for a V-rep cone since
// every cone element is a nonnegative combination of them.
inline bool in_polar_cone(const ConeV& cone, const Vec& x, const Tolerance& tol) {
  check_same_dim(cone.generators[0], x, "in_polar_cone");
  for (const Vec& g : cone.generators)
    if (dot(x, g) > tol.eps_feas * std::max(1.0, norm(x)) * std::max(1.0, norm(g)))
      return false;
  return true;
}

// Radius within which the polyhedron agrees with its tangent cone at x: half
// the minimal normalized slack over inactive constraints (strict bound made
// concrete by halving). All constraints active means any radius works;
// +infinity is that sentinel.
inline double local_cone_radius(const Polyhedron& poly, const Vec& x, const Tolerance& tol) {
  check_same_dim(poly.halfspaces[0].a, x, "local_cone_radius");
  if (!membership(ConvexSet{poly}, x, tol))
    fail(ErrKind::PointNotInSet, "local_cone_radius requires a member point");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces) {
    double gap = std::abs(dot(h.a, x) - h.b) / norm(h.a);
    bool active = gap <= tol.eps_feas * std::max(1.0, norm(x));
    if (!active) best = std::min(best, gap);
  }
  return best == std::numeric_limits<double>::infinity() ? best : 0.5 * best;
}

}  // namespace circumfeas
