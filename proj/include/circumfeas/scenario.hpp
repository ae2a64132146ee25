#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circumfeas/rng.hpp"
#include "circumfeas/sets.hpp"
#include "circumfeas/sphere.hpp"
#include "circumfeas/tolerance.hpp"

namespace circumfeas {

struct Expectation {
  bool finite = true;                 // should the run terminate Feasible?
  std::optional<int> max_steps;       // iteration bound, when one is claimed
};

// A self-contained problem instance: the pair of sets, where to start, and
// what the run is expected to do.
struct Scenario {
  std::string name;
  ConvexSet set_a;
  ConvexSet set_b;
  std::vector<Vec> initial_points;
  Tolerance tol;
  int max_iters = kDefaultMaxIters;
  std::optional<Expectation> expected;
};

inline void validate_scenario(const Scenario& s) {
  s.tol.validate();
  validate_set(s.set_a, s.tol);
  validate_set(s.set_b, s.tol);
  if (s.max_iters < 1) fail(ErrKind::DimensionMismatch, "max_iters must be at least 1");
  size_t da = set_dim(s.set_a);
  size_t db = set_dim(s.set_b);
  if (da != 0 && db != 0 && da != db)
    fail(ErrKind::DimensionMismatch, "scenario sets have different dimensions");
  size_t d = da != 0 ? da : db;
  for (const Vec& p : s.initial_points) {
    check_finite(p, "initial point");
    if (d != 0 && p.size() != d)
      fail(ErrKind::DimensionMismatch, "initial point dimension differs from the sets");
  }
}

// Lift a planar polyhedron to ambient_dim coordinates: the original
// constraints act on the first two coordinates and the remaining
// subspace_dim directions are unconstrained. Iterating on the lifted pair
// must leave those extra coordinates alone, which is what the direct-sum
// tests check.
inline Polyhedron make_wedge_direct_sum(const Polyhedron& poly2d, int subspace_dim,
                                        int ambient_dim) {
  if (ambient_dim < 3 || subspace_dim != ambient_dim - 2)
    fail(ErrKind::DimensionMismatch,
         "direct sum needs ambient_dim >= 3 and subspace_dim = ambient_dim - 2");
  Polyhedron out;
  for (const HalfSpace& h : poly2d.halfspaces) {
    if (h.a.size() != 2)
      fail(ErrKind::DimensionMismatch, "make_wedge_direct_sum needs a planar polyhedron");
    Vec a = zeros(static_cast<size_t>(ambient_dim));
    a[0] = h.a[0];
    a[1] = h.a[1];
    out.halfspaces.push_back(HalfSpace{std::move(a), h.b});
  }
  return out;
}

// The R3 cone pair on which the circumcenter iteration provably never lands
// in the intersection in finitely many steps (it converges to the apex
// instead). The start (1, 0.5, 0) is a generic member of the family
// (x1, x2, 0) with 0 < |x2| < x1 that exhibits the behavior.
inline Scenario example_counterexample() {
  Scenario s;
  s.name = "counterexample-r3";
  s.set_a = ConeV{{Vec{3, 0, 3}, Vec{0, 1, 3}, Vec{0, -1, 3}, Vec{-3, 0, -2}}};
  s.set_b = ConeV{{Vec{1, 3, 0}, Vec{1, -3, 0}, Vec{-3, 0, -1}}};
  s.initial_points = {Vec{1, 0.5, 0}};
  s.max_iters = 100;
  s.expected = Expectation{false, std::nullopt};
  return s;
}

// Both octants of a rotated pair; a small proper-cone instance handy for the
// spherical method.
inline Scenario octant_pair_r3() {
  Scenario s;
  s.name = "octant-pair-r3";
  s.set_a = ConeV{{Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}}};
  s.set_b = ConeV{{Vec{1, 0, 0}, Vec{0, 1, 1}, Vec{1, 1, 3}}};
  s.initial_points = {Vec{2, -0.5, 0.5}, Vec{0.3, 1.4, -0.2}};
  s.max_iters = 25;
  s.expected = Expectation{true, std::nullopt};
  return s;
}

// Two planar cones as angle sectors sharing the direction at base_angle, so
// the intersection always contains a ray. Sector half-widths stay below
// pi/2, keeping each cone the convex hull of its two extreme rays.
inline Scenario random_cone_pair_r2(std::uint64_t seed) {
  Rng rng(seed);
  double base = rng.uniform(0.0, 2.0 * std::acos(-1.0));
  auto sector = [&](double lo, double hi) {
    return ConeV{{Vec{std::cos(base + lo), std::sin(base + lo)},
                  Vec{std::cos(base + hi), std::sin(base + hi)}}};
  };
  Scenario s;
  s.name = "cone-pair-r2-" + std::to_string(seed);
  s.set_a = sector(-rng.uniform(0.05, 1.4), rng.uniform(0.05, 1.4));
  s.set_b = sector(-rng.uniform(0.05, 1.4), rng.uniform(0.05, 1.4));
  for (int i = 0; i < 10; ++i)
    s.initial_points.push_back(Vec{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
  s.max_iters = 10;
  s.expected = Expectation{true, 3};
  return s;
}

// Two planar polyhedra that both strictly contain a shared anchor point, so
// the intersection has interior and the iteration has somewhere to land.
inline Scenario random_polyhedra_r2(std::uint64_t seed) {
  Rng rng(seed);
  Vec anchor{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  auto poly = [&]() {
    Polyhedron p;
    int m = rng.uniform_int(3, 5);
    for (int i = 0; i < m; ++i) {
      Vec a = rng.unit_vec(2);
      double b = dot(a, anchor) + rng.uniform(0.1, 1.5);
      p.halfspaces.push_back(HalfSpace{std::move(a), b});
    }
    return p;
  };
  Scenario s;
  s.name = "polyhedra-r2-" + std::to_string(seed);
  s.set_a = poly();
  s.set_b = poly();
  for (int i = 0; i < 2; ++i)
    s.initial_points.push_back(Vec{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)});
  s.max_iters = kDefaultMaxIters;
  s.expected = Expectation{true, std::nullopt};
  return s;
}

namespace detail {

// Generators strictly inside the half-space around axis, which makes the
// cone pointed by construction; rejection keeps it solid. The axis itself is
// a generator of both cones, so the pair always shares a ray.
inline ConeV random_proper_cone_r3(Rng& rng, const Vec& axis) {
  for (;;) {
    ConeV cone;
    cone.generators.push_back(axis);
    int k = rng.uniform_int(3, 6);
    for (int i = 0; i < k; ++i) {
      Vec t = rng.gaussian_vec(3);
      axpy(-dot(t, axis), axis, t);  // tangent component only
      double lt = norm(t);
      if (lt < 1e-9) { --i; continue; }
      double ang = rng.uniform(0.15, 1.1);  // stay well inside the half-space
      Vec g = scale(std::cos(ang), axis);
      axpy(std::sin(ang) / lt, t, g);
      cone.generators.push_back(std::move(g));
    }
    double best = 0.0;
    const auto& gs = cone.generators;
    for (size_t i = 0; i < gs.size(); ++i)
      for (size_t j = i + 1; j < gs.size(); ++j)
        for (size_t l = j + 1; l < gs.size(); ++l)
          best = std::max(best, std::abs(det3(gs[i], gs[j], gs[l])));
    if (best > 1e-3) return cone;
  }
}

}  // namespace detail

// A proper R3 cone pair with a shared interior ray, plus starts drawn from
// the finite-termination zone: points of the spherical intersection nudged
// by less than the zone radius and then scaled off the sphere.
inline Scenario random_proper_cone_pair_r3(std::uint64_t seed) {
  Rng rng(seed);
  Tolerance tol;
  Scenario s;
  s.name = "proper-cone-pair-r3-" + std::to_string(seed);
  for (;;) {
    Vec axis = rng.unit_vec(3);
    ConeV a = detail::random_proper_cone_r3(rng, axis);
    ConeV b = detail::random_proper_cone_r3(rng, axis);
    try {
      SphericalPolytope ap = build_spherical_polytope(a, tol);
      SphericalPolytope bp = build_spherical_polytope(b, tol);
      double r = zone_radius(ap, bp, tol);
      SphericalPolytope tp = intersect_polytopes(ap, bp);
      s.set_a = a;
      s.set_b = b;
      s.initial_points.clear();
      for (int i = 0; i < 10; ++i) {
        const Vec& v = tp.vertices[static_cast<size_t>(i) % tp.vertices.size()];
        Vec t = rng.gaussian_vec(3);
        axpy(-dot(t, v), v, t);
        double lt = norm(t);
        if (lt < 1e-9) { --i; continue; }
        double ang = rng.uniform(0.0, 0.9) * std::min(r, std::acos(-1.0) / 4.0);
        Vec p = scale(std::cos(ang), v);
        axpy(std::sin(ang) / lt, t, p);
        s.initial_points.push_back(scale(rng.uniform(0.25, 4.0), p));
      }
      break;
    } catch (const Error&) {
      continue;  // degenerate draw; take a fresh pair
    }
  }
  s.max_iters = 10;
  s.expected = Expectation{true, 3};
  return s;
}

// Registry of named instances plus seeded generator families. Generator
// names take the seed from the caller; fixed instances ignore it.
inline std::vector<std::string> builtin_scenario_names() {
  return {"counterexample-r3", "octant-pair-r3", "random-cone-pair-r2", "random-polyhedra-r2",
          "random-proper-cone-pair-r3"};
}

inline std::optional<Scenario> find_scenario(const std::string& name, std::uint64_t seed) {
  if (name == "counterexample-r3") return example_counterexample();
  if (name == "octant-pair-r3") return octant_pair_r3();
  if (name == "random-cone-pair-r2") return random_cone_pair_r2(seed);
  if (name == "random-polyhedra-r2") return random_polyhedra_r2(seed);
  if (name == "random-proper-cone-pair-r3") return random_proper_cone_pair_r3(seed);
  return std::nullopt;
}

}  // namespace circumfeas
