#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "circumfeas/crm.hpp"
#include "circumfeas/sets.hpp"
#include "circumfeas/tolerance.hpp"
#include "circumfeas/vec.hpp"

namespace circumfeas {

// A unit vector in R3, the points of the sphere machinery. Kept as a plain
// Vec; validate_unit3 guards the public entry points.
using UnitVec3 = Vec;

inline void validate_unit3(const Vec& v, const Tolerance& tol, const char* what) {
  check_finite(v, what);
  if (v.size() != 3) fail(ErrKind::DimensionMismatch, std::string(what) + " must have dimension 3");
  if (std::abs(norm(v) - 1.0) > 1e4 * tol.eps_degen)
    fail(ErrKind::DimensionMismatch, std::string(what) + " must be unit length");
}

inline Vec cross(const Vec& u, const Vec& v) {
  return Vec{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline double det3(const Vec& a, const Vec& b, const Vec& c) { return dot(a, cross(b, c)); }

// arccos<x,y> computed through the half-chord so that tiny distances keep
// full relative accuracy (plain arccos loses ~8 digits near 0).
inline double geodesic_distance(const Vec& x, const Vec& y) {
  check_same_dim(x, y, "geodesic_distance");
  double d = dot(x, y);
  if (d >= 0.0)
    return 2.0 * std::asin(std::min(1.0, 0.5 * dist(x, y)));
  return std::acos(-1.0) - 2.0 * std::asin(std::min(1.0, 0.5 * norm(add(x, y))));
}

// Shorter arc of a great circle between two non-antipodal unit points.
struct GreatArc {
  UnitVec3 u, v;        // endpoints
  UnitVec3 plane_normal;  // unit normal of the arc's great-circle plane
};

// {u in S2 : <a_i, u> <= 0 for all normals}, with its vertex/edge skeleton.
struct SphericalPolytope {
  std::vector<UnitVec3> halfsphere_normals;
  std::vector<UnitVec3> vertices;
  std::vector<GreatArc> edges;
};

// Construction tolerance for facet/vertex classification at unit scale.
// Looser than eps_degen on purpose: cross products of desk-scale generators
// carry a few hundred ulps of noise.
constexpr double kSphereGeomTol = 1e-9;

inline Vec project_cone3(const ConeV& cone, const Vec& x, const Tolerance& tol) {
  return project(ConvexSet{cone}, x, tol);
}

inline UnitVec3 spherical_project(const ConeV& cone, const UnitVec3& x, const Tolerance& tol) {
  validate_unit3(x, tol, "spherical_project input");
  if (in_polar_cone(cone, x, tol))
    fail(ErrKind::InPolarCone, "projection hits the apex; spherical projection undefined");
  return normalized(project_cone3(cone, x, tol));
}

inline UnitVec3 spherical_reflect(const ConeV& cone, const UnitVec3& x, const Tolerance& tol) {
  validate_unit3(x, tol, "spherical_reflect input");
  if (in_polar_cone(cone, x, tol))
    fail(ErrKind::InPolarCone, "projection hits the apex; spherical reflection undefined");
  // cone reflections preserve the norm, so the output is already unit
  return reflect(ConvexSet{cone}, x, tol);
}

// Nearest point geodesically equidistant to three sphere points: the unit
// normal of the plane through them, signed toward the inputs. Coincident
// inputs collapse first; exactly two distinct points get their geodesic
// midpoint.
inline UnitVec3 sphere_center(const UnitVec3& x, const UnitVec3& y, const UnitVec3& z,
                              const Tolerance& tol) {
  validate_unit3(x, tol, "sphere_center x");
  validate_unit3(y, tol, "sphere_center y");
  validate_unit3(z, tol, "sphere_center z");
  std::vector<Vec> reps = dedup_points({x, y, z}, tol.eps_degen);
  if (reps.size() == 1) return reps[0];
  if (reps.size() == 2) {
    Vec s = add(reps[0], reps[1]);
    if (norm(s) <= tol.eps_degen)
      fail(ErrKind::AntipodalPair, "midpoint of antipodal points is not unique");
    return normalized(s);
  }
  if (std::abs(det3(reps[0], reps[1], reps[2])) <= tol.eps_degen)
    fail(ErrKind::CommonGreatCircle, "three distinct points on a common great circle");
  Vec n = cross(sub(reps[0], reps[1]), sub(reps[1], reps[2]));
  Vec c = normalized(n);
  // the minimality clause picks the candidate on the inputs' side
  if (dot(c, reps[0]) < 0.0) c = scale(-1.0, c);
  return c;
}

// Sphere-center of the iterate and its two spherical reflections. Preconditions
// mirror the planar operator: undefined on the operator kernel and whenever a
// projection collapses to the apex.
inline UnitVec3 srm_operator(const ConeV& a, const ConeV& b, const UnitVec3& x,
                             const Tolerance& tol) {
  validate_unit3(x, tol, "srm_operator input");
  if (in_kernel_ct(ConvexSet{a}, ConvexSet{b}, x, tol))
    fail(ErrKind::OperatorUndefined, "srm_operator undefined on the operator kernel");
  UnitVec3 y = spherical_reflect(a, x, tol);
  UnitVec3 z = spherical_reflect(b, y, tol);
  return sphere_center(x, y, z, tol);
}

namespace detail {

inline bool parallel_unit(const Vec& a, const Vec& b) { return dist(a, b) <= kSphereGeomTol; }

inline std::vector<UnitVec3> enumerate_vertices(const std::vector<UnitVec3>& normals) {
  std::vector<UnitVec3> verts;
  for (size_t i = 0; i < normals.size(); ++i)
    for (size_t j = i + 1; j < normals.size(); ++j) {
      Vec n = cross(normals[i], normals[j]);
      double ln = norm(n);
      if (ln <= 1e-12) continue;
      for (double sgn : {1.0, -1.0}) {
        Vec v = scale(sgn / ln, n);
        bool ok = true;
        for (const Vec& a : normals)
          if (dot(a, v) > kSphereGeomTol) { ok = false; break; }
        if (!ok) continue;
        bool dup = false;
        for (const Vec& w : verts)
          if (parallel_unit(v, w)) { dup = true; break; }
        if (!dup) verts.push_back(std::move(v));
      }
    }
  return verts;
}

inline std::vector<GreatArc> enumerate_edges(const std::vector<UnitVec3>& normals,
                                             const std::vector<UnitVec3>& verts) {
  std::vector<GreatArc> edges;
  for (const Vec& a : normals) {
    std::vector<const Vec*> active;
    for (const Vec& v : verts)
      if (std::abs(dot(a, v)) <= kSphereGeomTol) active.push_back(&v);
    if (active.size() < 2) continue;
    // the facet's trace is a single arc; its endpoints are the farthest pair
    const Vec* bu = nullptr; const Vec* bw = nullptr;
    double bd = -1.0;
    for (size_t i = 0; i < active.size(); ++i)
      for (size_t j = i + 1; j < active.size(); ++j) {
        double d = geodesic_distance(*active[i], *active[j]);
        if (d > bd) { bd = d; bu = active[i]; bw = active[j]; }
      }
    Vec n = cross(*bu, *bw);
    if (norm(n) <= 1e-12) continue;  // degenerate (antipodal endpoints)
    edges.push_back(GreatArc{*bu, *bw, normalized(n)});
  }
  return edges;
}

}  // namespace detail

// V-rep cone (proper: pointed and full-dimensional) to its spherical trace
// with facet/vertex/edge structure. Facet planes come from generator pairs
// with every generator on one side; vertices are the extreme generators,
// recovered as feasible facet-plane intersections.
inline SphericalPolytope build_spherical_polytope(const ConeV& cone, const Tolerance& tol) {
  if (cone.generators.empty() || cone.generators[0].size() != 3)
    fail(ErrKind::DimensionMismatch, "spherical polytope needs a cone in R3");
  std::vector<UnitVec3> gens;
  for (const Vec& g : cone.generators) {
    check_finite(g, "cone generator");
    if (norm(g) == 0.0) fail(ErrKind::DimensionMismatch, "cone generator is zero");
    Vec gu = normalized(g);
    bool dup = false;
    for (const Vec& h : gens)
      if (detail::parallel_unit(gu, h)) { dup = true; break; }
    if (!dup) gens.push_back(std::move(gu));
  }

  // solid: some generator triple spans R3
  double best_det = 0.0;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      for (size_t k = j + 1; k < gens.size(); ++k)
        best_det = std::max(best_det, std::abs(det3(gens[i], gens[j], gens[k])));
  if (best_det <= tol.eps_degen)
    fail(ErrKind::NotProper, "cone is not solid (generators span less than R3)");

  // pointed: a cone containing a line contains the negation of one of its
  // own generators, so membership of each -g is a complete desk test
  for (const Vec& g : gens)
    if (membership(ConvexSet{cone}, scale(-1.0, g), tol))
      fail(ErrKind::NotProper, "cone contains a line (not pointed)");

  SphericalPolytope poly;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      Vec n = cross(gens[i], gens[j]);
      double ln = norm(n);
      if (ln <= 1e-12) continue;
      Vec nu = scale(1.0 / ln, n);
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (const Vec& g : gens) {
        double s = dot(nu, g);
        hi = std::max(hi, s);
        lo = std::min(lo, s);
      }
      Vec a;
      if (hi <= kSphereGeomTol) a = nu;
      else if (lo >= -kSphereGeomTol) a = scale(-1.0, nu);
      else continue;  // plane separates the generators: not a facet
      bool dup = false;
      for (const Vec& b : poly.halfsphere_normals)
        if (detail::parallel_unit(a, b)) { dup = true; break; }
      if (!dup) poly.halfsphere_normals.push_back(std::move(a));
    }
  if (poly.halfsphere_normals.size() < 3)
    fail(ErrKind::NotProper, "facet enumeration found fewer than 3 supporting planes");
  poly.vertices = detail::enumerate_vertices(poly.halfsphere_normals);
  if (poly.vertices.size() < 3)
    fail(ErrKind::NotProper, "vertex enumeration found fewer than 3 extreme directions");
  poly.edges = detail::enumerate_edges(poly.halfsphere_normals, poly.vertices);
  return poly;
}

// Geodesic distance from a point to an arc: foot-of-perpendicular distance to
// the great circle when the foot lands inside the arc, else the nearer
// endpoint.
inline double point_arc_distance(const UnitVec3& p, const GreatArc& arc) {
  double s = dot(p, arc.plane_normal);
  Vec f = p;
  axpy(-s, arc.plane_normal, f);
  double lf = norm(f);
  if (lf <= 1e-14) return std::acos(-1.0) / 2.0;  // pole of the circle
  Vec fu = scale(1.0 / lf, f);
  bool inside = dot(cross(arc.u, fu), arc.plane_normal) >= -1e-12 &&
                dot(cross(fu, arc.v), arc.plane_normal) >= -1e-12;
  if (inside) return std::asin(std::min(1.0, std::abs(s)));
  return std::min(geodesic_distance(p, arc.u), geodesic_distance(p, arc.v));
}

inline bool polytope_contains(const SphericalPolytope& poly, const UnitVec3& p) {
  for (const Vec& a : poly.halfsphere_normals)
    if (dot(a, p) > kSphereGeomTol) return false;
  return true;
}

inline double distance_to_polytope(const SphericalPolytope& poly, const UnitVec3& p) {
  if (polytope_contains(poly, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const GreatArc& e : poly.edges) best = std::min(best, point_arc_distance(p, e));
  for (const Vec& v : poly.vertices) best = std::min(best, geodesic_distance(p, v));
  return best;
}

// The two polytopes' intersection, rebuilt from the union of their supporting
// half-spheres.
inline SphericalPolytope intersect_polytopes(const SphericalPolytope& ap,
                                             const SphericalPolytope& bp) {
  SphericalPolytope t;
  for (const auto* src : {&ap, &bp})
    for (const Vec& a : src->halfsphere_normals) {
      bool dup = false;
      for (const Vec& b : t.halfsphere_normals)
        if (detail::parallel_unit(a, b)) { dup = true; break; }
      if (!dup) t.halfsphere_normals.push_back(a);
    }
  t.vertices = detail::enumerate_vertices(t.halfsphere_normals);
  if (t.vertices.empty())
    fail(ErrKind::EmptyIntersection, "spherical polytopes do not meet");
  t.edges = detail::enumerate_edges(t.halfsphere_normals, t.vertices);
  return t;
}

// Largest guaranteed clearance of the intersection's vertices from the edges
// of either polytope that do not pass through them: per vertex, the minimum
// distance to its inactive arcs; overall, the minimum over vertices.
inline double zone_radius(const SphericalPolytope& ap, const SphericalPolytope& bp,
                          const Tolerance& tol) {
  SphericalPolytope t = intersect_polytopes(ap, bp);
  std::vector<const GreatArc*> arcs;
  for (const GreatArc& e : ap.edges) arcs.push_back(&e);
  for (const GreatArc& e : bp.edges) arcs.push_back(&e);
  double r = std::numeric_limits<double>::infinity();
  for (const Vec& v : t.vertices)
    for (const GreatArc* g : arcs) {
      double d = point_arc_distance(v, *g);
      if (d <= std::max(tol.eps_degen, 1e-10)) continue;  // arc passes through v
      r = std::min(r, d);
    }
  return r;
}

// Membership in the finite-termination zone: the origin, the operator kernel,
// and the cone over the geodesic neighborhood of the intersection of radius
// zone_radius. Queries farther than pi/2 from the intersection are simply
// outside (the radius is small; far-field exactness is not needed).
inline bool in_zone(const ConeV& a, const ConeV& b, const Vec& x, const Tolerance& tol) {
  check_finite(x, "in_zone query");
  if (x.size() != 3) fail(ErrKind::DimensionMismatch, "in_zone needs a point in R3");
  if (norm(x) <= tol.eps_degen) return true;
  if (in_kernel_ct(ConvexSet{a}, ConvexSet{b}, x, tol)) return true;
  SphericalPolytope ap = build_spherical_polytope(a, tol);
  SphericalPolytope bp = build_spherical_polytope(b, tol);
  double r = zone_radius(ap, bp, tol);
  SphericalPolytope t = intersect_polytopes(ap, bp);
  double d = distance_to_polytope(t, normalized(x));
  if (d > std::acos(-1.0) / 2.0) return false;
  return d <= r;
}

}  // namespace circumfeas
