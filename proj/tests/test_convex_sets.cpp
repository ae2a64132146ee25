#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "circumfeas/rng.hpp"
#include "circumfeas/sets.hpp"
#include "support/oracle.hpp"

using namespace circumfeas;

namespace {

const Tolerance kTol;

// the worked R3 cone pair used across the suite
ConeV cone_a() { return ConeV{{Vec{3, 0, 3}, Vec{0, 1, 3}, Vec{0, -1, 3}, Vec{-3, 0, -2}}}; }
ConeV cone_b() { return ConeV{{Vec{1, 3, 0}, Vec{1, -3, 0}, Vec{-3, 0, -1}}}; }

void require_close(const Vec& got, const Vec& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i)
    REQUIRE_THAT(got[i], Catch::Matchers::WithinAbs(want[i], tol));
}

}  // namespace

TEST_CASE("half-space projection and reflection closed forms", "[convex_sets]") {
  ConvexSet h = HalfSpace{Vec{1, 0}, 0.0};
  REQUIRE(project(h, Vec{-1, 5}, kTol) == Vec{-1, 5});  // interior point fixed
  require_close(project(h, Vec{2, 1}, kTol), Vec{0, 1}, 1e-14);
  require_close(reflect(ConvexSet{HalfSpace{Vec{0, 1}, 0.0}}, Vec{0, 2}, kTol), Vec{0, -2},
                1e-14);
}

TEST_CASE("cone projection matches hand-computed faces", "[convex_sets]") {
  // lands on the 2-generator face spanned by (3,0,3) and (0,+-1,3)
  require_close(project(ConvexSet{cone_a()}, Vec{1, 0.5, 0}, kTol), Vec{0.5, 0, 0.5}, 1e-10);
  // lands on the single-generator face along (1,-3,0)
  require_close(project(ConvexSet{cone_b()}, Vec{0, -0.5, 1}, kTol), Vec{0.15, -0.45, 0},
                1e-10);
  require_close(reflect(ConvexSet{cone_a()}, Vec{1, 0.5, 0}, kTol), Vec{0, -0.5, 1}, 1e-10);
}

TEST_CASE("membership distinguishes near and genuine members", "[convex_sets]") {
  REQUIRE_FALSE(membership(ConvexSet{cone_a()}, Vec{1, 0.5, 0}, kTol));
  REQUIRE(membership(ConvexSet{cone_b()}, Vec{1, 0.5, 0}, kTol));
  REQUIRE(membership(ConvexSet{HalfSpace{Vec{1, 0}, 0.0}}, Vec{0, 0}, kTol));
  Vec p = project(ConvexSet{cone_a()}, Vec{-2, 1, 0.3}, kTol);
  REQUIRE(membership(ConvexSet{cone_a()}, p, kTol));
}

TEST_CASE("polyhedron projection onto the negative quadrant", "[convex_sets]") {
  Polyhedron quad{{HalfSpace{Vec{1, 0}, 0.0}, HalfSpace{Vec{0, 1}, 0.0}}};
  require_close(project(ConvexSet{quad}, Vec{1, 1}, kTol), Vec{0, 0}, 1e-12);
  require_close(project(ConvexSet{quad}, Vec{-1, 3}, kTol), Vec{-1, 0}, 1e-12);
  REQUIRE(project(ConvexSet{quad}, Vec{-1, -2}, kTol) == Vec{-1, -2});
}

TEST_CASE("infeasible polyhedron is reported", "[convex_sets]") {
  Polyhedron empty{{HalfSpace{Vec{1.0}, 0.0}, HalfSpace{Vec{-1.0}, -1.0}}};  // x<=0 and x>=1
  REQUIRE_THROWS_AS(project(ConvexSet{empty}, Vec{0.5}, kTol), Error);
  try {
    project(ConvexSet{empty}, Vec{0.5}, kTol);
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::InfeasibleSet);
  }
}

TEST_CASE("ray and subspace projections", "[convex_sets]") {
  require_close(project(ConvexSet{Ray{Vec{1, 0}}}, Vec{0, -1}, kTol), Vec{0, 0}, 1e-14);
  require_close(project(ConvexSet{Ray{Vec{1, 0}}}, Vec{3, 4}, kTol), Vec{3, 0}, 1e-14);
  require_close(project(ConvexSet{LinearSubspace{{Vec{1, 1}}}}, Vec{2, 0}, kTol), Vec{1, 1},
                1e-12);
  // empty basis is the origin
  REQUIRE(project(ConvexSet{LinearSubspace{{}}}, Vec{5, -3}, kTol) == Vec{0, 0});
}

TEST_CASE("polar cone membership against generators", "[convex_sets]") {
  REQUIRE(in_polar_cone(ConeV{{Vec{1, 0}}}, Vec{-1, 0}, kTol));
  REQUIRE(in_polar_cone(ConeV{{Vec{1, 0}, Vec{0, 1}}}, Vec{-1, -1}, kTol));
  REQUIRE_FALSE(in_polar_cone(ConeV{{Vec{1, 0}, Vec{0, 1}}}, Vec{1, -1}, kTol));
}

TEST_CASE("local cone radius of a polyhedron member", "[convex_sets]") {
  Polyhedron one{{HalfSpace{Vec{1.0}, 1.0}}};
  REQUIRE_THAT(local_cone_radius(one, Vec{0.0}, kTol), Catch::Matchers::WithinAbs(0.5, 1e-12));

  Polyhedron pinned{{HalfSpace{Vec{1.0}, 0.0}, HalfSpace{Vec{-1.0}, 0.0}}};
  REQUIRE(std::isinf(local_cone_radius(pinned, Vec{0.0}, kTol)));

  Polyhedron two{{HalfSpace{Vec{1, 0}, 2.0}, HalfSpace{Vec{0, 1}, 3.0}}};
  REQUIRE_THAT(local_cone_radius(two, Vec{2, 0}, kTol), Catch::Matchers::WithinAbs(1.5, 1e-12));

  REQUIRE_THROWS_AS(local_cone_radius(two, Vec{5, 0}, kTol), Error);
  try {
    local_cone_radius(two, Vec{5, 0}, kTol);
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::PointNotInSet);
  }
}

TEST_CASE("cone projections are orthogonal and reflections preserve norm", "[convex_sets]") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    ConeV cone;
    size_t n = static_cast<size_t>(rng.uniform_int(2, 3));
    int k = rng.uniform_int(1, 4);
    for (int i = 0; i < k; ++i) cone.generators.push_back(rng.unit_vec(n));
    Vec x = rng.gaussian_vec(n);
    Vec p = project(ConvexSet{cone}, x, kTol);
    REQUIRE(std::abs(dot(p, sub(x, p))) <= 1e-9 * std::max(1.0, dot(x, x)));
    REQUIRE_THAT(norm(reflect(ConvexSet{cone}, x, kTol)),
                 Catch::Matchers::WithinAbs(norm(x), 1e-9));
  }
}

TEST_CASE("projection is idempotent and nonexpansive", "[convex_sets]") {
  Rng rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    size_t n = 2;
    ConvexSet set;
    switch (rng.uniform_int(0, 2)) {
      case 0: set = ConeV{{rng.unit_vec(n), rng.unit_vec(n)}}; break;
      case 1: {
        Vec anchor = rng.gaussian_vec(n);
        Polyhedron poly;
        for (int i = 0; i < 3; ++i) {
          Vec a = rng.unit_vec(n);
          poly.halfspaces.push_back(HalfSpace{a, dot(a, anchor) + rng.uniform(0.1, 1.0)});
        }
        set = poly;
        break;
      }
      default: set = HalfSpace{rng.unit_vec(n), rng.uniform(-1.0, 1.0)}; break;
    }
    Vec x = rng.gaussian_vec(n), y = rng.gaussian_vec(n);
    Vec px = project(set, x, kTol), py = project(set, y, kTol);
    REQUIRE(dist(project(set, px, kTol), px) <= 1e-9);
    REQUIRE(dist(px, py) <= dist(x, y) + 1e-9);
  }
}

TEST_CASE("projection agrees with the brute-force oracle", "[convex_sets][oracle]") {
  Rng rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    size_t n = static_cast<size_t>(rng.uniform_int(2, 3));
    ConvexSet set;
    if (rng.uniform() < 0.5) {
      ConeV cone;
      int k = rng.uniform_int(2, 4);
      for (int i = 0; i < k; ++i) cone.generators.push_back(rng.unit_vec(n));
      set = cone;
    } else {
      Vec anchor = rng.gaussian_vec(n);
      Polyhedron poly;
      int m = rng.uniform_int(3, 4);
      for (int i = 0; i < m; ++i) {
        Vec a = rng.unit_vec(n);
        poly.halfspaces.push_back(HalfSpace{a, dot(a, anchor) + rng.uniform(0.1, 1.0)});
      }
      set = poly;
    }
    Vec x = rng.gaussian_vec(n);
    Vec p = project(set, x, kTol);
    Vec q = oracle::oracle_project(set, x);
    worst = std::max(worst, dist(p, q));
  }
  INFO("worst deviation " << worst);
  REQUIRE(worst <= 1e-8);
}

TEST_CASE("set validation rejects malformed payloads", "[convex_sets]") {
  REQUIRE_THROWS_AS(validate_set(ConvexSet{ConeV{{Vec{0, 0}}}}, kTol), Error);
  REQUIRE_THROWS_AS(validate_set(ConvexSet{HalfSpace{Vec{0, 0}, 1.0}}, kTol), Error);
  REQUIRE_THROWS_AS(validate_set(ConvexSet{Polyhedron{}}, kTol), Error);
  REQUIRE_THROWS_AS(
      validate_set(ConvexSet{LinearSubspace{{Vec{1, 1}, Vec{2, 2}}}}, kTol), Error);
  REQUIRE_NOTHROW(validate_set(ConvexSet{cone_a()}, kTol));
}
