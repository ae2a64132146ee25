#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "circumfeas/circumcenter.hpp"
#include "circumfeas/linalg.hpp"
#include "circumfeas/rng.hpp"
#include "circumfeas/vec.hpp"

using namespace circumfeas;

namespace {
const Tolerance kTol;
}

TEST_CASE("vector arithmetic basics", "[geometry_core]") {
  Vec a{1, 2, 3}, b{4, -1, 0};
  REQUIRE(add(a, b) == Vec{5, 1, 3});
  REQUIRE(sub(a, b) == Vec{-3, 3, 3});
  REQUIRE(dot(a, b) == 2.0);
  REQUIRE(norm(Vec{3, 4}) == 5.0);
  REQUIRE(dist(a, a) == 0.0);
  Vec c = a;
  axpy(2.0, b, c);
  REQUIRE(c == Vec{9, 0, 3});
  REQUIRE(norm(normalized(Vec{0, -7, 0})) == 1.0);
}

TEST_CASE("non-finite and mismatched inputs are rejected", "[geometry_core]") {
  Vec bad{1.0, std::nan("")};
  REQUIRE_THROWS_AS(check_finite(bad, "test"), Error);
  REQUIRE_THROWS_AS(dot(Vec{1, 2}, Vec{1, 2, 3}), Error);
  try {
    dot(Vec{1, 2}, Vec{1, 2, 3});
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::DimensionMismatch);
  }
}

TEST_CASE("coincidence test is relative to point magnitude", "[geometry_core]") {
  REQUIRE(coincide(Vec{1, 1}, Vec{1, 1}, 1e-12));
  REQUIRE_FALSE(coincide(Vec{1, 1}, Vec{1, 1 + 1e-9}, 1e-12));
  // at magnitude 1e6 the same absolute gap is below the relative threshold
  REQUIRE(coincide(Vec{1e6, 0}, Vec{1e6 + 1e-9, 0}, 1e-12));
}

TEST_CASE("gram solve on simple bases", "[geometry_core]") {
  // orthonormal basis returns the rhs unchanged
  auto t = solve_gram({Vec{1, 0}, Vec{0, 1}}, {3, 4}, kTol);
  REQUIRE_THAT(t[0], Catch::Matchers::WithinAbs(3.0, 1e-14));
  REQUIRE_THAT(t[1], Catch::Matchers::WithinAbs(4.0, 1e-14));

  auto s = solve_gram({Vec{2, 0}}, {4}, kTol);
  REQUIRE_THAT(s[0], Catch::Matchers::WithinAbs(1.0, 1e-14));

  // orthogonal but not normalized: Gram is diag(2,2), so (2,0) -> (1,0)
  auto u = solve_gram({Vec{1, 1}, Vec{1, -1}}, {2, 0}, kTol);
  REQUIRE_THAT(u[0], Catch::Matchers::WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(u[1], Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("gram solve residual stays below tolerance on random bases", "[geometry_core]") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = static_cast<size_t>(rng.uniform_int(1, 5));
    size_t k = static_cast<size_t>(rng.uniform_int(1, static_cast<int>(n)));
    std::vector<Vec> basis;
    for (size_t i = 0; i < k; ++i) basis.push_back(rng.gaussian_vec(n));
    std::vector<double> rhs;
    for (size_t i = 0; i < k; ++i) rhs.push_back(rng.uniform(-2.0, 2.0));
    std::vector<double> t;
    try {
      t = solve_gram(basis, rhs, kTol);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrKind::RankDeficient);  // a nearly dependent draw
      continue;
    }
    for (size_t j = 0; j < k; ++j) {
      double lhs = 0;
      for (size_t i = 0; i < k; ++i) lhs += t[i] * dot(basis[i], basis[j]);
      REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs[j], 1e-8));
    }
  }
}

TEST_CASE("gram solve rejects dependent bases", "[geometry_core]") {
  REQUIRE_THROWS_AS(solve_gram({Vec{1, 1}, Vec{2, 2}}, {1, 2}, kTol), Error);
  try {
    solve_gram({Vec{1, 1}, Vec{2, 2}}, {1, 2}, kTol);
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::RankDeficient);
  }
}

TEST_CASE("gram solve is scale equivariant down to tiny magnitudes", "[geometry_core]") {
  // the rank decision must be relative: a well-conditioned basis scaled by
  // 1e-7 squares to Gram entries of 1e-14 and must still solve
  std::vector<Vec> basis{Vec{1, 0.5}, Vec{-0.25, 1}};
  auto ref = solve_gram(basis, {1.0, 0.5}, kTol);
  for (double lam : {1e-7, 1e-4, 1e3}) {
    std::vector<Vec> scaled;
    for (const Vec& b : basis) scaled.push_back(scale(lam, b));
    // rhs scales by lam^2, coefficients by 1/lam... keep rhs fixed instead:
    // t(lam) solves lam^2 G t = rhs, so t = ref / lam^2
    auto t = solve_gram(scaled, {1.0, 0.5}, kTol);
    REQUIRE_THAT(t[0] * lam * lam, Catch::Matchers::WithinAbs(ref[0], 1e-9));
    REQUIRE_THAT(t[1] * lam * lam, Catch::Matchers::WithinAbs(ref[1], 1e-9));
  }
}

TEST_CASE("circumcenter of symmetric planar points", "[geometry_core]") {
  Vec c = circumcenter({Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}}, kTol);
  REQUIRE_THAT(c[0], Catch::Matchers::WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(c[1], Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("duplicate point collapses the circumcenter to a midpoint", "[geometry_core]") {
  Vec c = circumcenter({Vec{2, 3}, Vec{2, 3}, Vec{4, 5}}, kTol);
  // two distinct points give the exact midpoint formula, bitwise
  REQUIRE(c == midpoint(Vec{2, 3}, Vec{4, 5}));
  REQUIRE(c == Vec{3, 4});
}

TEST_CASE("circumcenter of a known spatial triple", "[geometry_core]") {
  Vec c = circumcenter({Vec{1, 0.5, 0}, Vec{0, -0.5, 1}, Vec{0, -0.5, -1}}, kTol);
  REQUIRE_THAT(c[0], Catch::Matchers::WithinAbs(0.25, 1e-12));
  REQUIRE_THAT(c[1], Catch::Matchers::WithinAbs(-0.25, 1e-12));
  REQUIRE_THAT(c[2], Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("circumcenter is equidistant, affine, and permutation invariant", "[geometry_core]") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = static_cast<size_t>(rng.uniform_int(2, 5));
    size_t k = static_cast<size_t>(rng.uniform_int(2, static_cast<int>(n) + 1));
    std::vector<Vec> pts;
    for (size_t i = 0; i < k; ++i) pts.push_back(rng.gaussian_vec(n));
    Vec c;
    try {
      c = circumcenter(pts, kTol);
    } catch (const Error&) {
      continue;  // degenerate draw
    }
    double d0 = dist(c, pts[0]);
    for (const Vec& p : pts) REQUIRE_THAT(dist(c, p), Catch::Matchers::WithinAbs(d0, 1e-8));

    // c - p0 must lie in span{p_j - p0}: residual after least squares is 0
    std::vector<Vec> basis;
    for (size_t j = 1; j < k; ++j) basis.push_back(sub(pts[j], pts[0]));
    Vec rel = sub(c, pts[0]);
    std::vector<double> rhs;
    for (const Vec& b : basis) rhs.push_back(dot(b, rel));
    auto t = solve_gram(basis, rhs, kTol);
    Vec rec = zeros(n);
    for (size_t j = 0; j < basis.size(); ++j) axpy(t[j], basis[j], rec);
    REQUIRE(dist(rec, rel) <= 1e-8 * std::max(1.0, norm(rel)));

    std::vector<Vec> perm(pts.rbegin(), pts.rend());
    REQUIRE(dist(circumcenter(perm, kTol), c) <= 1e-8 * std::max(1.0, norm(c)));
  }
}

TEST_CASE("circumcenter rejects degenerate configurations", "[geometry_core]") {
  // distinct collinear triple has no equidistant point in its affine hull
  REQUIRE_THROWS_AS(circumcenter({Vec{0, 0}, Vec{1, 0}, Vec{2, 0}}, kTol), Error);
  try {
    circumcenter({Vec{0, 0}, Vec{1, 0}, Vec{2, 0}}, kTol);
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::DegenerateConfiguration);
  }
  // more points than dim+1 cannot be affinely independent
  REQUIRE_THROWS_AS(
      circumcenter({Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}, kTol), Error);
  REQUIRE_THROWS_AS(circumcenter({}, kTol), Error);
}

TEST_CASE("circumcenter of a single point is that point", "[geometry_core]") {
  REQUIRE(circumcenter({Vec{3.5, -2}}, kTol) == Vec{3.5, -2});
  // three copies still collapse to one
  REQUIRE(circumcenter({Vec{1, 2}, Vec{1, 2}, Vec{1, 2}}, kTol) == Vec{1, 2});
}
