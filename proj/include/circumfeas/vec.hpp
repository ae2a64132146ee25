#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "circumfeas/errors.hpp"

namespace circumfeas {

// Dense real vector. Everything here is desk scale (dim <= 16), so a plain
// std::vector with free functions beats a matrix library.
using Vec = std::vector<double>;

inline void check_finite(const Vec& v, const char* what) {
  if (v.empty()) fail(ErrKind::DimensionMismatch, std::string(what) + " has dimension 0");
  for (double x : v)
    if (!std::isfinite(x))
      fail(ErrKind::DimensionMismatch, std::string(what) + " has a non-finite coordinate");
}

inline void check_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size())
    fail(ErrKind::DimensionMismatch,
         std::string(what) + ": " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

inline Vec add(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "add");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "sub");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double s, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline void axpy(double s, const Vec& a, Vec& out) {
  check_same_dim(a, out, "axpy");
  for (size_t i = 0; i < a.size(); ++i) out[i] += s * a[i];
}

inline double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "dot");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec zeros(size_t n) { return Vec(n, 0.0); }

// Exact midpoint, used verbatim by the two-point circumcenter case.
inline Vec midpoint(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "midpoint");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = 0.5 * (a[i] + b[i]);
  return r;
}

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) fail(ErrKind::DegenerateConfiguration, "cannot normalize zero vector");
  return scale(1.0 / n, a);
}

// Relative point-coincidence test shared by circumcenter dedup and case tags.
inline bool coincide(const Vec& a, const Vec& b, double eps_degen) {
  double m = std::max(1.0, std::max(norm(a), norm(b)));
  return dist(a, b) <= eps_degen * m;
}

}  // namespace circumfeas
