#pragma once

#include <string>
#include <utility>
#include <vector>

#include "circumfeas/circumcenter.hpp"
#include "circumfeas/sets.hpp"
#include "circumfeas/tolerance.hpp"
#include "circumfeas/vec.hpp"

namespace circumfeas {

// How many of {x, R_A(x), R_B(R_A(x))} were distinct, and which coincided.
// Tagged off the same dedup the circumcenter uses, so the recorded case and
// the computed point can never disagree.
enum class CardinalityCase { One, TwoXY, TwoYZ, TwoXZ, Three };

inline const char* case_name(CardinalityCase c) {
  switch (c) {
    case CardinalityCase::One:   return "One";
    case CardinalityCase::TwoXY: return "TwoXY";
    case CardinalityCase::TwoYZ: return "TwoYZ";
    case CardinalityCase::TwoXZ: return "TwoXZ";
    case CardinalityCase::Three: return "Three";
  }
  return "?";
}

enum class Terminated { Feasible, MaxIters, OperatorUndefined };

inline const char* terminated_name(Terminated t) {
  switch (t) {
    case Terminated::Feasible:          return "Feasible";
    case Terminated::MaxIters:          return "MaxIters";
    case Terminated::OperatorUndefined: return "OperatorUndefined";
  }
  return "?";
}

struct CrmStep {
  Vec x, y, z;          // iterate, first reflection, second reflection
  Vec next;             // circumcenter of the deduplicated triple
  CardinalityCase cardinality_case = CardinalityCase::Three;
  double dist_a = 0.0;  // ||x - P_A(x)||
  double dist_b = 0.0;  // ||x - P_B(x)||
};

struct IterationTrace {
  std::vector<CrmStep> steps;
  Terminated terminated = Terminated::MaxIters;
  int iterations_used = 0;  // == steps.size()
  Vec final_point;          // where the run stopped (shadow point for run_dr)
  double final_dist_a = 0.0;
  double final_dist_b = 0.0;
  std::string error_message;  // nonempty iff terminated == OperatorUndefined
};

inline CardinalityCase classify_case(const Vec& x, const Vec& y, const Vec& z,
                                     double eps_degen) {
  bool xy = coincide(x, y, eps_degen);
  bool yz = coincide(y, z, eps_degen);
  bool xz = coincide(x, z, eps_degen);
  if (xy && yz) return CardinalityCase::One;
  if (xy) return CardinalityCase::TwoXY;
  if (yz) return CardinalityCase::TwoYZ;
  if (xz) return CardinalityCase::TwoXZ;
  return CardinalityCase::Three;
}

// One application of the circumcentered-reflection operator. The dedup inside
// circumcenter realizes the midpoint special cases (coincident points simply
// collapse), so there is a single code path for all cardinalities.
inline CrmStep crm_operator(const ConvexSet& a, const ConvexSet& b, const Vec& x,
                            const Tolerance& tol) {
  CrmStep s;
  s.x = x;
  Vec pa = project(a, x, tol);
  s.dist_a = dist(x, pa);
  s.dist_b = dist(x, project(b, x, tol));
  s.y = sub(scale(2.0, pa), x);
  Vec pb = project(b, s.y, tol);
  s.z = sub(scale(2.0, pb), s.y);
  s.cardinality_case = classify_case(s.x, s.y, s.z, tol.eps_degen);
  try {
    s.next = circumcenter({s.x, s.y, s.z}, tol);
  } catch (const Error& e) {
    if (e.kind == ErrKind::DegenerateConfiguration)
      fail(ErrKind::OperatorUndefined,
           std::string("circumcenter undefined for distinct collinear reflections (") +
               e.what() + ")");
    throw;
  }
  return s;
}

inline IterationTrace run_crm(const ConvexSet& a, const ConvexSet& b, const Vec& x0,
                              const Tolerance& tol, int max_iters) {
  if (max_iters < 1) fail(ErrKind::DimensionMismatch, "max_iters must be >= 1");
  IterationTrace tr;
  Vec x = x0;
  for (int k = 0;; ++k) {
    double da = dist(x, project(a, x, tol));
    double db = dist(x, project(b, x, tol));
    if (da <= tol.eps_feas && db <= tol.eps_feas) {
      tr.terminated = Terminated::Feasible;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    if (k == max_iters) {
      tr.terminated = Terminated::MaxIters;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    try {
      CrmStep s = crm_operator(a, b, x, tol);
      x = s.next;
      tr.steps.push_back(std::move(s));
    } catch (const Error& e) {
      if (e.kind != ErrKind::OperatorUndefined) throw;
      tr.terminated = Terminated::OperatorUndefined;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      tr.error_message = e.what();
      break;
    }
  }
  tr.iterations_used = static_cast<int>(tr.steps.size());
  return tr;
}

// CRM on the doubled-dimension pair (diagonal subspace, A x B). Reflecting
// through the diagonal swaps the two halves; reflecting through A x B acts
// componentwise, so only the two factor projections are ever needed. The
// recorded trace holds the diagonal components (pair averages); termination
// tests the diagonal point against both original sets.
inline IterationTrace run_crm_product_space(const ConvexSet& a, const ConvexSet& b,
                                            const Vec& x0, const Tolerance& tol,
                                            int max_iters) {
  if (max_iters < 1) fail(ErrKind::DimensionMismatch, "max_iters must be >= 1");
  const size_t n = x0.size();
  auto lower = [n](const Vec& v) { return Vec(v.begin(), v.begin() + n); };
  auto upper = [n](const Vec& v) { return Vec(v.begin() + n, v.end()); };
  auto diag = [&](const Vec& v) { return midpoint(lower(v), upper(v)); };
  auto lift = [](const Vec& lo, const Vec& hi) {
    Vec v = lo;
    v.insert(v.end(), hi.begin(), hi.end());
    return v;
  };

  IterationTrace tr;
  Vec z = lift(x0, x0);
  for (int k = 0;; ++k) {
    Vec xbar = diag(z);
    double da = dist(xbar, project(a, xbar, tol));
    double db = dist(xbar, project(b, xbar, tol));
    if (da <= tol.eps_feas && db <= tol.eps_feas) {
      tr.terminated = Terminated::Feasible;
      tr.final_point = xbar; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    if (k == max_iters) {
      tr.terminated = Terminated::MaxIters;
      tr.final_point = xbar; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    Vec y = lift(upper(z), lower(z));  // reflection through the diagonal
    Vec py = lift(project(a, lower(y), tol), project(b, upper(y), tol));
    Vec w = sub(scale(2.0, py), y);
    CrmStep s;
    s.x = xbar; s.y = diag(y); s.z = diag(w);
    s.dist_a = da; s.dist_b = db;
    s.cardinality_case = classify_case(z, y, w, tol.eps_degen);
    try {
      z = circumcenter({z, y, w}, tol);
    } catch (const Error& e) {
      if (e.kind != ErrKind::DegenerateConfiguration) throw;
      tr.terminated = Terminated::OperatorUndefined;
      tr.final_point = xbar; tr.final_dist_a = da; tr.final_dist_b = db;
      tr.error_message = e.what();
      break;
    }
    s.next = diag(z);
    tr.steps.push_back(std::move(s));
  }
  tr.iterations_used = static_cast<int>(tr.steps.size());
  return tr;
}

// Alternating projections baseline: x <- P_B(P_A(x)).
inline IterationTrace run_map(const ConvexSet& a, const ConvexSet& b, const Vec& x0,
                              const Tolerance& tol, int max_iters) {
  if (max_iters < 1) fail(ErrKind::DimensionMismatch, "max_iters must be >= 1");
  IterationTrace tr;
  Vec x = x0;
  for (int k = 0;; ++k) {
    double da = dist(x, project(a, x, tol));
    double db = dist(x, project(b, x, tol));
    if (da <= tol.eps_feas && db <= tol.eps_feas) {
      tr.terminated = Terminated::Feasible;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    if (k == max_iters) {
      tr.terminated = Terminated::MaxIters;
      tr.final_point = x; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    CrmStep s;
    s.x = x; s.dist_a = da; s.dist_b = db;
    s.y = project(a, x, tol);
    s.z = project(b, s.y, tol);
    s.next = s.z;
    s.cardinality_case = classify_case(s.x, s.y, s.z, tol.eps_degen);
    x = s.next;
    tr.steps.push_back(std::move(s));
  }
  tr.iterations_used = static_cast<int>(tr.steps.size());
  return tr;
}

// Douglas-Rachford baseline: governing g <- (g + R_B(R_A(g))) / 2. The
// governing sequence generally settles outside A and B, so feasibility (and
// the recorded distances) follow the shadow P_A(g); trace rows keep the
// governing point in x/next with the shadow's distances alongside, and
// final_point is the shadow.
inline IterationTrace run_dr(const ConvexSet& a, const ConvexSet& b, const Vec& x0,
                             const Tolerance& tol, int max_iters) {
  if (max_iters < 1) fail(ErrKind::DimensionMismatch, "max_iters must be >= 1");
  IterationTrace tr;
  Vec g = x0;
  for (int k = 0;; ++k) {
    Vec shadow = project(a, g, tol);
    double da = dist(shadow, project(a, shadow, tol));
    double db = dist(shadow, project(b, shadow, tol));
    if (da <= tol.eps_feas && db <= tol.eps_feas) {
      tr.terminated = Terminated::Feasible;
      tr.final_point = shadow; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    if (k == max_iters) {
      tr.terminated = Terminated::MaxIters;
      tr.final_point = shadow; tr.final_dist_a = da; tr.final_dist_b = db;
      break;
    }
    CrmStep s;
    s.x = g; s.dist_a = da; s.dist_b = db;
    s.y = reflect(a, g, tol);
    s.z = reflect(b, s.y, tol);
    s.next = midpoint(g, s.z);
    s.cardinality_case = classify_case(s.x, s.y, s.z, tol.eps_degen);
    g = s.next;
    tr.steps.push_back(std::move(s));
  }
  tr.iterations_used = static_cast<int>(tr.steps.size());
  return tr;
}

// Kernel test: does the operator send x to the origin. (Distinct from the
// fixed-point set, which is A intersect B.)
inline bool in_kernel_ct(const ConvexSet& a, const ConvexSet& b, const Vec& x,
                         const Tolerance& tol) {
  return norm(crm_operator(a, b, x, tol).next) <= tol.eps_feas;
}

}  // namespace circumfeas
