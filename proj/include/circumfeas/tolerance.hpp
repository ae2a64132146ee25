#pragma once

#include "circumfeas/errors.hpp"

namespace circumfeas {

// eps_feas gates membership/feasibility decisions; eps_degen gates point
// coincidence and rank decisions. Both absolute: scenario coordinates are O(1)
// by construction, double precision leaves ~5 digits of headroom at 1e-10.
struct Tolerance {
  double eps_feas = 1e-10;
  double eps_degen = 1e-12;

  void validate() const {
    if (!(eps_feas > 0) || !(eps_degen > 0))
      fail(ErrKind::DimensionMismatch, "tolerances must be strictly positive");
    if (eps_degen > eps_feas)
      fail(ErrKind::DimensionMismatch, "eps_degen must not exceed eps_feas");
  }
};

constexpr int kDefaultMaxIters = 10000;

}  // namespace circumfeas
