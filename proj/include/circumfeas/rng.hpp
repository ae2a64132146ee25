#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "circumfeas/vec.hpp"

namespace circumfeas {

// Deterministic random source. Draws go through fixed arithmetic rather than
// std::uniform_real_distribution so that streams are identical across
// standard libraries (the distribution adapters are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive integer range; modulo bias is irrelevant at the ranges used here
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Box-Muller, no spare caching (simpler stream accounting)
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
  }

  Vec gaussian_vec(size_t n) {
    Vec v(n);
    for (double& c : v) c = gaussian();
    return v;
  }

  Vec unit_vec(size_t n) {
    for (;;) {
      Vec v = gaussian_vec(n);
      double l = norm(v);
      if (l > 1e-6) return scale(1.0 / l, v);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace circumfeas
