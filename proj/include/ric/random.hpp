#pragma once
// Deterministic instance generation. Everything downstream of a seed must be
// bit-for-bit reproducible across runs, so no std distributions are used:
// splitmix64 drives raw 64-bit states and doubles come from the usual
// shift-multiply construction.

#include <array>
#include <cstdint>
#include <vector>

#include "ric/grid.hpp"
#include "ric/profile.hpp"

namespace ric {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + (int)(next_u64() % (std::uint64_t)(hi - lo + 1));
  }

 private:
  std::uint64_t s_;
};

// Knobs for the random convex families used throughout the property suites.
// knot_count doubles as the supporting-line count for grid kinds.
struct RandomConvexSpec {
  std::uint64_t seed = 1;
  int knot_count = 6;
  double slope_scale = 1.0;
  double asymmetry = 0.0;    // 0 = even; 1 = fully lopsided slopes
  double translation = 0.0;  // shift of the minimizer away from the origin
};

// Radial profile: random increasing knots, nonnegative nondecreasing slope
// increments, strictly positive tail slope.
PLProfile random_profile(const RandomConvexSpec& spec);

// Convex piecewise-linear function as a max of supporting lines, sampled on
// the axis. Values are exactly convex-extensible by construction. Lipschitz
// constant is bounded by slope_scale * (1 + asymmetry).
GridFunction1D random_convex_1d(const RandomConvexSpec& spec, const Axis& axis);

// Even, nonnegative convex function with f(0) = 0: max of paired supporting
// half-spaces max(0, |<a_j, x>| + b_j), b_j <= 0. dim in {1,2,3}; axes must
// be origin-symmetric with odd node counts so the origin is a node.
GridFunctionND random_convex_even_nd(const RandomConvexSpec& spec, int dim,
                                     const std::array<Axis, 3>& axes);

// Support samples of a random symmetric convex body: smooth positive
// trigonometric polynomial h(theta) = c0 + sum a_k cos(2k theta + phi_k),
// sampled on m uniform angles (m even). Convexity is not required of the
// samples; the body is the intersection of the sampled half-planes.
std::vector<double> random_support_samples(SplitMix64& rng, int m);

}  // namespace ric
