#pragma once
// Piecewise-linear radial profiles and their exact transforms.
//
// A PLProfile is a convex, nondecreasing, piecewise-linear function of r >= 0:
// knots 0 = r[0] < r[1] < ... < r[K] with finite values v[i], extended past
// r[K] by tail_slope. tail_slope == +inf means the function jumps to +inf
// immediately after r[K] (finite at r[K] itself); that variant arises as the
// Legendre conjugate of a profile with a finite tail.
//
// The spec-facing ConvexProfile is the subfamily with v[0] = 0 and a finite
// tail_slope > 0 (so e^{-Psi} r^{n-1} is integrable); convex_profile() builds
// and validates it. Conjugation is exact: the Legendre transform exchanges
// slopes and breakpoints, and the polar transform is an upper envelope of
// affine candidate lines, so both return PLProfiles with no discretization.

#include <vector>

#include "ric/xreal.hpp"

namespace ric {

struct PLProfile {
  std::vector<double> r;
  std::vector<double> v;
  double tail_slope = 1.0;

  int knots() const { return (int)r.size(); }
  double last_r() const { return r.back(); }
  double last_v() const { return v.back(); }

  // +inf past the last knot when tail_slope == +inf.
  double eval(double x) const;

  // Largest finite slope: tail_slope when finite, else the last chord.
  double max_slope() const;

  // Basic shape invariants: r[0] == 0, r strictly increasing, values finite,
  // chord slopes nonnegative and nondecreasing, tail_slope >= last chord.
  void validate() const;
};

using ConvexProfile = PLProfile;

// Spec carrier: additionally v[0] == 0 and 0 < tail_slope < +inf.
PLProfile convex_profile(std::vector<double> knots, std::vector<double> values,
                         double tail_slope);

// Psi(lambda * r): knots shrink by lambda, slopes grow by lambda.
PLProfile scale_arg(const PLProfile& p, double lambda);

// L Psi (r) = sup_{s >= 0} (r s - Psi(s)), exact.
PLProfile legendre_conjugate(const PLProfile& p);

// Psi-polar (r) = sup_{s > 0} (r s - 1) / Psi(s) with the conventions
// 0/0 = 0, (positive)/0 = +inf, (negative)/0 dropped, c/inf = 0. Exact:
// on each linear piece the ratio is monotone in s, so the sup is an upper
// envelope of the per-knot candidate lines, the tail-limit line r/tail_slope,
// and the zero line. A zero-valued knot at radius r_z > 0 makes the result
// +inf for r > 1/r_z.
PLProfile polar_conjugate(const PLProfile& p);

// integral over [0, inf) of e^{-P(r)} r^{n-1} dr, n in {1,2,3}; closed-form
// piecewise. +inf tails truncate the integral at the last knot; a finite tail
// needs tail_slope > 0 to converge (throws otherwise).
double moment_integral(const PLProfile& p, int n);

// Stable integral of r^k e^{-(a r + b)} over [r0, r1], k in {0,1,2}; series
// evaluation when |a|*(r1-r0) is small to avoid cancellation.
double exp_poly_integral(int k, double a, double b, double r0, double r1);

// Same integrand over [r0, inf), a > 0.
double exp_poly_integral_tail(int k, double a, double b, double r0);

// Dense PL sampling of a smooth convex function; chord slopes are clamped to
// be nondecreasing (tolerance for quadrature noise), tail continues the last
// chord unless tail_slope is given. Used to feed smooth data (e.g. r^2/2)
// into the exact-PL machinery.
PLProfile fit_convex_pl(const std::vector<double>& radii, const std::vector<double>& values,
                        double tail_slope = -1.0);

// Profile sampling r^2/2 on [0, r_max] with the given knot count; tail slope
// r_max. Interpolation error is r_max^2/(8 (knots-1)^2).
PLProfile gaussian_profile(double r_max, int knots);

}  // namespace ric
