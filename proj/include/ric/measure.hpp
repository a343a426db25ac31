#pragma once
// Measures that rearrangements are taken against.
//
// Lebesgue{n}: rearranged sets are centered Euclidean balls.
// Gaussian1D: standard Gaussian on the line; rearranged sets of sublevel type
// are left half-lines {x < a} (so the rearranged function opens to the left).
//
// Masses are always sums of per-cell masses over the sampled box; nothing
// outside the box is ever counted.

#include <cmath>

#include "ric/xreal.hpp"

namespace ric {

enum class MeasureKind { Lebesgue, Gaussian1D };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::Lebesgue;
  int dim = 1;  // Gaussian1D forces dim == 1

  static MeasureSpec lebesgue(int n) {
    require(n >= 1 && n <= 3, "MeasureSpec: dim must be 1..3");
    return {MeasureKind::Lebesgue, n};
  }
  static MeasureSpec gaussian1d() { return {MeasureKind::Gaussian1D, 1}; }
};

// Volume of the n-dimensional unit ball.
inline double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 3.14159265358979323846;
    case 3: return 4.0 * 3.14159265358979323846 / 3.0;
    default: throw std::invalid_argument("unit_ball_volume: n must be 1..3");
  }
}

// Standard normal CDF. std::erfc is good to <1 ulp in glibc, far inside the
// 1e-9 budget documented for this module.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

inline double normal_pdf(double x) {
  return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

// Inverse normal CDF: Acklam's rational approximation (|rel err| < 1.15e-9)
// refined by one Halley step of the forward map, giving |error| < 1e-12 over
// p in (0,1). Documented budget is 1e-9.
double normal_quantile(double p);

// Mass of the cell of width h centered at node x.
inline double cell_mass_1d(const MeasureSpec& mu, double x, double h) {
  if (mu.kind == MeasureKind::Lebesgue) return h;
  return normal_cdf(x + 0.5 * h) - normal_cdf(x - 0.5 * h);
}

// Radius of the centered ball with the given Lebesgue mass.
inline double ball_radius(int n, double mass) {
  require(mass >= 0.0, "ball_radius: negative mass");
  return std::pow(mass / unit_ball_volume(n), 1.0 / n);
}

inline double ball_mass(int n, double radius) {
  return unit_ball_volume(n) * std::pow(radius, n);
}

}  // namespace ric
