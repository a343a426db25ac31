#pragma once

#include <vector>

#include "ric/profile.hpp"
#include "ric/xreal.hpp"

namespace ric {

// Monotone nondecreasing 1D map given as a table of breakpoints.  Piecewise
// linear between nodes; outside the table it continues with the slope of the
// nearest end segment.  The generalized inverse uses the infimum rule
// inv(e) = inf{ y : map(y) >= e } and may return +-inf when the extended map
// never reaches e.
struct MonotoneMap {
  std::vector<double> xs;  // strictly increasing, finite, size >= 2
  std::vector<double> ys;  // nondecreasing, finite

  double operator()(double t) const;
  double generalized_inverse(double e) const;
  // max slope attained over [lo, hi] including end extensions
  double slope_bound(double lo, double hi) const;
  bool strictly_increasing() const;
  void validate() const;

  static MonotoneMap identity();
  static MonotoneMap from_table(std::vector<double> xs, std::vector<double> ys);
};

// Radial kernel G for costs of the form t*G(r/t).  Either the exact quadratic
// r^2/2 (eligible for the separable fast path) or a convex nondecreasing
// piecewise-linear profile.
struct RadialKernel {
  enum class Kind { Quadratic, Profile };
  Kind kind = Kind::Quadratic;
  PLProfile profile;  // used when kind == Profile

  double operator()(double r) const;
  void validate() const;

  static RadialKernel quadratic();
  static RadialKernel from_profile(PLProfile p);
};

enum class CostKind { HopfLax, InnerProduct, Distance };

// Two-point cost phi(x, y):
//   HopfLax{G, t}    phi = t * G(|x - y| / t)
//   InnerProduct{rho} phi = -rho(<x, y>)
//   Distance{alpha}  phi = alpha(|x - y|)
struct CostSpec {
  CostKind kind = CostKind::Distance;
  RadialKernel G;               // HopfLax
  double t = 1.0;               // HopfLax
  MonotoneMap map;              // rho (InnerProduct) or alpha (Distance)

  static CostSpec hopf_lax(RadialKernel G, double t);
  static CostSpec inner_product(MonotoneMap rho);
  static CostSpec distance(MonotoneMap alpha);

  void validate() const;
  double phi(const double* x, const double* y, int dim) const;
  double phi1(double x, double y) const { return phi(&x, &y, 1); }

  bool translation_invariant() const { return kind != CostKind::InnerProduct; }
  bool allows_negative_eps() const { return kind == CostKind::InnerProduct; }
  // Upper bound on the slope of r -> phi at distance r, over 0 <= r <= rmax.
  // +inf when the cost has an infinite wall inside that range.  HopfLax and
  // Distance only.
  double radial_slope_bound(double rmax) const;
};

}  // namespace ric
