#pragma once
// Level-set masses and monotone rearrangements by distribution-function
// inversion: sort node values with their cell masses, accumulate, and invert
// the quantile map onto the measure's canonical nested family (centered balls
// for Lebesgue, left half-lines for Gaussian1D). Ties merge into plateaus,
// so functions taking few values rearrange exactly.

#include <vector>

#include "ric/grid.hpp"
#include "ric/measure.hpp"

namespace ric {

struct LevelSetMass {
  double lambda = 0.0;
  double mass = 0.0;
  // Total mass of cells adjacent to the level interface (cells whose
  // indicator differs from an axis neighbour, both sides). One-cell-layer
  // uncertainty of the cell-counted mass.
  double error_bound = 0.0;
};

// Mass of {f > lambda} / {f < lambda}, strict inequalities, counted over the
// sampled box only.
LevelSetMass superlevel_mass(const GridFunction1D& f, double lambda, const MeasureSpec& mu);
LevelSetMass sublevel_mass(const GridFunction1D& f, double lambda, const MeasureSpec& mu);
LevelSetMass superlevel_mass(const GridFunctionND& f, double lambda, const MeasureSpec& mu);
LevelSetMass sublevel_mass(const GridFunctionND& f, double lambda, const MeasureSpec& mu);

// f*: superlevel sets become centered balls (Lebesgue) or left half-lines
// (Gaussian1D), equimeasurably. Requires f >= 0.
GridFunction1D decreasing_rearrangement(const GridFunction1D& f, const MeasureSpec& mu);
GridFunctionND decreasing_rearrangement(const GridFunctionND& f, const MeasureSpec& mu);

// f_* = -log((e^{-f})*): sublevel sets become the canonical nested family.
// Computed by direct ascending quantile inversion, which is the same map
// without the exp/log round trip; the composed route is kept as a test
// oracle. Requires f bounded below (carriers guarantee no -inf).
GridFunction1D increasing_rearrangement(const GridFunction1D& f, const MeasureSpec& mu);
GridFunctionND increasing_rearrangement(const GridFunctionND& f, const MeasureSpec& mu);

// Max adjacent-node difference quotient over all axes. Errors if any value
// in the box is not finite.
double lipschitz_estimate(const GridFunction1D& f);
double lipschitz_estimate(const GridFunctionND& f);

// Exact squared Euclidean distance from each node to the set (per-axis
// parabola envelope sweeps). Errors on empty sets.
std::vector<double> squared_distance_field(const SetOnGrid& a);

// Checks {f < lambda}_eps is contained in {f < lambda + L eps} on every
// (lambda, eps) pair: a node x violates the pair when
// dist(x, {f < lambda}) < eps and f(x) >= lambda + L * dist_bound, with
// dist_bound = eps in 1D and sqrt(dim) * eps in higher dimension (node-chain
// Lipschitz bounds are per-axis). Empty sublevel sets hold vacuously.
struct LipschitzCheckRow {
  double lambda = 0.0;
  double eps = 0.0;
  bool holds = true;
  double worst_excess = 0.0;  // max of f(x) - (lambda + L * dist_bound) over reached nodes
};

struct LipschitzCheckReport {
  double lipschitz = 0.0;
  bool holds = true;
  std::vector<LipschitzCheckRow> rows;
};

LipschitzCheckReport enlargement_lipschitz_check(const GridFunction1D& f, double L,
                                                 const std::vector<double>& eps_grid,
                                                 const std::vector<double>& lambda_grid);
LipschitzCheckReport enlargement_lipschitz_check(const GridFunctionND& f, double L,
                                                 const std::vector<double>& eps_grid,
                                                 const std::vector<double>& lambda_grid);

}  // namespace ric
