#pragma once

#include <vector>

#include "ric/cost.hpp"
#include "ric/grid.hpp"
#include "ric/measure.hpp"
#include "ric/profile.hpp"

namespace ric {

enum class TransformKind { Legendre, Polar, T };

// Shared precondition of the T/polar family: even within 1e-9, value 0 at the
// center node, nonnegative.  Axes must be symmetric with an odd node count so
// the origin is sampled.
void require_cvx0(const GridFunctionND& f);

// Discrete conjugate sup_y <x,y> - f(y).  The fast path factorizes into
// iterated per-coordinate 1D conjugates (sup splits coordinate-wise); the
// oracle takes the sup over the full lattice.  +inf samples never contribute;
// all-+inf lines propagate as missing and the final values are finite for
// proper f.
GridFunction1D legendre_grid(const GridFunction1D& f, const Axis& out);
GridFunctionND legendre_grid(const GridFunctionND& f, const std::vector<Axis>& out);
GridFunction1D legendre_grid_oracle(const GridFunction1D& f, const Axis& out);
GridFunctionND legendre_grid_oracle(const GridFunctionND& f, const std::vector<Axis>& out);

// sup_y rho(<x,y>) - f(y) for increasing rho with rho(0) = 0; equals the
// negation of the infimum convolution with the InnerProduct cost.  Nonneg on
// valid inputs because y = 0 contributes rho(0) - f(0) = 0.
GridFunctionND t_transform(const GridFunctionND& f, const MonotoneMap& rho,
                           const std::vector<Axis>& out);

// sup_y (<x,y> - 1) / f(y) with the conventions: positive/0 = +inf, 0/0 = 0,
// negative/0 dropped, finite/+inf = 0.  The origin value is pinned to 0, and
// the all-zero input maps to the all-zero output.
GridFunctionND polar_transform(const GridFunctionND& f, const std::vector<Axis>& out);

struct TransformRow {
  double lambda = 0.0;
  double mass_lhs = 0.0;  // |{Af <= lambda}|
  double mass_rhs = 0.0;  // |{Af_* <= lambda}|
  double slack = 0.0;
  bool pass = false;
};

struct TransformReport {
  TransformKind kind = TransformKind::Legendre;
  std::vector<TransformRow> rows;
  double kappa = 0.0;  // shift constant (Legendre/T) or slack scale (Polar)
  bool pass = false;
};

// Per-lambda verdicts |{Af <= lambda}| <= |{Af_* <= lambda}| + slack, with
// f_* the increasing rearrangement under Lebesgue measure.  Legendre and T
// use an additive lambda shift kappa*h; the polar transform uses the exact
// halfspace description of its sublevel sets, whose data perturbations act
// multiplicatively, so its slack dilates the compared mass by (1 + S)^(2n)
// with S = h*(sqrt(n)*R_x + lambda*Lf*(2*sqrt(n) + 2)).
TransformReport transform_comparison_check(const GridFunctionND& f, TransformKind kind,
                                           const MonotoneMap* rho, const std::vector<Axis>& out,
                                           const std::vector<double>& lambdas);

// Scaling identity linking the two transforms' level sets at lambda > 0:
// a cell has f-polar value > lambda exactly when the discrete conjugate,
// evaluated at the cell node divided by lambda, exceeds 1/lambda.  Checked
// cell by cell; indicator mismatches are allowed only within floating-point
// distance of the threshold.
struct ScalingIdentityReport {
  double lambda = 0.0;
  double mass_polar_gt = 0.0;      // |{f-polar > lambda}| on the out lattice
  double mass_legendre_gt = 0.0;   // same cells classified through the conjugate
  std::size_t mismatched_cells = 0;
  bool pass = false;
};

ScalingIdentityReport polar_legendre_identity_check(const GridFunctionND& f,
                                                    const std::vector<Axis>& out, double lambda);

// Evenly spaced lambdas across the joint finite range of two ND carriers.
std::vector<double> lambda_span_nd(const GridFunctionND& a, const GridFunctionND& b, int count);

}  // namespace ric
