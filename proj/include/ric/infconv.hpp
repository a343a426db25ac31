#pragma once

#include <vector>

#include "ric/cost.hpp"
#include "ric/grid.hpp"
#include "ric/measure.hpp"

namespace ric {

// Exact discrete infimum convolution: out(x) = min over in-grid nodes y of
// f(y) + phi(x, y).  Brute force O(N*M); this is the oracle every fast path
// is validated against.  Nodes where every candidate is +inf stay +inf.
GridFunction1D inf_convolution(const GridFunction1D& f, const CostSpec& cost, const Axis& out);
GridFunctionND inf_convolution(const GridFunctionND& f, const CostSpec& cost,
                               const std::vector<Axis>& out);

// Evolution on the function's own grid with cost t*G(|x-y|/t).  The quadratic
// kernel runs through per-axis lower envelopes of parabolas and matches the
// brute-force oracle node for node; profile kernels fall back to the oracle.
GridFunction1D hopf_lax(const GridFunction1D& f, const RadialKernel& G, double t);
GridFunctionND hopf_lax(const GridFunctionND& f, const RadialKernel& G, double t);

// Strict enlargement: cells whose node admits y in A with phi(x, y) < eps.
// Negative eps is legal only for InnerProduct costs.
SetOnGrid enlarge(const SetOnGrid& a, const CostSpec& cost, double eps);

// Sublevel-set decomposition into rational enlargement pieces.  For each
// denominator budget d in {4, 8, ..., D} the union
//   U_d = { x : exists y with next_d(f(y)) + next_d(phi(x,y)) < lambda }
// realizes the full union of { f < q1 }_{phi, q2} over rational pairs with
// denominators <= d and q1 + q2 < lambda.  U_d is contained in the strict
// sublevel set of the infimum convolution exactly, and the uncovered residual
// is nonincreasing in d.
struct DecompositionReport {
  double lambda = 0.0;
  std::vector<int> denominators;
  std::vector<std::size_t> residual;        // |{Qf < lambda} \ U_d|
  std::size_t sublevel_count = 0;           // |{Qf < lambda}|
  bool union_subset_ok = false;             // U_d subset of sublevel set, every d
  bool residual_monotone = false;           // residual nonincreasing in d
};

// Smallest rational k/j with 1 <= j <= max_den strictly above a; +inf maps
// to +inf.
double next_rational(double a, int max_den);

DecompositionReport decomposition_check(const GridFunction1D& f, const CostSpec& cost,
                                        double lambda, int denominator_budget);

// Sublevel / superlevel mass comparison between the evolutions of f and of
// its rearrangement f_*, verified with a lambda shift: at each lambda,
//   mass{Qf < lambda} >= mass{Qf_* < lambda - delta} - err
//   mass{Qf >= lambda} <= mass{Qf_* >= lambda - delta} + err
// with delta = kappa * h, kappa built from the Lipschitz activity of f and of
// the cost over the box.  Supported pairs: Lebesgue with Distance or HopfLax
// costs, Gaussian1D with Distance costs.
struct ComparisonRow {
  double lambda = 0.0;
  double mass_lhs = 0.0;     // strict sublevel mass of the evolution of f
  double mass_rhs = 0.0;     // strict sublevel mass of the evolution of f_*
  double mass_ge_lhs = 0.0;  // superlevel (>= lambda) masses, same sides
  double mass_ge_rhs = 0.0;
  double slack = 0.0;        // shift sensitivity plus boundary error budget
  bool pass = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double kappa = 0.0;
  double delta = 0.0;  // kappa * h
  bool pass = false;
};

ComparisonReport comparison_theorem_check(const GridFunction1D& f, const CostSpec& cost,
                                          const MeasureSpec& mu,
                                          const std::vector<double>& lambda_grid);

// Evenly spaced lambda grid spanning the finite range of both functions with
// a small margin; shared by the comparison harnesses.
std::vector<double> lambda_span(const GridFunction1D& a, const GridFunction1D& b, int count);

}  // namespace ric
