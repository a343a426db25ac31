#pragma once
// Batch acceptance suites.  Each suite runs a seeded family of instances
// through one of the comparison harnesses and reduces to a single verdict.
// Budgets scale instance counts only, never tolerances, so a fast pass
// exercises exactly the same code paths and slack formulas as a full pass.

#include <string>
#include <vector>

#include "ric/grid.hpp"

namespace ric {

struct SuiteResult {
  std::string name;
  bool pass = false;
  long instances = 0;   // instances examined
  long failures = 0;    // instances that failed
  double worst = 0.0;   // suite-specific extremal statistic (see detail)
  std::string detail;   // one line; names the worst offender on failure
  double seconds = 0.0;
};

struct SuiteBudget {
  long scale_num = 1;
  long scale_den = 1;
  unsigned long long seed = 7;

  long count(long full) const {
    long c = full * scale_num / scale_den;
    return c < 1 ? 1 : c;
  }
};

// 1D evolution vs rearranged evolution over three cost families.
SuiteResult suite_infconv_comparison(const SuiteBudget& b);
// Rational enlargement decomposition of strict sublevel sets.
SuiteResult suite_sublevel_decomposition(const SuiteBudget& b);
// Legendre / polar sublevel mass comparison on n=2 grids, with det-1
// quadratic equality instances checked against their analytic partners.
SuiteResult suite_transform_comparison(const SuiteBudget& b);
// Volume-product bounds for symmetric support bodies, disc equality.
SuiteResult suite_santalo_bodies(const SuiteBudget& b);
// Sublevel comparison of quadratic Hopf-Lax evolutions across times, with
// exact-translation equality instances.
SuiteResult suite_hopflax_evolution(const SuiteBudget& b);
// Slope contraction under rearrangement plus the enlargement
// characterization of the Lipschitz property (holds at L, fails at 0.9 L).
SuiteResult suite_lipschitz_rearrangement(const SuiteBudget& b);
// Bessel-flow trace: Gaussian closed form, stationary-point residual, mass
// conservation, monotone alpha, product bound and its long-time limit.
SuiteResult suite_santalo_flow(const SuiteBudget& b);
// Radial extremizer search reaches the quadratic profile's product.
SuiteResult suite_extremizer_search(const SuiteBudget& b);
// Pointwise integrand identity on random strictly convex windows.
SuiteResult suite_integrand_identity(const SuiteBudget& b);

std::vector<SuiteResult> run_all_suites(const SuiteBudget& b);

// Lambda window for the 1D evolution comparison: a linear grid between the
// joint minimum of the two evolutions and 92% of the way to the smallest of
// their boundary values.  Past that cap the box truncates the sublevel sets
// and the comparison no longer models the unbounded-carrier statement (the
// rearrangement steepens once one branch leaves the box).  Empty when the
// window collapses, e.g. for data monotone across the box.
std::vector<double> evolution_lambda_window(const GridFunction1D& u, const GridFunction1D& v,
                                            int count);

// Per-instance lambda windows for the transform comparisons: high enough to
// clear the grid floor, low enough that the compared sublevel sets (after
// the slack shift / factor) stay strictly inside the carrier boxes, where
// box masses are honest.  A member is empty when its window collapses.
struct TransformWindows {
  std::vector<double> legendre;
  std::vector<double> polar;
};
TransformWindows transform_lambda_windows(const GridFunctionND& f, const GridFunctionND& fstar,
                                          const std::vector<Axis>& out_leg,
                                          const std::vector<Axis>& out_pol, int count);

}  // namespace ric
