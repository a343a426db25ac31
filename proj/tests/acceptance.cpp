// Full-budget acceptance gate.  Runs every batch suite at its complete
// instance count and reduces each to one verdict line; exit status is zero
// only when all nine pass.  Tolerances are pinned inside the suites and
// restated in the labels so a bare log is self-describing.  The first suite
// additionally carries a wall-clock budget, checked against its own timer so
// build-machine noise elsewhere cannot mask a real slowdown.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ric/suites.hpp"

namespace {

const ric::SuiteResult* find(const std::vector<ric::SuiteResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return &r;
  return nullptr;
}

struct Gate {
  const char* suite;
  const char* label;
  double time_budget;  // seconds; 0 disables the wall-clock check
};

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  ric::SuiteBudget budget;  // full scale
  budget.scale_num = 1;
  budget.scale_den = 1;
  budget.seed = 7;

  const std::vector<ric::SuiteResult> results = ric::run_all_suites(budget);

  const Gate gates[] = {
      {"infconv-comparison",
       "evolved vs rearranged-evolved sublevel masses, distance and quadratic hopf-lax costs, "
       "slack kappa*h at every level, under 60s",
       60.0},
      {"sublevel-decomposition",
       "rational enlargement decomposition: residual nonincreasing over denominator budgets "
       "4..32, <=2 cells per boundary component at 32",
       0.0},
      {"transform-comparison",
       "legendre/polar sublevel comparison on n=2 grids with slack-shifted levels; det-1 "
       "quadratic pairs reproduce equality within slack",
       0.0},
      {"santalo-bodies",
       "symmetric support bodies: |K||K polar| <= pi^2 + 1e-3, rearranged-polar bound + 1e-3, "
       "disc product within 1e-6 of pi^2",
       0.0},
      {"hopflax-evolution",
       "quadratic hopf-lax evolution: rearranged flow dominates across 8 times x 64 levels; "
       "translated instances reproduce equality within slack",
       0.0},
      {"lipschitz-rearrangement",
       "slope contraction under rearrangement (L + C*h) and enlargement characterization: "
       "holds at L, fails at 0.9L on every instance",
       0.0},
      {"santalo-flow",
       "bessel flow: gaussian closed form 1e-6, stationary residual < 1e-4, mass 1e-5, alpha "
       "nondecreasing 1e-6, product <= (2pi)^n + 1e-5 and within 1% at t=50",
       0.0},
      {"extremizer-search",
       "radial extremizer search: n=1 >= 0.99*2pi with conjugate within 0.05 of r^2/2, "
       "n=2 >= 0.98*(2pi)^2, polar history monotone above quadratic baseline",
       0.0},
      {"integrand-identity",
       "pointwise flow-integrand identity: deviation < 1e-12 and nonnegative right-hand side "
       "on random strictly convex windows",
       0.0},
  };

  int failures = 0;
  for (const Gate& g : gates) {
    const ric::SuiteResult* r = find(results, g.suite);
    if (r == nullptr) {
      std::printf("[FAIL] %-24s missing suite result\n", g.suite);
      ++failures;
      continue;
    }
    bool pass = r->pass;
    std::string note = r->detail;
    if (g.time_budget > 0.0 && r->seconds >= g.time_budget) {
      pass = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "wall time %.1fs exceeds %.0fs budget", r->seconds,
                    g.time_budget);
      if (!note.empty()) note += "; ";
      note += buf;
    }
    std::printf("[%s] %-24s %s (instances=%ld failures=%ld worst=%.3g %.1fs)%s%s\n",
                pass ? "PASS" : "FAIL", r->name.c_str(), g.label, r->instances, r->failures,
                r->worst, r->seconds, note.empty() ? "" : " -- ", note.c_str());
    if (!pass) ++failures;
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/9 acceptance checks passed in %.1fs\n", 9 - failures, total);
  return failures == 0 ? 0 : 1;
}
