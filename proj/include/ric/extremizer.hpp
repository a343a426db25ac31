#pragma once

#include <cstdint>
#include <vector>

#include "ric/profile.hpp"
#include "ric/transforms.hpp"

namespace ric {

// Psi(lambda r) with lambda chosen so the radial mass integral of e^{-Psi}
// is exactly 1: the scaling identity gives lambda = mass^{1/n} in closed
// form, so the residual is machine-level.
PLProfile normalize_profile(const PLProfile& psi, int n);

// Derivative-free search for profiles maximizing the scale-invariant product
// (n omega_n)^2 I(Psi) I(A Psi).  Profiles live on a fixed knot grid over
// [0, r_max] and are parameterized by their slope increments, so convexity is
// a box constraint (increments >= 0) and projection is a clamp.
struct SearchConfig {
  int n = 1;
  TransformKind transform = TransformKind::Legendre;
  int knots = 48;       // segment count of the search grid
  double r_max = 6.0;   // grid extent; iterates stay mass-normalized
  int budget = 5000;    // objective evaluations per restart
  int restarts = 8;
  double initial_step = 0.5;   // slope-increment step of the coordinate search
  double step_shrink = 0.5;    // applied after a full cycle without improvement
  double min_step = 1e-6;      // restart stops when the schedule falls below
  double floor_slope = 0.05;   // minimum terminal slope (keeps masses finite)
  std::uint64_t seed = 1;
};

struct SearchResult {
  PLProfile best;                   // mass-normalized maximizer found
  double best_value = 0.0;
  std::vector<double> history;      // accepted values of the winning restart
  double normalization_residual = 0.0;  // |mass(best) - 1|
  long evaluations = 0;             // objective evaluations across restarts
  int best_restart = 0;             // restarts are merged by value, ties to
                                    // the earlier (seed-ordered) restart
};

// Coordinate search, accepting only strict improvements; every candidate is
// renormalized before evaluation, so the recorded history is nondecreasing
// for the actual iterate sequence.  For the Legendre transform any evaluated
// value above (2 pi)^n + 1e-4 throws: the product bound is exact for the
// profile class, so a breach means defective transform or moment code, never
// a better maximizer.
SearchResult search_extremizer(const SearchConfig& cfg);

}  // namespace ric
