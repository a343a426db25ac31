#include "ric/extremizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ric/flow.hpp"
#include "ric/random.hpp"

namespace ric {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kBoundSlack = 1e-4;  // pinned: any Legendre value past this is a defect

double product_bound(int n) {
  double b = 1.0;
  for (int i = 0; i < n; ++i) b *= kTwoPi;
  return b;
}

// Slope-increment coordinates on a fixed grid. d has knots+1 entries:
// d[0..knots-1] are the per-segment slope increments, d[knots] the extra
// terminal increment. All entries are >= 0; the terminal slope is floored.
struct Coords {
  int knots;
  double r_max;
  double floor_slope;

  PLProfile build(const std::vector<double>& d) const {
    double dr = r_max / knots;
    PLProfile p;
    p.r.resize(knots + 1);
    p.v.resize(knots + 1);
    p.r[0] = 0.0;
    p.v[0] = 0.0;
    double slope = 0.0;
    for (int j = 0; j < knots; ++j) {
      slope += d[j];
      p.r[j + 1] = (j + 1) * dr;
      p.v[j + 1] = p.v[j] + slope * dr;
    }
    p.tail_slope = std::max(slope + d[knots], floor_slope);
    return p;
  }
};

struct Objective {
  Coords coords;
  int n;
  TransformKind transform;
  long evaluations = 0;

  // The product is invariant under argument scaling, so candidates are scored
  // exactly as built (no renormalization between iterates -- resampling a
  // normalized profile back onto the grid would leak value through
  // interpolation); the best profile is normalized once at the end.
  double eval(const std::vector<double>& d) {
    double value = product_functional(coords.build(d), n, transform);
    ++evaluations;
    if (transform == TransformKind::Legendre && value > product_bound(n) + kBoundSlack) {
      std::ostringstream msg;
      msg << "search_extremizer: Legendre product " << value << " exceeds the exact bound "
          << product_bound(n) << " by more than " << kBoundSlack
          << "; the transform or moment evaluation is defective";
      throw std::runtime_error(msg.str());
    }
    return value;
  }
};

}  // namespace

PLProfile normalize_profile(const PLProfile& psi, int n) {
  psi.validate();
  require(n >= 1 && n <= 3, "normalize_profile: n must be 1..3");
  double m = moment_integral(psi, n);
  require(m > 0.0 && is_finite(m), "normalize_profile: mass must be positive and finite");
  return scale_arg(psi, std::pow(m, 1.0 / n));
}

SearchResult search_extremizer(const SearchConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 3, "search_extremizer: n must be 1..3");
  require(cfg.transform == TransformKind::Legendre || cfg.transform == TransformKind::Polar,
          "search_extremizer: transform must be Legendre or Polar");
  require(cfg.knots >= 4, "search_extremizer: need at least 4 segments");
  require(cfg.r_max > 0.0, "search_extremizer: r_max must be positive");
  require(cfg.budget >= 10 && cfg.restarts >= 1, "search_extremizer: empty budget");
  require(cfg.initial_step > 0.0 && cfg.step_shrink > 0.0 && cfg.step_shrink < 1.0 &&
              cfg.min_step > 0.0,
          "search_extremizer: bad step schedule");
  require(cfg.floor_slope > 0.0, "search_extremizer: terminal slope floor must be positive");

  Coords coords{cfg.knots, cfg.r_max, cfg.floor_slope};
  Objective obj{coords, cfg.n, cfg.transform, 0};
  const int dims = cfg.knots + 1;

  SearchResult result;
  result.best_value = -kInf;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    SplitMix64 rng(cfg.seed + 0x9e37ULL * (std::uint64_t)restart);
    std::vector<double> d(dims);
    if (restart == 0) {
      // Deterministic start: slope increments of the exact chords of r^2/2 on
      // the grid (first/tail half-increments), so history[0] is the product at
      // the discrete quadratic profile itself.
      double dr = cfg.r_max / cfg.knots;
      d[0] = 0.5 * dr;
      for (int j = 1; j < cfg.knots; ++j) d[j] = dr;
      d[cfg.knots] = 0.5 * dr;
    } else {
      for (int j = 0; j < cfg.knots; ++j)
        d[j] = (rng.next_double() < 0.3) ? 0.0 : rng.uniform(0.0, 6.0 / cfg.knots);
      d[cfg.knots] = rng.uniform(0.0, 1.0);
    }

    std::vector<double> history;
    double value = obj.eval(d);
    history.push_back(value);

    double step = cfg.initial_step;
    int used = 1;
    while (used < cfg.budget && step >= cfg.min_step) {
      bool improved_cycle = false;
      for (int j = 0; j < dims && used < cfg.budget; ++j) {
        for (double sign : {+1.0, -1.0}) {
          if (used >= cfg.budget) break;
          std::vector<double> trial = d;
          trial[j] = std::max(trial[j] + sign * step, 0.0);
          if (trial[j] == d[j]) continue;  // clamped into the same point
          double tv = obj.eval(trial);
          ++used;
          if (tv > value) {
            d = std::move(trial);
            value = tv;
            history.push_back(value);
            improved_cycle = true;
            break;  // take the first improving direction of this coordinate
          }
        }
      }
      if (!improved_cycle) step *= cfg.step_shrink;
    }

    if (value > result.best_value) {
      result.best_value = value;
      result.best = normalize_profile(coords.build(d), cfg.n);
      result.history = std::move(history);
      result.best_restart = restart;
    }
  }

  result.evaluations = obj.evaluations;
  result.normalization_residual = std::fabs(moment_integral(result.best, cfg.n) - 1.0);
  return result;
}

}  // namespace ric
