#include "ric/random.hpp"

#include <cmath>

namespace ric {

PLProfile random_profile(const RandomConvexSpec& spec) {
  SplitMix64 rng(spec.seed);
  int K = spec.knot_count < 2 ? 2 : spec.knot_count;
  PLProfile p;
  p.r.resize(K);
  p.v.resize(K);
  p.r[0] = 0.0;
  p.v[0] = 0.0;
  double r = 0.0;
  double slope = 0.0;
  // first increment may be zero-ish; keep a floor so the tail is superlinear
  for (int i = 1; i < K; ++i) {
    r += rng.uniform(0.2, 1.0);
    slope += rng.uniform(0.05, 1.0) * spec.slope_scale;
    p.r[i] = r;
    p.v[i] = p.v[i - 1] + slope * (p.r[i] - p.r[i - 1]);
  }
  p.tail_slope = slope + rng.uniform(0.1, 1.0) * spec.slope_scale;
  p.validate();
  return p;
}

GridFunction1D random_convex_1d(const RandomConvexSpec& spec, const Axis& axis) {
  SplitMix64 rng(spec.seed);
  int J = spec.knot_count < 2 ? 2 : spec.knot_count;
  // supporting lines through a drifting anchor; slopes split into a negative
  // and a positive fan so the function is coercive on the box
  double c = spec.translation;
  std::vector<double> a(J), b(J);
  for (int j = 0; j < J; ++j) {
    double t = (J == 1) ? 0.5 : (double)j / (J - 1);  // -1 .. 1 fan
    double base = -1.0 + 2.0 * t;
    double skew = 1.0 + spec.asymmetry * base;
    a[j] = base * spec.slope_scale * skew;
    b[j] = rng.uniform(-0.5, 0.0) * spec.slope_scale;
  }
  std::vector<double> v(axis.n);
  for (int i = 0; i < axis.n; ++i) {
    double x = axis.node(i) - c;
    double m = -kInf;
    for (int j = 0; j < J; ++j) m = xmax(m, a[j] * x + b[j]);
    v[i] = m;
  }
  // lift so the minimum is >= 0 (rearrangement preconditions want f >= 0)
  double lo = kInf;
  for (double x : v) lo = xmin(lo, x);
  for (double& x : v) x -= lo;
  return GridFunction1D(axis, std::move(v));
}

GridFunctionND random_convex_even_nd(const RandomConvexSpec& spec, int dim,
                                     const std::array<Axis, 3>& axes) {
  for (int d = 0; d < dim; ++d) {
    require(axes[d].lo == -axes[d].hi, "random_convex_even_nd: axes must be symmetric");
    require(axes[d].n % 2 == 1, "random_convex_even_nd: need odd node counts");
  }
  SplitMix64 rng(spec.seed);
  int J = spec.knot_count < 1 ? 1 : spec.knot_count;
  std::vector<std::array<double, 3>> a(J);
  std::vector<double> b(J);
  for (int j = 0; j < J; ++j) {
    double norm2 = 0.0;
    for (int d = 0; d < dim; ++d) {
      a[j][d] = rng.uniform(-1.0, 1.0);
      norm2 += a[j][d] * a[j][d];
    }
    double norm = std::sqrt(norm2);
    double target = rng.uniform(0.3, 1.0) * spec.slope_scale;
    for (int d = 0; d < dim; ++d) a[j][d] *= (norm > 0 ? target / norm : 0.0);
    b[j] = -rng.uniform(0.0, 1.5);
  }
  return GridFunctionND::sample(dim, axes, [&](const std::array<double, 3>& x) {
    double m = 0.0;  // the max(0, .) branch gives f(0) = 0, f >= 0, even
    for (int j = 0; j < J; ++j) {
      double dot = 0.0;
      for (int d = 0; d < dim; ++d) dot += a[j][d] * x[d];
      m = xmax(m, std::fabs(dot) + b[j]);
    }
    return m;
  });
}

std::vector<double> random_support_samples(SplitMix64& rng, int m) {
  require(m >= 8 && m % 2 == 0, "random_support_samples: m must be even and >= 8");
  double c0 = rng.uniform(0.6, 1.6);
  int modes = 3;
  std::vector<double> amp(modes), phase(modes);
  for (int k = 0; k < modes; ++k) {
    // small relative amplitudes keep h positive and the body fat enough for
    // stable polygon duality
    amp[k] = rng.uniform(0.0, 0.12) * c0 / (k + 1);
    phase[k] = rng.uniform(0.0, 6.283185307179586477);
  }
  std::vector<double> h(m);
  for (int j = 0; j < m; ++j) {
    double th = 6.283185307179586477 * j / m;
    double s = c0;
    for (int k = 0; k < modes; ++k) s += amp[k] * std::cos(2.0 * (k + 1) * th + phase[k]);
    h[j] = s;
  }
  // exact pi-periodicity: average the two half-turn samples (cos(2k .) is
  // already periodic; this guards against rounding)
  for (int j = 0; j < m / 2; ++j) {
    double avg = 0.5 * (h[j] + h[j + m / 2]);
    h[j] = avg;
    h[j + m / 2] = avg;
  }
  return h;
}

}  // namespace ric
