#include <cmath>
#include <vector>

#include "doctest.h"
#include "ric/envelope.hpp"
#include "ric/grid.hpp"
#include "ric/measure.hpp"
#include "ric/profile.hpp"
#include "ric/random.hpp"
#include "ric/xreal.hpp"

using namespace ric;

TEST_CASE("extended reals: absorption and rejection") {
  CHECK(xadd(1.0, kInf) == kInf);
  CHECK(xadd(-kInf, -3.0) == -kInf);
  CHECK_THROWS(xadd(kInf, -kInf));
  CHECK_THROWS(require_valid(std::nan("")));
  CHECK_THROWS(require_valid(-kInf));
  CHECK_NOTHROW(require_valid(-kInf, true));
  CHECK(xmin(2.0, kInf) == 2.0);
  CHECK(xmax(-kInf, 2.0) == 2.0);
}

TEST_CASE("axis nodes and validation") {
  Axis a{-5.0, 5.0, 201};
  CHECK(a.node(0) == -5.0);
  CHECK(a.node(200) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(a.h() == doctest::Approx(0.05));
  CHECK_THROWS(Axis{1.0, 0.0, 5}.validate());
  CHECK_THROWS(Axis{0.0, 1.0, 1}.validate());
}

TEST_CASE("grid carriers reject degenerate data") {
  Axis a{0.0, 1.0, 3};
  CHECK_THROWS(GridFunction1D(a, {kInf, kInf, kInf}));
  CHECK_THROWS(GridFunction1D(a, {0.0, std::nan(""), 1.0}));
  CHECK_THROWS(GridFunction1D(a, {0.0, 1.0}));
  GridFunction1D g(a, {kInf, 2.0, 5.0});
  CHECK(g.min_finite() == 2.0);
  CHECK(g.max_finite() == 5.0);
}

TEST_CASE("strict level sets") {
  Axis a{0.0, 4.0, 5};
  GridFunction1D g(a, {0.0, 1.0, 2.0, 3.0, kInf});
  CHECK(sublevel_set(g, 2.0).count() == 2);   // values 0, 1
  CHECK(superlevel_set(g, 2.0).count() == 2); // 3 and +inf
  CHECK(sublevel_set(g, kInf).count() == 4);
}

TEST_CASE("nd indexing round trip") {
  std::array<Axis, 3> axes{Axis{-1.0, 1.0, 5}, Axis{0.0, 2.0, 7}, Axis{}};
  GridFunctionND g = GridFunctionND::sample(
      2, axes, [](const std::array<double, 3>& p) { return p[0] + 10.0 * p[1]; });
  for (std::size_t k = 0; k < g.size(); k += 7) {
    auto idx = g.unravel(k);
    CHECK(g.index(idx) == k);
    auto p = g.point(k);
    CHECK(g[k] == doctest::Approx(p[0] + 10.0 * p[1]).epsilon(1e-14));
  }
  CHECK(g.cell_volume() == doctest::Approx(0.5 * (2.0 / 6.0)));
}

TEST_CASE("parabola envelope equals brute force") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 3 + (int)(rng.next_u64() % 40);
    std::vector<double> y(m), f(m);
    double pos = rng.uniform(-3.0, -2.0);
    for (int j = 0; j < m; ++j) {
      pos += rng.uniform(0.01, 0.4);
      y[j] = pos;
      f[j] = rng.next_double() < 0.15 ? kInf : rng.uniform(-1.0, 4.0);
    }
    f[(std::size_t)(rng.next_u64() % m)] = rng.uniform(-1.0, 1.0);  // at least one finite
    double w = rng.uniform(0.05, 8.0);
    int q = 25;
    std::vector<double> x(q);
    for (int i = 0; i < q; ++i) x[i] = rng.uniform(-4.0, 4.0);
    std::sort(x.begin(), x.end());
    std::vector<double> env = ParabolaEnvelope::evaluate(y, f, w, x);
    for (int i = 0; i < q; ++i) {
      double best = kInf;
      for (int j = 0; j < m; ++j)
        if (is_finite(f[j])) best = xmin(best, f[j] + w * (x[i] - y[j]) * (x[i] - y[j]));
      CHECK(env[(std::size_t)i] == best);
    }
  }
}

TEST_CASE("parabola envelope reports minimizers") {
  std::vector<double> y = {0.0, 1.0, 2.0};
  std::vector<double> f = {0.0, kInf, 0.5};
  std::vector<double> x = {0.1, 1.9};
  std::vector<int> arg;
  std::vector<double> env = ParabolaEnvelope::evaluate(y, f, 1.0, x, &arg);
  CHECK(arg[0] == 0);
  CHECK(arg[1] == 2);
  CHECK(env[1] == doctest::Approx(0.5 + 0.01).epsilon(1e-12));
}

TEST_CASE("profile eval, tail and validation") {
  PLProfile p = convex_profile({0.0, 1.0}, {0.0, 1.0}, 2.0);
  CHECK(p.eval(0.5) == doctest::Approx(0.5));
  CHECK(p.eval(3.0) == doctest::Approx(1.0 + 2.0 * 2.0));
  CHECK(p.max_slope() == 2.0);
  // decreasing slopes are not convex
  CHECK_THROWS(convex_profile({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0}, 0.5));
  // tail below the last chord
  CHECK_THROWS(convex_profile({0.0, 1.0}, {0.0, 1.0}, 0.5));
  PLProfile jump{{0.0, 1.0}, {0.0, 1.0}, kInf};
  jump.validate();
  CHECK(jump.eval(1.0) == 1.0);
  CHECK(jump.eval(1.0 + 1e-9) == kInf);
}

TEST_CASE("legendre conjugate of a single segment") {
  // Psi: slope 1 on [0,1], then slope 2. Conjugate: 0 on [0,1], slope 1 up to
  // s = 2, then +inf.
  PLProfile p = convex_profile({0.0, 1.0}, {0.0, 1.0}, 2.0);
  PLProfile lp = legendre_conjugate(p);
  CHECK(lp.eval(0.0) == doctest::Approx(0.0));
  CHECK(lp.eval(1.0) == doctest::Approx(0.0));
  CHECK(lp.eval(1.5) == doctest::Approx(0.5));
  CHECK(lp.eval(2.0) == doctest::Approx(1.0));
  CHECK(lp.eval(2.1) == kInf);
  // dense numeric sup agrees
  for (int i = 0; i <= 20; ++i) {
    double s = 0.1 * i;
    double sup = -kInf;
    for (int j = 0; j <= 4000; ++j) {
      double r = j * 0.002;
      sup = xmax(sup, s * r - p.eval(r));
    }
    if (s <= 2.0) CHECK(lp.eval(s) == doctest::Approx(sup).epsilon(1e-9));
  }
}

TEST_CASE("legendre biconjugation is the identity on profiles") {
  SplitMix64 seeds(99);
  for (int trial = 0; trial < 25; ++trial) {
    RandomConvexSpec spec;
    spec.seed = seeds.next_u64();
    spec.knot_count = 3 + (int)(seeds.next_u64() % 5);
    PLProfile p = random_profile(spec);
    PLProfile back = legendre_conjugate(legendre_conjugate(p));
    for (int i = 0; i <= 60; ++i) {
      double r = p.last_r() * i / 50.0;  // runs past the last knot
      CHECK(back.eval(r) == doctest::Approx(p.eval(r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadratic profile is nearly self-polar") {
  // sup_s (rs - 1)/(s^2/2) is attained at s = 2/r with value r^2/2.
  int K = 400;
  std::vector<double> r(K + 1), v(K + 1);
  for (int j = 0; j <= K; ++j) {
    r[(std::size_t)j] = 8.0 * j / K;
    v[(std::size_t)j] = 0.5 * r[(std::size_t)j] * r[(std::size_t)j];
  }
  PLProfile quad{r, v, 8.0};
  quad.validate();
  PLProfile pol = polar_conjugate(quad);
  for (int i = 3; i <= 30; ++i) {
    double x = 0.1 * i;  // argmax 2/x stays inside [0.25, 8]
    CHECK(pol.eval(x) == doctest::Approx(0.5 * x * x).epsilon(2e-3));
  }
}

TEST_CASE("polar conjugate conventions") {
  // A zero-valued knot at r_z > 0 forces +inf past 1/r_z.
  PLProfile flat{{0.0, 2.0}, {0.0, 0.0}, 1.0};
  flat.validate();
  PLProfile pol = polar_conjugate(flat);
  // below 1/r_z the sup comes from the linear tail: (rs-1)/(s-2) -> r as
  // s grows, so the tail-limit line r / tail_slope carries the envelope
  CHECK(pol.eval(0.4) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(pol.eval(0.8) == kInf);  // (0.8 * 2 - 1) / 0 with positive numerator
}

TEST_CASE("polar conjugate against dense numeric sup") {
  SplitMix64 seeds(31);
  for (int trial = 0; trial < 10; ++trial) {
    RandomConvexSpec spec;
    spec.seed = seeds.next_u64();
    spec.knot_count = 4;
    PLProfile p = random_profile(spec);
    // keep values strictly positive off zero so no +inf wall appears
    for (std::size_t i = 1; i < p.v.size(); ++i) CHECK(p.v[i] > 0.0);
    PLProfile pol = polar_conjugate(p);
    for (int i = 0; i <= 12; ++i) {
      double x = 0.05 + 0.1 * i;
      double sup = 0.0;  // s -> 0+ candidates are negative and dropped
      for (int j = 1; j <= 60000; ++j) {
        double s = j * 0.002;
        double ps = p.eval(s);
        if (ps > 0.0) sup = xmax(sup, (x * s - 1.0) / ps);
      }
      // Past the last knot the ratio is a Mobius function of s, so its sup
      // over the tail is max(value at the cut, the s -> inf limit).
      sup = xmax(sup, x / p.tail_slope);
      CHECK(pol.eval(x) == doctest::Approx(sup).epsilon(5e-3));
    }
  }
}

TEST_CASE("moment integral equals quadrature") {
  SplitMix64 seeds(7);
  for (int trial = 0; trial < 12; ++trial) {
    RandomConvexSpec spec;
    spec.seed = seeds.next_u64();
    spec.knot_count = 3 + (int)(seeds.next_u64() % 5);
    PLProfile p = random_profile(spec);
    for (int n = 1; n <= 3; ++n) {
      double closed = moment_integral(p, n);
      // Simpson far past the last knot; the tail decays like e^{-m r}
      double R = p.last_r() + 60.0 / p.tail_slope;
      int steps = 200000;
      double hq = R / steps, sum = 0.0;
      for (int i = 0; i <= steps; ++i) {
        double rr = i * hq;
        double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * std::exp(-p.eval(rr)) * std::pow(rr, n - 1);
      }
      sum *= hq / 3.0;
      CHECK(closed == doctest::Approx(sum).epsilon(1e-8));
    }
  }
}

TEST_CASE("moment integral input guards") {
  PLProfile flat{{0.0, 1.0}, {0.0, 0.5}, 0.0};
  CHECK_THROWS(moment_integral(flat, 1));  // nonconvergent tail
  PLProfile jump{{0.0, 1.0}, {0.0, 0.5}, kInf};
  CHECK(moment_integral(jump, 1) ==
        doctest::Approx(2.0 * (1.0 - std::exp(-0.5))).epsilon(1e-12));
}

TEST_CASE("exp_poly_integral matches quadrature including the series branch") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    int k = (int)(rng.next_u64() % 3);
    double a = (trial % 3 == 0) ? rng.uniform(-1e-9, 1e-9) : rng.uniform(-2.0, 3.0);
    double b = rng.uniform(-1.0, 1.0);
    double r0 = rng.uniform(0.0, 2.0);
    double r1 = r0 + rng.uniform(0.1, 2.0);
    double closed = exp_poly_integral(k, a, b, r0, r1);
    int steps = 20000;
    double hq = (r1 - r0) / steps, sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
      double r = r0 + i * hq;
      double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sum += w * std::pow(r, k) * std::exp(-(a * r + b));
    }
    sum *= hq / 3.0;
    CHECK(closed == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("scale_arg composes evaluation") {
  RandomConvexSpec spec;
  spec.seed = 12;
  PLProfile p = random_profile(spec);
  PLProfile q = scale_arg(p, 1.7);
  for (int i = 0; i <= 40; ++i) {
    double r = 0.1 * i;
    CHECK(q.eval(r) == doctest::Approx(p.eval(1.7 * r)).epsilon(1e-12));
  }
}

TEST_CASE("normal quantile inverts the cdf") {
  for (double x = -5.5; x <= 5.5; x += 0.25)
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-9));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(normal_quantile(0.0));
  CHECK_THROWS(normal_quantile(1.0));
}

TEST_CASE("gaussian cell masses tile the line") {
  MeasureSpec mu = MeasureSpec::gaussian1d();
  Axis a{-10.0, 10.0, 401};
  double total = 0.0;
  for (int i = 0; i < a.n; ++i) total += cell_mass_1d(mu, a.node(i), a.h());
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ball mass and radius round trip") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(ball_mass(n, ball_radius(n, 2.7)) == doctest::Approx(2.7).epsilon(1e-13));
    CHECK(ball_radius(n, unit_ball_volume(n)) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 g(0);
  CHECK(g.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(g.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(g.next_u64() == 0x06C45D188009454FULL);
  SplitMix64 g2(42);
  CHECK(g2.next_u64() == 0xBDD732262FEB6E95ULL);
  CHECK(g2.next_u64() == 0x28EFE333B266F103ULL);
  SplitMix64 u(9001);
  for (int i = 0; i < 1000; ++i) {
    double d = u.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("random instances are deterministic and convex") {
  RandomConvexSpec spec;
  spec.seed = 313;
  spec.knot_count = 6;
  spec.slope_scale = 2.0;
  spec.asymmetry = 0.5;
  spec.translation = 0.7;
  Axis a{-5.0, 5.0, 201};
  GridFunction1D f1 = random_convex_1d(spec, a);
  GridFunction1D f2 = random_convex_1d(spec, a);
  for (int i = 0; i < a.n; ++i) CHECK(f1[i] == f2[i]);
  // max-of-lines samples have nonnegative second differences
  for (int i = 1; i + 1 < a.n; ++i)
    CHECK(f1[i + 1] - 2.0 * f1[i] + f1[i - 1] >= -1e-10);
  // documented Lipschitz budget
  double lip = 0.0;
  for (int i = 1; i < a.n; ++i) lip = xmax(lip, std::fabs(f1[i] - f1[i - 1]) / a.h());
  CHECK(lip <= spec.slope_scale * (1.0 + spec.asymmetry) + 1e-9);
}

TEST_CASE("random even nd instances vanish at the origin and are even") {
  RandomConvexSpec spec;
  spec.seed = 88;
  spec.knot_count = 5;
  std::array<Axis, 3> axes{Axis{-3.0, 3.0, 25}, Axis{-3.0, 3.0, 25}, Axis{}};
  GridFunctionND f = random_convex_even_nd(spec, 2, axes);
  std::array<int, 3> center{12, 12, 0};
  CHECK(f[f.index(center)] == 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto idx = f.unravel(k);
    std::array<int, 3> mirror{24 - idx[0], 24 - idx[1], 0};
    CHECK(f[k] == doctest::Approx(f[f.index(mirror)]).epsilon(1e-12));
    CHECK(f[k] >= 0.0);
  }
}

TEST_CASE("random profiles validate") {
  SplitMix64 seeds(5150);
  for (int trial = 0; trial < 30; ++trial) {
    RandomConvexSpec spec;
    spec.seed = seeds.next_u64();
    spec.knot_count = 3 + (int)(seeds.next_u64() % 5);
    spec.slope_scale = 0.5 + 2.5 * seeds.next_double();
    PLProfile p = random_profile(spec);
    CHECK_NOTHROW(p.validate());
    CHECK(p.r.front() == 0.0);
    CHECK(p.tail_slope > 0.0);
  }
}
