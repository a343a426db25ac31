#include <cmath>
#include <vector>

#include "doctest.h"
#include "ric/flow.hpp"
#include "ric/profile.hpp"
#include "ric/random.hpp"

using namespace ric;

namespace {
constexpr double kPi = 3.14159265358979323846;

PLProfile test_profile(std::uint64_t seed) {
  RandomConvexSpec spec;
  spec.seed = seed;
  spec.knot_count = 5;
  spec.slope_scale = 2.0;
  return random_profile(spec);
}
}  // namespace

TEST_CASE("gaussian profile evolves by the closed form in every dimension") {
  PLProfile g = gaussian_profile(12.0, 16384);
  for (int n : {1, 2, 3}) {
    double tol = n == 1 ? 1e-6 : 1e-5;
    for (double t : {0.1, 1.0, 5.0}) {
      BesselEvaluator ev(g, n, t, {});
      double s = 1.0 + 2.0 * t;
      double worst = 0.0;
      for (int i = 0; i <= 40; ++i) {
        double r = 0.1 * i;
        double want = r * r / (2.0 * s) + 0.5 * n * std::log(s);
        worst = xmax(worst, std::fabs(ev.value(r) - want));
      }
      CHECK(worst <= tol);
    }
  }
}

TEST_CASE("evaluator jets match central differences of the value") {
  for (int n : {1, 2, 3}) {
    PLProfile psi = test_profile(17 + (std::uint64_t)n);
    BesselEvaluator ev(psi, n, 0.4, {});
    for (double r : {0.3, 0.9, 1.7, 2.6}) {
      BesselEvaluator::Jet j = ev.jet(r);
      CHECK(j.value == doctest::Approx(ev.value(r)).epsilon(1e-12));
      double d = 1e-4;
      double fd1 = (ev.value(r + d) - ev.value(r - d)) / (2.0 * d);
      CHECK(j.d1 == doctest::Approx(fd1).epsilon(1e-5));
      double d2 = 1e-3;
      double fd2 = (ev.value(r + d2) - 2.0 * ev.value(r) + ev.value(r - d2)) / (d2 * d2);
      CHECK(j.d2 == doctest::Approx(fd2).epsilon(1e-4).scale(1.0 + std::fabs(j.d2)));
    }
  }
}

TEST_CASE("two short evolutions compose into one long one") {
  PLProfile psi = test_profile(23);
  double t1 = 0.3, t2 = 0.5;
  BesselEvaluator first(psi, 1, t1, {});
  // refit the evolved profile on a fine uniform grid, restoring convexity
  // against quadrature noise with an isotonic pass over the chord slopes
  int m = 1024;
  double R = xmin(first.query_radius(), 12.0);
  std::vector<double> r((std::size_t)m + 1), v((std::size_t)m + 1);
  for (int i = 0; i <= m; ++i) {
    r[(std::size_t)i] = R * i / m;
    v[(std::size_t)i] = first.value(r[(std::size_t)i]);
  }
  std::vector<double> slope((std::size_t)m);
  double prev = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = (v[(std::size_t)i + 1] - v[(std::size_t)i]) / (R / m);
    prev = xmax(prev, s);
    slope[(std::size_t)i] = prev;
  }
  for (int i = 0; i < m; ++i)
    v[(std::size_t)i + 1] = v[(std::size_t)i] + slope[(std::size_t)i] * (R / m);
  PLProfile fit{r, v, slope.back()};
  fit.validate();

  BesselEvaluator second(fit, 1, t2, {});
  BesselEvaluator direct(psi, 1, t1 + t2, {});
  for (int i = 0; i <= 30; ++i) {
    double rr = 4.0 * i / 30.0;
    CHECK(second.value(rr) == doctest::Approx(direct.value(rr)).epsilon(5e-5));
  }
}

TEST_CASE("short times recover the initial profile") {
  PLProfile psi = test_profile(29);
  BesselEvaluator ev(psi, 1, 1e-4, {});
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    double r = psi.last_r() * i / 60.0;
    worst = xmax(worst, std::fabs(ev.value(r) - psi.eval(r)));
  }
  CHECK(worst <= 0.02);  // sqrt(t) * slope-jump smoothing at the kinks
  // Away from the kinks the profile is linear and the value moves at the O(1)
  // rate the generator dictates there (slope^2/2-type terms), so at t = 1e-4
  // the genuine drift is a few 1e-4 -- much smaller than the kink smoothing
  // but not zero.
  double mid = 0.5 * (psi.r[0] + psi.r[1]);
  CHECK(std::fabs(ev.value(mid) - psi.eval(mid)) <= 5e-4);
}

TEST_CASE("stationary-dual residual is small and stays small as dt shrinks") {
  PLProfile psi = test_profile(41);
  for (int n : {1, 2}) {
    double r1 = cordero_residual(psi, n, 0.5, 0.01);
    double r2 = cordero_residual(psi, n, 0.5, 0.005);
    CHECK(r1 < 1e-3);
    CHECK(r2 < 1e-4);
  }
}

TEST_CASE("integrand identity: two evaluation orders and a sign certificate") {
  // V strictly convex on a uniform window: deviation at rounding level, right
  // side nonnegative.
  int m = 25;
  std::vector<double> r((std::size_t)m), v((std::size_t)m);
  for (int i = 0; i < m; ++i) {
    double x = 0.5 + 2.0 * i / (m - 1);
    r[(std::size_t)i] = x;
    v[(std::size_t)i] = 0.8 * x * x + 0.3 * x + 0.2 * std::cosh(0.9 * (x - 0.4));
  }
  IdentityReport rep = integrand_identity_check(r, v, 3);
  CHECK(rep.pass);
  CHECK(rep.max_deviation <= 1e-12);
  CHECK(rep.min_rhs >= 0.0);

  // concave data flips the certificate sign
  std::vector<double> w((std::size_t)m);
  for (int i = 0; i < m; ++i) w[(std::size_t)i] = 10.0 - v[(std::size_t)i];
  IdentityReport bad = integrand_identity_check(r, w, 3);
  CHECK(!bad.pass);
  CHECK(bad.min_rhs < 0.0);

  // non-uniform radii are rejected
  std::vector<double> ru = r;
  ru[7] += 0.01;
  CHECK_THROWS(integrand_identity_check(ru, v, 3));
}

TEST_CASE("flow trace of the gaussian is stationary") {
  PLProfile g = gaussian_profile(12.0, 16384);
  FlowTrace tr = flow_trace(g, 1, {0.0, 0.5, 2.0}, TransformKind::Legendre);
  CHECK(tr.pass);
  CHECK(tr.mass_ok);
  CHECK(tr.alpha_ok);
  CHECK(tr.mass_rel_drift <= kFlowMassTol);
  for (const FlowState& st : tr.states) {
    CHECK(st.convex_ok);
    CHECK(st.product == doctest::Approx(2.0 * kPi).epsilon(1e-4));
  }
  // alpha of the standard gaussian: integral of e^{-r^2/2} = sqrt(pi/2)
  CHECK(tr.states.front().alpha == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-6));
}

TEST_CASE("flow trace of a random profile keeps its invariants") {
  PLProfile psi = test_profile(59);
  FlowTrace tr = flow_trace(psi, 2, {0.0, 0.25, 1.0}, TransformKind::Legendre, true);
  CHECK(tr.mass_ok);
  CHECK(tr.alpha_ok);
  CHECK(tr.states.size() == 3);
  REQUIRE(tr.residuals.size() == 2);  // one per positive time
  for (double res : tr.residuals) CHECK(res < 1e-4);
  double bound = std::pow(2.0 * kPi, 2);
  for (const FlowState& st : tr.states) CHECK(st.product <= bound + 1e-5);
}

TEST_CASE("product functional: closed form at the gaussian, scale invariance") {
  PLProfile g = gaussian_profile(12.0, 16384);
  CHECK(product_functional(g, 1, TransformKind::Legendre) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-6));
  CHECK(product_functional(g, 2, TransformKind::Legendre) ==
        doctest::Approx(std::pow(2.0 * kPi, 2)).epsilon(1e-6));
  PLProfile psi = test_profile(61);
  for (TransformKind kind : {TransformKind::Legendre, TransformKind::Polar}) {
    double base = product_functional(psi, 1, kind);
    CHECK(product_functional(scale_arg(psi, 1.7), 1, kind) ==
          doctest::Approx(base).epsilon(1e-11));
    CHECK(product_functional(scale_arg(psi, 0.4), 1, kind) ==
          doctest::Approx(base).epsilon(1e-11));
  }
}

TEST_CASE("sphere factors") {
  CHECK(sphere_factor(1) == doctest::Approx(2.0));
  CHECK(sphere_factor(2) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_factor(3) == doctest::Approx(4.0 * kPi));
}

TEST_CASE("bessel_semigroup sampling stays convex and anchored") {
  PLProfile psi = test_profile(67);
  GridFunction1D u = bessel_semigroup(psi, 0.7, 1, 257);
  for (int i = 1; i + 1 < u.size(); ++i)
    CHECK(u[i + 1] - 2.0 * u[i] + u[i - 1] >= -1e-7);
  CHECK(u[0] == doctest::Approx(BesselEvaluator(psi, 1, 0.7, {}).value(0.0)).epsilon(1e-12));
}
