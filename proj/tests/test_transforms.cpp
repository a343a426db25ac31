#include <cmath>
#include <vector>

#include "doctest.h"
#include "ric/body.hpp"
#include "ric/grid.hpp"
#include "ric/measure.hpp"
#include "ric/random.hpp"
#include "ric/rearrange.hpp"
#include "ric/suites.hpp"
#include "ric/transforms.hpp"

using namespace ric;

namespace {
constexpr double kPi = 3.14159265358979323846;

GridFunctionND even_instance(std::uint64_t seed, int n, int nodes, double slope = 0.6) {
  RandomConvexSpec spec;
  spec.seed = seed;
  spec.knot_count = 5;
  spec.slope_scale = slope;
  std::array<Axis, 3> axes{};
  for (int d = 0; d < n; ++d) axes[(std::size_t)d] = Axis{-4.0, 4.0, nodes};
  return random_convex_even_nd(spec, n, axes);
}
}  // namespace

TEST_CASE("1d legendre fast path equals the full-lattice oracle") {
  Axis in{-5.0, 5.0, 201}, out{-3.0, 3.0, 61};
  RandomConvexSpec spec;
  spec.seed = 4;
  spec.knot_count = 6;
  spec.slope_scale = 2.5;
  spec.translation = 0.8;
  GridFunction1D f = random_convex_1d(spec, in);
  GridFunction1D a = legendre_grid(f, out);
  GridFunction1D b = legendre_grid_oracle(f, out);
  for (int i = 0; i < out.n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("2d legendre fast path equals the full-lattice oracle") {
  std::vector<Axis> out(2, Axis{-2.0, 2.0, 33});
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    GridFunctionND f = even_instance(seed, 2, 65);
    GridFunctionND a = legendre_grid(f, out);
    GridFunctionND b = legendre_grid_oracle(f, out);
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  }
}

TEST_CASE("legendre handles +inf samples") {
  // A function finite on two nodes only: conjugate is the max of two lines.
  Axis in{-1.0, 1.0, 5}, out{-2.0, 2.0, 9};
  std::vector<double> v = {kInf, 1.0, kInf, 0.5, kInf};  // at y=-0.5 and y=0.5
  GridFunction1D f(in, std::move(v));
  GridFunction1D lf = legendre_grid(f, out);
  for (int i = 0; i < out.n; ++i) {
    double x = out.node(i);
    double want = xmax(-0.5 * x - 1.0, 0.5 * x - 0.5);
    CHECK(lf[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("legendre of a sampled quadratic is the dual quadratic") {
  std::array<Axis, 3> axes{Axis{-4.0, 4.0, 129}, Axis{-4.0, 4.0, 129}, Axis{}};
  GridFunctionND f = GridFunctionND::sample(2, axes, [](const std::array<double, 3>& p) {
    return 0.5 * (p[0] * p[0] + p[1] * p[1]);
  });
  std::vector<Axis> out(2, Axis{-1.5, 1.5, 49});
  GridFunctionND lf = legendre_grid(f, out);
  for (std::size_t k = 0; k < lf.size(); ++k) {
    auto p = lf.point(k);
    double want = 0.5 * (p[0] * p[0] + p[1] * p[1]);
    CHECK(lf[k] == doctest::Approx(want).epsilon(2e-3));
  }
}

TEST_CASE("legendre reverses order and biconjugation hugs convex samples") {
  std::vector<Axis> out(2, Axis{-2.0, 2.0, 33});
  GridFunctionND f = even_instance(21, 2, 65);
  GridFunctionND g = f;
  for (std::size_t k = 0; k < g.size(); ++k) g[k] += 0.3;
  GridFunctionND lf = legendre_grid(f, out);
  GridFunctionND lg = legendre_grid(g, out);
  for (std::size_t k = 0; k < lf.size(); ++k) CHECK(lf[k] >= lg[k]);

  std::vector<Axis> in_axes(2, Axis{-4.0, 4.0, 65});
  GridFunctionND back = legendre_grid(lf, in_axes);
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k] <= f[k] + 1e-9);
    CHECK(back[k] >= f[k] - 0.3);  // conjugate-grid snap, bounded by |x|_1 h_out / 2
  }
}

TEST_CASE("t-transform with identity map is the legendre transform") {
  std::vector<Axis> out(2, Axis{-2.0, 2.0, 17});
  GridFunctionND f = even_instance(31, 2, 33);
  GridFunctionND tt = t_transform(f, MonotoneMap::identity(), out);
  GridFunctionND lf = legendre_grid_oracle(f, out);
  for (std::size_t k = 0; k < tt.size(); ++k)
    CHECK(tt[k] == doctest::Approx(lf[k]).epsilon(1e-12));
}

TEST_CASE("t-transform is nonnegative and monotone in the map") {
  std::vector<Axis> out(2, Axis{-2.0, 2.0, 17});
  GridFunctionND f = even_instance(32, 2, 33);
  MonotoneMap rho = MonotoneMap::from_table({-1.0, 0.0, 1.0}, {-0.5, 0.0, 1.0});
  GridFunctionND tt = t_transform(f, rho, out);
  for (std::size_t k = 0; k < tt.size(); ++k) CHECK(tt[k] >= 0.0);
}

TEST_CASE("polar transform conventions on a hand instance") {
  // f finite at 0 and +-1 only: polar(x) = max(|x| - 1, 0) with the
  // finite/+inf = 0 and pinned-origin conventions.
  Axis ax{-2.0, 2.0, 5};
  std::array<Axis, 3> axes{ax, Axis{}, Axis{}};
  GridFunctionND f(1, axes, {kInf, 1.0, 0.0, 1.0, kInf});
  std::vector<Axis> out(1, ax);
  GridFunctionND pf = polar_transform(f, out);
  std::vector<double> want = {1.0, 0.0, 0.0, 0.0, 1.0};
  for (std::size_t k = 0; k < pf.size(); ++k) CHECK(pf[k] == want[k]);
}

TEST_CASE("polar transform rejects asymmetric input") {
  std::array<Axis, 3> axes{Axis{-2.0, 2.0, 5}, Axis{}, Axis{}};
  GridFunctionND f(1, axes, {2.0, 1.0, 0.0, 1.5, 2.0});
  std::vector<Axis> out(1, Axis{-1.0, 1.0, 5});
  CHECK_THROWS(polar_transform(f, out));
}

TEST_CASE("polar and legendre classify the same cells across scales") {
  std::vector<Axis> out_leg(2, Axis{-2.0, 2.0, 33});
  std::vector<Axis> out_pol(2, Axis{-0.75, 0.75, 17});
  for (std::uint64_t seed : {41ULL, 42ULL}) {
    GridFunctionND f = even_instance(seed, 2, 129);
    GridFunctionND fstar = increasing_rearrangement(f, MeasureSpec::lebesgue(2));
    TransformWindows w = transform_lambda_windows(f, fstar, out_leg, out_pol, 16);
    REQUIRE(!w.polar.empty());
    for (double lam : {w.polar.front(), w.polar.back()}) {
      ScalingIdentityReport rep = polar_legendre_identity_check(f, out_pol, lam);
      CHECK(rep.pass);
      CHECK(rep.mass_polar_gt == doctest::Approx(rep.mass_legendre_gt)
                                     .epsilon(1e-12)
                                     .scale(rep.mass_polar_gt + 1.0));
    }
  }
}

TEST_CASE("transform comparison holds for rearrangements") {
  std::vector<Axis> out_leg(2, Axis{-2.0, 2.0, 33});
  std::vector<Axis> out_pol(2, Axis{-0.75, 0.75, 17});
  for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) {
    GridFunctionND f = even_instance(seed, 2, 129);
    GridFunctionND fstar = increasing_rearrangement(f, MeasureSpec::lebesgue(2));
    TransformWindows w = transform_lambda_windows(f, fstar, out_leg, out_pol, 16);
    REQUIRE(!w.legendre.empty());
    REQUIRE(!w.polar.empty());
    TransformReport rl = transform_comparison_check(f, TransformKind::Legendre, nullptr,
                                                    out_leg, w.legendre);
    CHECK(rl.pass);
    TransformReport rp =
        transform_comparison_check(f, TransformKind::Polar, nullptr, out_pol, w.polar);
    CHECK(rp.pass);
    for (const TransformRow& row : rp.rows) CHECK(row.slack >= 0.0);
  }
}

TEST_CASE("lambda_span_nd spans the joint range") {
  std::array<Axis, 3> axes{Axis{-1.0, 1.0, 9}, Axis{-1.0, 1.0, 9}, Axis{}};
  GridFunctionND a = GridFunctionND::sample(
      2, axes, [](const std::array<double, 3>& p) { return p[0]; });
  GridFunctionND b = GridFunctionND::sample(
      2, axes, [](const std::array<double, 3>& p) { return 3.0 + p[1]; });
  std::vector<double> lam = lambda_span_nd(a, b, 8);
  CHECK(lam.size() == 8);
  CHECK(lam.front() <= -0.9);
  CHECK(lam.back() >= 3.9);
}

// ---- set-level facts ---------------------------------------------------------

TEST_CASE("disc bodies: areas, polars, volume product from below") {
  SupportBody2D d1 = SupportBody2D::disc(256, 1.0);
  CHECK(body_area(d1) == doctest::Approx(kPi).epsilon(5e-4));
  SupportBody2D d2 = SupportBody2D::disc(256, 2.0);
  CHECK(polar_area(d2) == doctest::Approx(kPi / 4.0).epsilon(5e-4));
  SantaloSetReport rep = santalo_set_check(d1, 1e-3);
  CHECK(rep.pass_product);
  CHECK(rep.pass_star);
  CHECK(rep.product <= kPi * kPi);
  CHECK(rep.product >= kPi * kPi - 0.01);
}

TEST_CASE("square and cross-polytope are dual") {
  int m = 256;
  std::vector<double> support((std::size_t)m);
  for (int j = 0; j < m; ++j) {
    double th = 2.0 * kPi * j / m;
    support[(std::size_t)j] = std::fabs(std::cos(th)) + std::fabs(std::sin(th));
  }
  SupportBody2D k = SupportBody2D::make(support);
  CHECK(body_area(k) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(polar_area(k) == doctest::Approx(2.0).epsilon(1e-3));
  SupportBody2D kp = polar_body(k);
  CHECK(body_area(kp) == doctest::Approx(2.0).epsilon(1e-3));
  // bipolar returns the square
  CHECK(body_area(polar_body(kp)) == doctest::Approx(4.0).epsilon(1e-6));
  // scaling: (2K) polar = K polar / 2, areas scale by 4 and 1/4
  SupportBody2D k2 = scale_body(k, 2.0);
  CHECK(body_area(k2) == doctest::Approx(16.0).epsilon(1e-9));
  CHECK(polar_area(k2) == doctest::Approx(0.5).epsilon(1e-3));
  SantaloSetReport rep = santalo_set_check(k, 1e-3);
  CHECK(rep.pass_product);
  CHECK(rep.product == doctest::Approx(8.0).epsilon(1e-3));
  CHECK(rep.area_star_polar >= rep.area_polar - 1e-9);
}

TEST_CASE("ellipses nearly achieve the volume-product bound") {
  int m = 512;
  double a = 1.5, b = 0.6;
  std::vector<double> support((std::size_t)m);
  for (int j = 0; j < m; ++j) {
    double th = 2.0 * kPi * j / m;
    double c = std::cos(th), s = std::sin(th);
    support[(std::size_t)j] = std::sqrt(a * a * c * c + b * b * s * s);
  }
  SupportBody2D k = SupportBody2D::make(support);
  SantaloSetReport rep = santalo_set_check(k, 1e-3);
  CHECK(rep.pass_product);
  CHECK(rep.pass_star);
  CHECK(rep.product <= kPi * kPi);
  CHECK(rep.product >= kPi * kPi - 0.02);
}

TEST_CASE("random symmetric bodies obey the volume-product bound") {
  SplitMix64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 2 * (12 + (int)(rng.next_u64() % 60));
    SupportBody2D k = SupportBody2D::make(random_support_samples(rng, m));
    SantaloSetReport rep = santalo_set_check(k, 1e-3);
    CHECK(rep.pass_product);
    CHECK(rep.pass_star);
    CHECK(rep.area_k > 0.0);
    // symmetry survives make() bit for bit
    for (int j = 0; j < k.m / 2; ++j) CHECK(k.h[(std::size_t)j] == k.h[(std::size_t)(j + k.m / 2)]);
  }
}

TEST_CASE("rasterized bodies agree with norm sublevels within one layer") {
  Axis ax{-1.5, 1.5, 61};
  SetOnGrid a = rasterize(SupportBody2D::disc(64, 1.0), ax, ax);
  SetOnGrid ball;
  ball.dim = 2;
  ball.axes = {ax, ax, Axis{}};
  ball.mask.assign((std::size_t)(61 * 61), 0);
  for (int i = 0; i < 61; ++i)
    for (int j = 0; j < 61; ++j) {
      double x = ax.node(i), y = ax.node(j);
      ball.mask[(std::size_t)(i * 61 + j)] = x * x + y * y <= 1.0 ? 1 : 0;
    }
  CHECK(masks_agree_within_one_layer(a, ball));
  CHECK(masks_agree_within_one_layer(ball, a));

  SetOnGrid small = ball;
  for (int i = 0; i < 61; ++i)
    for (int j = 0; j < 61; ++j) {
      double x = ax.node(i), y = ax.node(j);
      small.mask[(std::size_t)(i * 61 + j)] = x * x + y * y <= 0.64 ? 1 : 0;
    }
  CHECK(!masks_agree_within_one_layer(a, small));
}
