#include "ric/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ric/measure.hpp"

namespace ric {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned harness tolerances (mass/alpha shared with serializers via flow.hpp).
constexpr double kMassTol = kFlowMassTol;
constexpr double kAlphaTol = kFlowAlphaTol;
constexpr double kConvexTol = 1e-9;      // relative slack on sampled second differences
constexpr double kCurvatureFloor = 1e-10;  // minimum admissible curvature before division

// Query-side quadrature (mass and dual integrals of evolved profiles): the
// heat evolution is analytic with feature scale >= sqrt(2t), so a composite
// rule with ~512 nodes over the probed extent is far past the 1e-5 budgets.
constexpr int kQueryPanels = 4;
constexpr int kQueryNodes = 128;

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton on P_k (Chebyshev initial guesses).
const GaussRule& legendre_rule(int k) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.x.assign(k, 0.0);
  rule.w.assign(k, 0.0);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[k - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[k - 1 - i] = w;
  }
  auto [pos, ok] = cache.emplace(k, std::move(rule));
  (void)ok;
  return pos->second;
}

struct Quad {
  std::vector<double> x, w;
};

Quad composite_gl(double lo, double hi, int panels, int nodes) {
  const GaussRule& rule = legendre_rule(nodes);
  Quad q;
  q.x.reserve((std::size_t)panels * nodes);
  q.w.reserve((std::size_t)panels * nodes);
  double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * width, mid = a + 0.5 * width, half = 0.5 * width;
    for (int i = 0; i < nodes; ++i) {
      q.x.push_back(mid + half * rule.x[i]);
      q.w.push_back(half * rule.w[i]);
    }
  }
  return q;
}

// Smallest radius where the profile exceeds its minimum by `cutoff`.
double profile_cut_radius(const PLProfile& p, double cutoff) {
  double target = p.v[0] + cutoff;
  for (int i = 0; i + 1 < p.knots(); ++i) {
    if (p.v[i + 1] >= target) {
      double m = (p.v[i + 1] - p.v[i]) / (p.r[i + 1] - p.r[i]);
      return m > 0.0 ? p.r[i] + (target - p.v[i]) / m : p.r[i + 1];
    }
  }
  if (p.tail_slope == kInf) return std::max(p.last_r(), 1e-8);
  require(p.tail_slope > 0.0, "flow: profile tail must increase");
  return p.last_r() + (target - p.last_v()) / p.tail_slope;
}

// sinh(x)/x, continued through 0.
double sinhc(double x) {
  if (std::fabs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(x) / x;
}

// Exponentially scaled modified Bessel functions e^{-x} I_nu(x) for nu = 0, 1,
// on x >= 0.  Power series below the crossover (all terms positive, no
// cancellation, largest partial sum ~ I0(20) ~ 4e7), asymptotic series above
// (terms fall well under 1e-16 of the sum long before the divergent tail).
constexpr double kBesselCross = 20.0;

// Shared asymptotic tail: e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k c_k / x^k
// with c_0 = 1, c_k = -c_{k-1} (mu - (2k-1)^2) / (8k), mu = 4 nu^2.
double bessel_ie_asym(double x, double mu) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    double odd = 2.0 * k - 1.0;
    double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::fabs(next) >= std::fabs(term)) break;  // divergent tail reached
    sum += next;
    term = next;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

// e^{-x} I0(x)
double bessel_i0e(double x) {
  if (x > kBesselCross) return bessel_ie_asym(x, 0.0);
  double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 80; ++k) {
    term *= q / ((double)k * k);
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return std::exp(-x) * sum;
}

// e^{-x} I1(x) / x, continued through 0 (limit 1/2).
double bessel_i1e_over_x(double x) {
  if (x > kBesselCross) return bessel_ie_asym(x, 4.0) / x;
  double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 80; ++k) {
    term *= q / ((double)k * (k + 1));
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return std::exp(-x) * 0.5 * sum;
}

// (cosh x - sinh(x)/x) / x^2 = sum_{k>=1} 2k x^{2k-2} / (2k+1)!,
// series below x = 0.5 where the direct difference cancels.
double cosh_sinhc_ratio(double x) {
  double x2 = x * x;
  if (x < 0.5) {
    // coefficients 2k/(2k+1)! for k = 1..9
    double c = 18.0 / 121645100408832000.0;
    c = c * x2 + 16.0 / 355687428096000.0;
    c = c * x2 + 14.0 / 1307674368000.0;
    c = c * x2 + 12.0 / 6227020800.0;
    c = c * x2 + 10.0 / 39916800.0;
    c = c * x2 + 8.0 / 362880.0;
    c = c * x2 + 6.0 / 5040.0;
    c = c * x2 + 4.0 / 120.0;
    c = c * x2 + 2.0 / 6.0;
    return c;
  }
  return (std::cosh(x) - sinhc(x)) / x2;
}

}  // namespace

double sphere_factor(int n) { return n * unit_ball_volume(n); }

BesselEvaluator::BesselEvaluator(PLProfile psi, int n, double t, BesselConfig cfg)
    : n_(n), t_(t), cfg_(cfg) {
  psi.validate();
  require(n >= 1 && n <= 3, "BesselEvaluator: n must be 1..3");
  require(t > 0.0 && is_finite(t), "BesselEvaluator: t must be positive");
  require(cfg.sigma_panels >= 1 && cfg.sigma_nodes >= 2, "BesselEvaluator: bad sigma rule");
  require(cfg.cutoff > 1.0, "BesselEvaluator: cutoff too small");
  a_ = 1.0 / (4.0 * t);
  log_shift_ = psi.v[0];
  sigma_max_ = profile_cut_radius(psi, cfg.cutoff);

  Quad q = composite_gl(0.0, sigma_max_, cfg.sigma_panels, cfg.sigma_nodes);
  const double c = std::sqrt(a_ / kPi);  // 1d heat kernel normalization
  terms_.resize(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double sigma = q.x[i];
    double damp = std::exp(-(psi.eval(sigma) - log_shift_));
    double w = q.w[i] * damp;
    switch (n_) {
      case 1: w *= c; break;
      case 2: w *= (2.0 * a_ / kPi) * sigma; break;
      case 3: w *= c * sigma; break;  // sigma^2 weight over the sigma in the kernel
    }
    terms_[i] = {sigma, w};
  }

  // Probe the extent where Psi_t has climbed `cutoff` above its center value.
  double base = value(0.0);
  require(is_finite(base), "BesselEvaluator: degenerate profile (no mass)");
  double r = sigma_max_ + 8.0 * std::sqrt(t_);
  for (int iter = 0; iter < 200 && value(r) < base + cfg.cutoff; ++iter) r *= 1.25;
  query_radius_ = r;
}

// Accumulates u_t(r) and (optionally) its first two r-derivatives from the
// precomputed source terms. du/d2u may be null to skip derivative work.
void BesselEvaluator::accumulate(double r, double& u, double* du, double* d2u) const {
  const double a = a_;
  double s_u = 0.0, s_du = 0.0, s_d2u = 0.0;
  const bool jets = du != nullptr;

  if (n_ == 1) {
    for (const Term& tm : terms_) {
      double dm = r - tm.sigma, dp = r + tm.sigma;
      double em = std::exp(-a * dm * dm), ep = std::exp(-a * dp * dp);
      s_u += tm.weight * (em + ep);
      if (jets) {
        s_du += tm.weight * (-2.0 * a) * (dm * em + dp * ep);
        s_d2u += tm.weight *
                 ((4.0 * a * a * dm * dm - 2.0 * a) * em + (4.0 * a * a * dp * dp - 2.0 * a) * ep);
      }
    }
  } else if (n_ == 3) {
    for (const Term& tm : terms_) {
      double sigma = tm.sigma;
      double x = 2.0 * a * r * sigma;
      double D, D1 = 0.0, D2 = 0.0;
      if (x <= 1.0) {
        // series-safe zone: everything через sinh/cosh of a small argument
        double B = std::exp(-a * (r * r + sigma * sigma));
        double q = 2.0 * a * sigma;
        double shc = sinhc(x), ch = std::cosh(x), g2 = cosh_sinhc_ratio(x);
        D = 2.0 * q * B * shc;
        if (jets) {
          D1 = B * (-4.0 * a * std::sinh(x) + 2.0 * q * q * x * g2);
          D2 = 2.0 * q * B *
               (shc * (4.0 * a * a * r * r + q * q - 2.0 * a) - 4.0 * a * ch + 4.0 * a * shc -
                2.0 * q * q * g2);
        }
      } else {
        double dm = r - sigma, dp = r + sigma;
        double em = std::exp(-a * dm * dm), ep = std::exp(-a * dp * dp);
        double P = -em * std::expm1(-2.0 * x);  // em - ep without cancellation
        double Pc = em + ep;
        D = P / r;
        if (jets) {
          double P1 = -2.0 * a * dm * em + 2.0 * a * dp * ep;
          double P2 = (4.0 * a * a * (r * r + sigma * sigma) - 2.0 * a) * P -
                      8.0 * a * a * r * sigma * Pc;
          D1 = (P1 * r - P) / (r * r);
          D2 = P2 / r - 2.0 * D1 / r;
        }
      }
      s_u += tm.weight * D;
      if (jets) {
        s_du += tm.weight * D1;
        s_d2u += tm.weight * D2;
      }
    }
  } else {  // n == 2: closed angular integral, exponent factored at its peak
    // With x = 2 a r sigma the angular integrals reduce to scaled Bessel
    // functions: int e^{-x(1-cos)} = pi i0e, int e^{-x(1-cos)} cos = pi i1e,
    // int e^{-x(1-cos)} cos^2 = pi (i0e - i1e/x); every factor is bounded.
    for (const Term& tm : terms_) {
      double sigma = tm.sigma;
      double x = 2.0 * a * r * sigma;
      double base = std::exp(-a * (r - sigma) * (r - sigma));
      double i0e = bessel_i0e(x);
      double s0 = kPi * i0e;
      s_u += tm.weight * base * s0;
      if (jets) {
        double i1ex = bessel_i1e_over_x(x);  // e^{-x} I1(x) / x
        double i1e = x * i1ex;
        double s1 = kPi * (r * i0e - sigma * i1e);
        double s2 = kPi * (r * r * i0e - 2.0 * r * sigma * i1e + sigma * sigma * (i0e - i1ex));
        s_du += tm.weight * base * (-2.0 * a) * s1;
        s_d2u += tm.weight * base * (4.0 * a * a * s2 - 2.0 * a * s0);
      }
    }
  }

  u = s_u;
  if (du) *du = s_du;
  if (d2u) *d2u = s_d2u;
}

double BesselEvaluator::value(double r) const {
  require(r >= 0.0 && !std::isnan(r), "BesselEvaluator: r must be >= 0");
  double u = 0.0;
  accumulate(r, u, nullptr, nullptr);
  if (!(u > 0.0)) return kInf;  // underflow far outside the probed extent
  return log_shift_ - std::log(u);
}

BesselEvaluator::Jet BesselEvaluator::jet(double r) const {
  require(r >= 0.0 && !std::isnan(r), "BesselEvaluator: r must be >= 0");
  double u = 0.0, du = 0.0, d2u = 0.0;
  accumulate(r, u, &du, &d2u);
  require(u > 0.0 && is_finite(du) && is_finite(d2u), "BesselEvaluator: jet out of range");
  double l1 = du / u;
  Jet out;
  out.value = log_shift_ - std::log(u);
  out.d1 = -l1;
  out.d2 = l1 * l1 - d2u / u;
  return out;
}

GridFunction1D bessel_semigroup(const PLProfile& psi, double t, int n, int samples,
                                BesselConfig cfg) {
  require(samples >= 2, "bessel_semigroup: need at least 2 samples");
  BesselEvaluator ev(psi, n, t, cfg);
  Axis axis{0.0, ev.query_radius(), samples};
  return GridFunction1D::sample(axis, [&](double r) { return ev.value(r); });
}

double product_functional(const PLProfile& psi, int n, TransformKind a) {
  psi.validate();
  require(n >= 1 && n <= 3, "product_functional: n must be 1..3");
  require(a == TransformKind::Legendre || a == TransformKind::Polar,
          "product_functional: transform must be Legendre or Polar");
  double m = moment_integral(psi, n);
  PLProfile dual =
      (a == TransformKind::Legendre) ? legendre_conjugate(psi) : polar_conjugate(psi);
  double md = moment_integral(dual, n);
  double sf = sphere_factor(n);
  return sf * sf * m * md;
}

namespace {

// Solves d1(s) = rho for the increasing slope of an evolved profile: Newton
// with a maintained bracket, bisection when a step leaves it.
double solve_slope(const BesselEvaluator& ev, double rho, double s_init) {
  require(rho > 0.0, "solve_slope: rho must be positive");
  double lo = 0.0;
  double hi = std::max({s_init, ev.query_radius() * 0.5, 1.0});
  int guard = 0;
  while (ev.jet(hi).d1 < rho) {
    hi *= 1.6;
    require(++guard < 200, "solve_slope: slope range not reached");
  }
  double s = std::min(std::max(s_init, lo), hi);
  for (int iter = 0; iter < 80; ++iter) {
    BesselEvaluator::Jet j = ev.jet(s);
    double g = j.d1 - rho;
    if (std::fabs(g) <= 1e-11 * (1.0 + std::fabs(rho))) return s;
    if (g > 0.0)
      hi = s;
    else
      lo = s;
    double step = (j.d2 > kCurvatureFloor) ? g / j.d2 : 0.0;
    double next = s - step;
    if (step == 0.0 || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    s = next;
  }
  return s;
}

// Curvature floor shared by the dual-side computations: the flow keeps
// evolved profiles strictly convex; falling under the floor is a hard error,
// not something to clamp through.
void require_curvature(double d2, const char* where) {
  if (!(d2 >= kCurvatureFloor)) {
    std::ostringstream msg;
    msg << where << ": curvature " << d2 << " under floor " << kCurvatureFloor
        << "; evolved profile is not strictly convex at the queried point";
    throw std::runtime_error(msg.str());
  }
}

// integral of e^{-Psi_t(r)} r^{n-1} dr over the probed extent.
double evolved_mass(const BesselEvaluator& ev) {
  Quad q = composite_gl(0.0, ev.query_radius(), kQueryPanels, kQueryNodes);
  double m = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double v = ev.value(q.x[i]);
    if (v == kInf) continue;
    double rw = (ev.dim() == 1) ? 1.0 : std::pow(q.x[i], ev.dim() - 1);
    m += q.w[i] * std::exp(-v) * rw;
  }
  return m;
}

// integral of e^{-L Psi_t(rho)} rho^{n-1} d rho by the substitution
// rho = Psi_t'(s):  L Psi_t(rho) = s rho - Psi_t(s)  and  d rho = Psi_t'' ds,
// so no root-finding enters the quadrature.  The range [0, S] is probed so
// the dual exponent has climbed `cutoff` past its minimum -Psi_t(0).
double evolved_alpha(const BesselEvaluator& ev, double cutoff) {
  double base = ev.value(0.0);
  double s_hi = std::max(ev.query_radius(), 1.0);
  int guard = 0;
  while (true) {
    BesselEvaluator::Jet j = ev.jet(s_hi);
    if (s_hi * j.d1 - j.value >= cutoff - base) break;
    s_hi *= 1.25;
    require(++guard < 200, "evolved_alpha: dual range not reached");
  }
  Quad q = composite_gl(0.0, s_hi, kQueryPanels, kQueryNodes);
  double alpha = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double s = q.x[i];
    BesselEvaluator::Jet j = ev.jet(s);
    // Curvature multiplies the integrand here, so a near-zero value (long
    // linear stretch of the source) is harmless; only genuine concavity is
    // an error.
    require(j.d2 > -1e-9, "evolved_alpha: negative curvature along evolved profile");
    double rho = std::max(j.d1, 0.0);
    double rw = (ev.dim() == 1) ? 1.0 : std::pow(rho, ev.dim() - 1);
    alpha += q.w[i] * std::exp(-(s * j.d1 - j.value)) * rw * std::max(j.d2, 0.0);
  }
  return alpha;
}

// Second differences of the samples stay above -tol * scale.
bool weakly_convex(const GridFunction1D& f, double tol) {
  double scale = std::max(1.0, std::max(std::fabs(f.min_finite()), std::fabs(f.max_finite())));
  for (int i = 1; i + 1 < f.size(); ++i) {
    if (!is_finite(f[i - 1]) || !is_finite(f[i]) || !is_finite(f[i + 1])) continue;
    if (f[i - 1] - 2.0 * f[i] + f[i + 1] < -tol * scale) return false;
  }
  return true;
}

// Mass-normalized product for the selected transform.  Scaling Psi(lambda r)
// multiplies both radial integrals by lambda^{-n} jointly with mass, giving
// product = (n omega_n)^2 m * alpha for the unit-mass representative.  The
// polar transform additionally needs Psi >= 0, so its factor is computed for
// the vertical shift Psi - Psi(0) (the Legendre pairing is shift-invariant).
double state_product(double mass, double alpha_legendre, const PLProfile& fit, int n,
                     TransformKind a) {
  double sf = sphere_factor(n);
  if (a == TransformKind::Legendre) return sf * sf * mass * alpha_legendre;
  require(a == TransformKind::Polar, "flow_trace: transform must be Legendre or Polar");
  PLProfile shifted = fit;
  double v0 = shifted.v[0];
  for (double& v : shifted.v) v -= v0;
  double m_sh = moment_integral(shifted, n);
  double a_sh = moment_integral(polar_conjugate(shifted), n);
  return sf * sf * m_sh * a_sh;
}

}  // namespace

double cordero_residual(const PLProfile& psi, int n, double t, double dt, BesselConfig cfg) {
  psi.validate();
  require(n >= 1 && n <= 3, "cordero_residual: n must be 1..3");
  require(dt > 0.0 && t > dt, "cordero_residual: need t > dt > 0");

  BesselEvaluator ev0(psi, n, t, cfg);
  BesselEvaluator evm(psi, n, t - dt, cfg);
  BesselEvaluator evp(psi, n, t + dt, cfg);

  // Slope window: an interior band of the realized slope range at time t.
  double rho_hi = ev0.jet(0.7 * ev0.query_radius()).d1;
  require(rho_hi > 0.0, "cordero_residual: empty slope range");
  double rho_lo = 0.1 * rho_hi;
  const int m = 64, guard = 3;
  double h = (rho_hi - rho_lo) / (m - 1);

  double worst = 0.0;
  double sm = 1.0, s0 = 1.0, sp = 1.0;  // warm starts along the window
  for (int i = 0; i < m; ++i) {
    double rho = rho_lo + i * h;
    sm = solve_slope(evm, rho, sm);
    s0 = solve_slope(ev0, rho, s0);
    sp = solve_slope(evp, rho, sp);
    if (i < guard || i >= m - guard) continue;

    BesselEvaluator::Jet jm = evm.jet(sm), j0 = ev0.jet(s0), jp = evp.jet(sp);
    double vm = rho * sm - jm.value;
    double vp = rho * sp - jp.value;
    double dv_dt = (vp - vm) / (2.0 * dt);

    // Dual derivatives at fixed rho are exact: V' = s and V'' = 1/Psi_t''(s),
    // so -1/V'' is just -Psi_t''(s) and no curvature division occurs. The
    // positive-curvature requirement still applies: genuine concavity aborts.
    if (j0.d2 <= -1e-9) require_curvature(j0.d2, "cordero_residual");
    double v1 = s0;
    require(v1 > 0.0, "cordero_residual: dual point not positive");
    double rhs = -std::max(j0.d2, 0.0) + rho * rho - (n - 1) * rho / v1;
    worst = std::max(worst, std::fabs(dv_dt - rhs));
  }
  return worst;
}

FlowTrace flow_trace(const PLProfile& psi, int n, const std::vector<double>& t_grid,
                     TransformKind a, bool with_residuals, double residual_dt, BesselConfig cfg) {
  psi.validate();
  require(n >= 1 && n <= 3, "flow_trace: n must be 1..3");
  require(!t_grid.empty() && t_grid[0] == 0.0, "flow_trace: t grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    require(t_grid[i] > t_grid[i - 1], "flow_trace: t grid must be strictly increasing");

  FlowTrace trace;
  trace.states.reserve(t_grid.size());

  const int samples = 513;  // shared by the reported grid and the 512-piece fit

  for (double t : t_grid) {
    FlowState st;
    st.t = t;
    st.n = n;
    if (t == 0.0) {
      double r_hi = profile_cut_radius(psi, cfg.cutoff);
      Axis axis{0.0, r_hi, samples};
      st.psi_t = GridFunction1D::sample(axis, [&](double r) { return psi.eval(r); });
      st.lpsi_fit = legendre_conjugate(psi);
      st.mass = moment_integral(psi, n);
      st.alpha = moment_integral(st.lpsi_fit, n);
      st.product = state_product(st.mass, st.alpha, psi, n, a);
    } else {
      BesselEvaluator ev(psi, n, t, cfg);
      Axis axis{0.0, ev.query_radius(), samples};
      st.psi_t = GridFunction1D::sample(axis, [&](double r) { return ev.value(r); });
      std::vector<double> radii(st.psi_t.size());
      for (int i = 0; i < st.psi_t.size(); ++i) radii[i] = st.psi_t.x(i);
      PLProfile fit = fit_convex_pl(radii, st.psi_t.values());
      st.lpsi_fit = legendre_conjugate(fit);
      st.mass = evolved_mass(ev);
      st.alpha = evolved_alpha(ev, cfg.cutoff);
      st.product = state_product(st.mass, st.alpha, fit, n, a);
    }
    st.convex_ok = weakly_convex(st.psi_t, kConvexTol);
    trace.states.push_back(std::move(st));
  }

  if (with_residuals) {
    for (double t : t_grid) {
      if (t == 0.0) continue;
      trace.residuals.push_back(cordero_residual(psi, n, t, residual_dt, cfg));
    }
  }

  double m0 = trace.states[0].mass;
  require(m0 > 0.0, "flow_trace: initial mass must be positive");
  double drift = 0.0;
  for (const FlowState& st : trace.states)
    drift = std::max(drift, std::fabs(st.mass - m0) / m0);
  trace.mass_rel_drift = drift;
  trace.mass_ok = drift <= kMassTol;

  double min_step = kInf;
  for (std::size_t i = 1; i < trace.states.size(); ++i)
    min_step = std::min(min_step, trace.states[i].alpha - trace.states[i - 1].alpha);
  trace.alpha_min_step = (trace.states.size() > 1) ? min_step : 0.0;
  double alpha_scale = std::max(1.0, std::fabs(trace.states[0].alpha));
  trace.alpha_ok = trace.states.size() <= 1 || min_step >= -kAlphaTol * alpha_scale;

  bool convex_all = true;
  for (const FlowState& st : trace.states) convex_all = convex_all && st.convex_ok;
  trace.pass = trace.mass_ok && trace.alpha_ok && convex_all;
  return trace;
}

IdentityReport integrand_identity_check(const std::vector<double>& r,
                                        const std::vector<double>& v, int guard) {
  require(r.size() == v.size(), "integrand_identity_check: size mismatch");
  require(guard >= 1, "integrand_identity_check: guard must be >= 1");
  int m = (int)r.size();
  require(m >= 2 * guard + 3, "integrand_identity_check: window too small");
  double h = r[1] - r[0];
  require(h > 0.0, "integrand_identity_check: radii must increase");
  for (int i = 1; i < m; ++i)
    require(std::fabs(r[i] - r[i - 1] - h) <= 1e-9 * h,
            "integrand_identity_check: radii must be uniform");
  for (double x : v) require(is_finite(x), "integrand_identity_check: samples must be finite");

  IdentityReport rep;
  rep.min_rhs = kInf;
  for (int i = guard; i < m - guard; ++i) {
    double v1 = (v[i + 1] - v[i - 1]) / (2.0 * h);
    double v2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    // Both sides divide by v2, so vanishing curvature is a hard error; negative
    // curvature is not: the identity still holds exactly and the right side
    // turns negative with it, which is precisely what min_rhs reports.
    require(std::fabs(v2) >= kCurvatureFloor,
            "integrand_identity_check: curvature vanishes in window");
    require(std::fabs(v1) > 1e-14 * (1.0 + std::fabs(v[i])),
            "integrand_identity_check: vanishing first derivative in window");
    double x = r[i];
    double lhs = 1.0 / v2 - 2.0 * x / v1 + x * x * v2 / (v1 * v1);
    double num = x * v2 - v1;
    double rhs = num * num / (v2 * v1 * v1);
    double scale = std::fabs(1.0 / v2) + std::fabs(2.0 * x / v1) +
                   std::fabs(x * x * v2 / (v1 * v1)) + 1.0;
    rep.max_deviation = std::max(rep.max_deviation, std::fabs(lhs - rhs) / scale);
    rep.min_rhs = std::min(rep.min_rhs, rhs);
  }
  rep.pass = rep.max_deviation <= 1e-12 && rep.min_rhs >= 0.0;
  return rep;
}

}  // namespace ric
