#pragma once

#include <vector>

#include "ric/grid.hpp"
#include "ric/profile.hpp"
#include "ric/transforms.hpp"

namespace ric {

// Quadrature configuration for the radial heat evolution.  Defaults are sized
// so the n = 1 Gaussian closed form is reproduced to better than 1e-6.
struct BesselConfig {
  int sigma_panels = 8;    // composite Gauss-Legendre panels over the source
  int sigma_nodes = 256;   // nodes per panel
  double cutoff = 80.0;    // integrands are truncated where the exponent passes this
};

// One-shot evaluator of the evolved profile: with u_0 = e^{-Psi} radial in
// n dimensions and u_t its heat evolution (generator Laplace, kernel variance
// 2t per axis), evaluates  Psi_t(r) = -log u_t(r)  together with its first two
// radial derivatives, differentiating the kernel under the integral.  Radial
// kernels: n = 1 even reflection, n = 3 the image difference formula (taken
// through expm1 so small r*sigma/t never cancels), n = 2 the closed angular
// integral via exponentially scaled modified Bessel functions I0/I1, so no
// term ever overflows regardless of concentration.
class BesselEvaluator {
 public:
  BesselEvaluator(PLProfile psi, int n, double t, BesselConfig cfg = {});

  struct Jet {
    double value = 0.0;  // Psi_t(r)
    double d1 = 0.0;     // Psi_t'(r)
    double d2 = 0.0;     // Psi_t''(r)
  };

  double value(double r) const;
  Jet jet(double r) const;

  int dim() const { return n_; }
  double time() const { return t_; }
  // Extent where Psi_t stays below the cutoff (probed; at least
  // source radius + 8 sqrt(t)).
  double query_radius() const { return query_radius_; }
  double source_radius() const { return sigma_max_; }

 private:
  struct Term {  // precomputed source node: abscissa and total weight
    double sigma;
    double weight;  // GL weight * e^{-Psi(sigma)} * sigma^{n-1}
  };

  void accumulate(double r, double& u, double* du, double* d2u) const;

  int n_ = 1;
  double t_ = 0.0;
  double a_ = 0.0;  // 1 / (4t)
  BesselConfig cfg_;
  double sigma_max_ = 0.0;
  double query_radius_ = 0.0;
  double log_shift_ = 0.0;  // weights carry e^{+shift} to keep u in range
  std::vector<Term> terms_;
};

// Evolved profile sampled on [0, R] with R the evaluator's query radius.
GridFunction1D bessel_semigroup(const PLProfile& psi, double t, int n, int samples = 257,
                                BesselConfig cfg = {});

// (n omega_n)^2 * I(Psi) * I(A Psi) with I(p) = integral of e^{-p} r^{n-1};
// both factors in closed form through the exact piecewise conjugates and
// moment integrals.  A is Legendre or Polar.
double product_functional(const PLProfile& psi, int n, TransformKind a);

// Flow acceptance tolerances, shared by the trace verdicts and serializers.
inline constexpr double kFlowMassTol = 1e-5;   // relative mass drift
inline constexpr double kFlowAlphaTol = 1e-6;  // allowed alpha decrease (scaled)

struct FlowState {
  double t = 0.0;
  int n = 1;
  GridFunction1D psi_t;    // radial samples of the evolved profile
  PLProfile lpsi_fit;      // exact conjugate of a piecewise-linear fit (reported)
  double mass = 0.0;       // integral of e^{-Psi_t} r^{n-1}
  double alpha = 0.0;      // integral of e^{-L Psi_t} r^{n-1}
  double product = 0.0;    // scaling-normalized product for the selected transform
  bool convex_ok = false;  // second differences positive on the sample grid
};

struct FlowTrace {
  std::vector<FlowState> states;
  std::vector<double> residuals;  // cordero residual at each t > 0 entry
  double mass_rel_drift = 0.0;    // max |m(t) - m(0)| / m(0)
  double alpha_min_step = 0.0;    // min of alpha(t_{k+1}) - alpha(t_k)
  bool mass_ok = false;
  bool alpha_ok = false;
  bool pass = false;
};

// States along a strictly increasing t grid starting at 0.  Every state is
// evolved from the initial profile in one shot; t = 0 uses the exact moment
// integrals of the profile and its conjugate.  The normalized product
// (n omega_n)^2 m(t) alpha(t) equals the product functional of the
// mass-normalized evolved profile by scaling invariance.
FlowTrace flow_trace(const PLProfile& psi, int n, const std::vector<double>& t_grid,
                     TransformKind a, bool with_residuals = false, double residual_dt = 0.0025,
                     BesselConfig cfg = {});

// Sup-norm residual of the dual evolution identity
//   d/dt V = -1/V'' + r^2 - (n-1) r / V'
// with V = L Psi_t evaluated on a uniform slope window through the stationary
// condition (Newton on the increasing slope Psi_t'), so V' = s and
// V'' = 1/Psi_t''(s) are exact and -1/V'' never divides by a small curvature;
// d/dt V is a central difference across dt.  The window drops 3 nodes at each
// end; curvature below the positive floor raises an error.
double cordero_residual(const PLProfile& psi, int n, double t, double dt,
                        BesselConfig cfg = {});

// Pointwise check of the algebraic identity
//   1/V'' - 2r/V' + r^2 V''/V'^2 = (r V'' - V')^2 / (V'' V'^2)
// with both sides built from the same central-difference V', V'' of the
// samples.  The right side carries the sign of V'', so min_rhs >= 0 doubles as
// a convexity certificate for the window: concave samples yield min_rhs < 0
// and pass = false rather than an error.  r must be uniform; `guard` nodes are
// dropped at each end (at least 1 for the stencils).
struct IdentityReport {
  double max_deviation = 0.0;
  double min_rhs = 0.0;
  bool pass = false;
};

IdentityReport integrand_identity_check(const std::vector<double>& r,
                                        const std::vector<double>& v, int guard = 3);

// n * omega_n: surface factor turning radial integrals into volume ones.
double sphere_factor(int n);

}  // namespace ric
