#include "ric/infconv.hpp"

#include <algorithm>
#include <cmath>

#include "ric/envelope.hpp"
#include "ric/rearrange.hpp"

namespace ric {

namespace {

// Row-major lattice walker matching GridFunctionND's index layout.
struct Lattice {
  int dim;
  std::array<Axis, 3> ax;
  std::size_t total;

  Lattice(int d, const std::array<Axis, 3>& a) : dim(d), ax(a), total(1) {
    for (int i = 0; i < dim; ++i) total *= (std::size_t)ax[i].n;
  }
  std::array<double, 3> point(std::size_t k) const {
    std::array<double, 3> p{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
      p[d] = ax[d].node((int)(k % ax[d].n));
      k /= ax[d].n;
    }
    return p;
  }
};

void check_has_finite(const std::vector<double>& v) {
  for (double x : v)
    if (is_finite(x)) return;
  throw std::invalid_argument("inf_convolution: empty effective domain");
}

// Sweep one axis of a flattened field with the parabola envelope; lines that
// are identically +inf stay +inf.
void envelope_sweep(std::vector<double>& d, int dim, const std::array<Axis, 3>& axes, int axis,
                    double w) {
  std::array<int, 3> n{1, 1, 1};
  for (int dd = 0; dd < dim; ++dd) n[dd] = axes[dd].n;
  const int len = n[axis];
  std::vector<double> ys(len), line(len);
  for (int i = 0; i < len; ++i) ys[i] = axes[axis].node(i);

  int odims[2], ocount = 0;
  for (int dd = 0; dd < dim; ++dd)
    if (dd != axis) odims[ocount++] = dd;
  std::array<int, 3> other{0, 0, 0};
  std::array<int, 3> idx{0, 0, 0};
  bool done = false;
  while (!done) {
    bool any_finite = false;
    for (int i = 0; i < len; ++i) {
      idx[axis] = i;
      for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
      std::size_t k = 0;
      for (int dd = 0; dd < dim; ++dd) k = k * n[dd] + idx[dd];
      line[i] = d[k];
      if (is_finite(line[i])) any_finite = true;
    }
    if (any_finite) {
      auto res = ParabolaEnvelope::evaluate(ys, line, w, ys);
      for (int i = 0; i < len; ++i) {
        idx[axis] = i;
        for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
        std::size_t k = 0;
        for (int dd = 0; dd < dim; ++dd) k = k * n[dd] + idx[dd];
        d[k] = res[i];
      }
    }
    done = true;
    for (int o = 0; o < ocount; ++o) {
      if (++other[o] < n[odims[o]]) {
        done = false;
        break;
      }
      other[o] = 0;
    }
    if (ocount == 0) done = true;
  }
}

}  // namespace

GridFunction1D inf_convolution(const GridFunction1D& f, const CostSpec& cost, const Axis& out) {
  cost.validate();
  out.validate();
  check_has_finite(f.values());
  std::vector<double> res(out.n, kInf);
  for (int i = 0; i < out.n; ++i) {
    double x = out.node(i);
    double best = kInf;
    for (int j = 0; j < f.size(); ++j) {
      if (!is_finite(f[j])) continue;
      double c = f[j] + cost.phi1(x, f.x(j));
      if (c < best) best = c;
    }
    res[i] = best;
  }
  return GridFunction1D(out, std::move(res));
}

GridFunctionND inf_convolution(const GridFunctionND& f, const CostSpec& cost,
                               const std::vector<Axis>& out) {
  cost.validate();
  require((int)out.size() == f.dim(), "inf_convolution: output grid dimension mismatch");
  check_has_finite(f.values());
  std::array<Axis, 3> oax{};
  for (int d = 0; d < f.dim(); ++d) {
    out[d].validate();
    oax[d] = out[d];
  }
  Lattice lat(f.dim(), oax);
  std::vector<double> res(lat.total, kInf);
  for (std::size_t i = 0; i < lat.total; ++i) {
    auto x = lat.point(i);
    double best = kInf;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!is_finite(f[j])) continue;
      auto y = f.point(j);
      double c = f[j] + cost.phi(x.data(), y.data(), f.dim());
      if (c < best) best = c;
    }
    res[i] = best;
  }
  return GridFunctionND(f.dim(), oax, std::move(res));
}

GridFunction1D hopf_lax(const GridFunction1D& f, const RadialKernel& G, double t) {
  require(t > 0.0 && is_finite(t), "hopf_lax: t must be > 0");
  G.validate();
  if (G.kind == RadialKernel::Kind::Quadratic) {
    // f(y) + |x-y|^2 / (2t); exact discrete minimum via the envelope
    std::vector<double> ys(f.size());
    for (int i = 0; i < f.size(); ++i) ys[i] = f.x(i);
    auto res = ParabolaEnvelope::evaluate(ys, f.values(), 1.0 / (2.0 * t), ys);
    return GridFunction1D(f.axis(), std::move(res));
  }
  return inf_convolution(f, CostSpec::hopf_lax(G, t), f.axis());
}

GridFunctionND hopf_lax(const GridFunctionND& f, const RadialKernel& G, double t) {
  require(t > 0.0 && is_finite(t), "hopf_lax: t must be > 0");
  G.validate();
  if (G.kind == RadialKernel::Kind::Quadratic) {
    std::vector<double> d = f.values();
    for (int axis = 0; axis < f.dim(); ++axis)
      envelope_sweep(d, f.dim(), f.axes(), axis, 1.0 / (2.0 * t));
    return GridFunctionND(f.dim(), f.axes(), std::move(d));
  }
  std::vector<Axis> out(f.axes().begin(), f.axes().begin() + f.dim());
  return inf_convolution(f, CostSpec::hopf_lax(G, t), out);
}

SetOnGrid enlarge(const SetOnGrid& a, const CostSpec& cost, double eps) {
  cost.validate();
  a.validate();
  require(eps >= 0.0 || cost.allows_negative_eps(),
          "enlarge: negative eps is only legal for InnerProduct costs");
  SetOnGrid out = a;
  std::fill(out.mask.begin(), out.mask.end(), 0);
  if (a.count() == 0) return out;

  Lattice lat(a.dim, a.axes);
  std::vector<std::size_t> members;
  members.reserve(a.count());
  for (std::size_t k = 0; k < a.mask.size(); ++k)
    if (a.mask[k]) members.push_back(k);

  for (std::size_t i = 0; i < lat.total; ++i) {
    auto x = lat.point(i);
    for (std::size_t j : members) {
      auto y = lat.point(j);
      if (cost.phi(x.data(), y.data(), a.dim) < eps) {
        out.mask[i] = 1;
        break;
      }
    }
  }
  return out;
}

double next_rational(double a, int max_den) {
  require(max_den >= 1, "next_rational: denominator budget must be >= 1");
  if (!is_finite(a)) return kInf;
  double best = kInf;
  for (int j = 1; j <= max_den; ++j) {
    double q = (std::floor(a * j) + 1.0) / j;
    if (q <= a) q = (std::floor(a * j) + 2.0) / j;  // guards floor rounding at exact multiples
    if (q < best) best = q;
  }
  return best;
}

DecompositionReport decomposition_check(const GridFunction1D& f, const CostSpec& cost,
                                        double lambda, int denominator_budget) {
  cost.validate();
  require(denominator_budget >= 4, "decomposition_check: budget must be >= 4");
  require_valid(lambda);
  require(is_finite(lambda), "decomposition_check: lambda must be finite");

  const int n = f.size();
  GridFunction1D q = inf_convolution(f, cost, f.axis());

  std::vector<std::uint8_t> sub(n);
  std::size_t sub_count = 0;
  for (int i = 0; i < n; ++i) {
    sub[i] = q[i] < lambda ? 1 : 0;
    sub_count += sub[i];
  }

  // cache the cost matrix once
  std::vector<double> phi((std::size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi[(std::size_t)i * n + j] = cost.phi1(f.x(i), f.x(j));

  DecompositionReport rep;
  rep.lambda = lambda;
  rep.sublevel_count = sub_count;
  rep.union_subset_ok = true;
  rep.residual_monotone = true;

  for (int d = 4; d <= denominator_budget; d *= 2) {
    std::vector<double> nf(n);
    for (int j = 0; j < n; ++j) nf[j] = next_rational(f[j], d);
    std::size_t resid = 0;
    for (int i = 0; i < n; ++i) {
      bool in_union = false;
      for (int j = 0; j < n && !in_union; ++j) {
        if (!is_finite(nf[j])) continue;
        double np = next_rational(phi[(std::size_t)i * n + j], d);
        if (nf[j] + np < lambda) in_union = true;
      }
      if (in_union && !sub[i]) rep.union_subset_ok = false;
      if (sub[i] && !in_union) ++resid;
    }
    if (!rep.residual.empty() && resid > rep.residual.back()) rep.residual_monotone = false;
    rep.denominators.push_back(d);
    rep.residual.push_back(resid);
  }
  return rep;
}

std::vector<double> lambda_span(const GridFunction1D& a, const GridFunction1D& b, int count) {
  require(count >= 2, "lambda_span: need at least 2 lambdas");
  double lo = xmin(a.min_finite(), b.min_finite());
  double hi = xmax(a.max_finite(), b.max_finite());
  double r = hi - lo;
  if (!(r > 0.0)) r = 1.0;
  lo -= 0.02 * r;
  hi += 0.02 * r;
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

namespace {

// Largest distance that can still matter to the discrete minimum: beyond the
// point where the radial cost exceeds range(f) + phi(0), a candidate y never
// beats y = x.  Keeps the slope bound finite for kernels with +inf walls.
double effective_radius(const CostSpec& cost, const GridFunction1D& f) {
  double diam = f.axis().hi - f.axis().lo;
  double phi0 = cost.phi1(0.0, 0.0);
  double range = f.max_finite() - f.min_finite();
  double budget = range + phi0;
  double h = f.h();
  double r = 0.0;
  for (double probe = 0.0; probe <= diam; probe += 0.5 * h) {
    double x0 = 0.0, x1 = probe;
    if (cost.phi(&x1, &x0, 1) <= budget)
      r = probe;
    else
      break;
  }
  return std::min(diam, r + h);
}

// Total measure of the sampled box; the >= lambda mask is the exact cell
// complement of the strict sublevel mask, so its mass and boundary error
// follow from the sublevel ones.
double box_mass(const Axis& axis, const MeasureSpec& mu) {
  double m = 0.0;
  for (int i = 0; i < axis.n; ++i) m += cell_mass_1d(mu, axis.node(i), axis.h());
  return m;
}

}  // namespace

ComparisonReport comparison_theorem_check(const GridFunction1D& f, const CostSpec& cost,
                                          const MeasureSpec& mu,
                                          const std::vector<double>& lambda_grid) {
  cost.validate();
  bool supported = (mu.kind == MeasureKind::Lebesgue &&
                    (cost.kind == CostKind::Distance || cost.kind == CostKind::HopfLax)) ||
                   (mu.kind == MeasureKind::Gaussian1D && cost.kind == CostKind::Distance);
  require(supported,
          "comparison_theorem_check: (measure, cost) pair is not a certified "
          "isoperimetric-rearrangement pair");
  require(!lambda_grid.empty(), "comparison_theorem_check: empty lambda grid");

  GridFunction1D fstar = increasing_rearrangement(f, mu);

  auto evolve = [&](const GridFunction1D& g) {
    if (cost.kind == CostKind::HopfLax && cost.G.kind == RadialKernel::Kind::Quadratic)
      return hopf_lax(g, cost.G, cost.t);
    return inf_convolution(g, cost, g.axis());
  };
  GridFunction1D u = evolve(f);
  GridFunction1D v = evolve(fstar);

  double h = f.h();
  double lf = lipschitz_estimate(f);
  double lphi = cost.radial_slope_bound(effective_radius(cost, f));
  require(is_finite(lphi), "comparison_theorem_check: cost slope bound is infinite");
  double kappa = 0.5 * (lf + lphi) + 2.0 * lf;

  ComparisonReport rep;
  rep.kappa = kappa;
  rep.delta = kappa * h;
  rep.pass = true;
  const double total = box_mass(f.axis(), mu);
  for (double lam : lambda_grid) {
    ComparisonRow row;
    row.lambda = lam;
    auto lt_u = sublevel_mass(u, lam, mu);
    auto lt_v = sublevel_mass(v, lam, mu);
    auto lt_v_shift = sublevel_mass(v, lam - rep.delta, mu);
    row.mass_lhs = lt_u.mass;
    row.mass_rhs = lt_v.mass;
    row.mass_ge_lhs = total - lt_u.mass;
    row.mass_ge_rhs = total - lt_v_shift.mass;
    double err1 = lt_u.error_bound + lt_v_shift.error_bound;
    bool form1 = lt_u.mass >= lt_v_shift.mass - err1;
    bool form2 = row.mass_ge_lhs <= row.mass_ge_rhs + err1;
    row.slack = (lt_v.mass - lt_v_shift.mass) + err1;
    row.pass = form1 && form2;
    if (!row.pass) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ric
