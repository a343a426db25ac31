#include "ric/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "ric/infconv.hpp"
#include "ric/rearrange.hpp"

namespace ric {

namespace {

// 1D discrete conjugate of one line: g(x) = max over finite samples of
// x*y[j] - line[j].  Returns -inf when no sample is finite (the line carries
// no constraint).
void conjugate_line(const std::vector<double>& ys, const std::vector<double>& line,
                    const std::vector<double>& xs, std::vector<double>& out) {
  out.assign(xs.size(), -kInf);
  for (std::size_t q = 0; q < xs.size(); ++q) {
    double best = -kInf;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      double v = line[j];
      if (v >= kInf) continue;
      double cand = (v <= -kInf) ? -kInf : xs[q] * ys[j] - v;
      if (cand > best) best = cand;
    }
    out[q] = best;
  }
}

struct RawLattice {
  int dim = 1;
  std::array<int, 3> n{1, 1, 1};
  std::vector<double> vals;

  std::size_t total() const {
    std::size_t t = 1;
    for (int d = 0; d < dim; ++d) t *= (std::size_t)n[d];
    return t;
  }
};

// Replace axis `d` of the lattice by its discrete conjugate against the new
// axis nodes.  Intermediate values may be -inf (all-+inf input lines).
void conjugate_axis(RawLattice& lat, int d, const Axis& y_axis, const Axis& x_axis) {
  std::vector<double> ys(y_axis.n), xs(x_axis.n);
  for (int i = 0; i < y_axis.n; ++i) ys[i] = y_axis.node(i);
  for (int i = 0; i < x_axis.n; ++i) xs[i] = x_axis.node(i);

  std::array<int, 3> nn = lat.n;
  nn[d] = x_axis.n;
  RawLattice out;
  out.dim = lat.dim;
  out.n = nn;
  out.vals.assign(out.total(), -kInf);

  int odims[2], ocount = 0;
  for (int dd = 0; dd < lat.dim; ++dd)
    if (dd != d) odims[ocount++] = dd;

  std::vector<double> line(y_axis.n), res;
  std::array<int, 3> other{0, 0, 0};
  std::array<int, 3> idx{0, 0, 0};
  bool done = false;
  while (!done) {
    for (int i = 0; i < y_axis.n; ++i) {
      idx[d] = i;
      for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
      std::size_t k = 0;
      for (int dd = 0; dd < lat.dim; ++dd) k = k * lat.n[dd] + idx[dd];
      line[i] = lat.vals[k];
    }
    conjugate_line(ys, line, xs, res);
    for (int i = 0; i < x_axis.n; ++i) {
      idx[d] = i;
      for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
      std::size_t k = 0;
      for (int dd = 0; dd < out.dim; ++dd) k = k * out.n[dd] + idx[dd];
      out.vals[k] = res[i];
    }
    done = true;
    for (int o = 0; o < ocount; ++o) {
      if (++other[o] < lat.n[odims[o]]) {
        done = false;
        break;
      }
      other[o] = 0;
    }
    if (ocount == 0) done = true;
  }
  lat = std::move(out);
}

std::array<Axis, 3> axes_array(const std::vector<Axis>& out, int dim) {
  require((int)out.size() == dim, "transform: output grid dimension mismatch");
  std::array<Axis, 3> a{};
  for (int d = 0; d < dim; ++d) {
    out[d].validate();
    a[d] = out[d];
  }
  return a;
}

void check_proper(const std::vector<double>& v) {
  for (double x : v)
    if (is_finite(x)) return;
  throw std::invalid_argument("transform: input is identically +inf");
}

// Max Euclidean norm over the lattice corners.
double corner_radius(const std::vector<Axis>& axes) {
  double r2 = 0.0;
  for (const Axis& a : axes) {
    double m = std::max(std::fabs(a.lo), std::fabs(a.hi));
    r2 += m * m;
  }
  return std::sqrt(r2);
}

}  // namespace

GridFunction1D legendre_grid(const GridFunction1D& f, const Axis& out) {
  out.validate();
  check_proper(f.values());
  RawLattice lat;
  lat.dim = 1;
  lat.n = {f.size(), 1, 1};
  lat.vals = f.values();
  conjugate_axis(lat, 0, f.axis(), out);
  return GridFunction1D(out, std::move(lat.vals));
}

GridFunctionND legendre_grid(const GridFunctionND& f, const std::vector<Axis>& out) {
  auto oax = axes_array(out, f.dim());
  check_proper(f.values());
  RawLattice lat;
  lat.dim = f.dim();
  for (int d = 0; d < f.dim(); ++d) lat.n[d] = f.axis(d).n;
  lat.vals = f.values();
  for (int d = f.dim() - 1; d >= 0; --d) {
    // After the first sweep the lattice holds g = sup (x_d y_d - f) and the
    // remaining sups add g, so each later sweep conjugates -g.  (-inf slices
    // flip to +inf and are skipped as unconstrained, as required.)
    if (d < f.dim() - 1)
      for (double& v : lat.vals) v = -v;
    conjugate_axis(lat, d, f.axis(d), oax[d]);
  }
  return GridFunctionND(f.dim(), oax, std::move(lat.vals));
}

GridFunction1D legendre_grid_oracle(const GridFunction1D& f, const Axis& out) {
  out.validate();
  check_proper(f.values());
  std::vector<double> res(out.n);
  for (int i = 0; i < out.n; ++i) {
    double x = out.node(i);
    double best = -kInf;
    for (int j = 0; j < f.size(); ++j) {
      if (!is_finite(f[j])) continue;
      best = std::max(best, x * f.x(j) - f[j]);
    }
    res[i] = best;
  }
  return GridFunction1D(out, std::move(res));
}

GridFunctionND legendre_grid_oracle(const GridFunctionND& f, const std::vector<Axis>& out) {
  auto oax = axes_array(out, f.dim());
  check_proper(f.values());
  GridFunctionND shell = GridFunctionND::sample(
      f.dim(), oax, [](const std::array<double, 3>&) { return 0.0; });
  for (std::size_t i = 0; i < shell.size(); ++i) {
    auto x = shell.point(i);
    double best = -kInf;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!is_finite(f[j])) continue;
      auto y = f.point(j);
      double dot = 0.0;
      for (int d = 0; d < f.dim(); ++d) dot += x[d] * y[d];
      best = std::max(best, dot - f[j]);
    }
    shell[i] = best;
  }
  return shell;
}

void require_cvx0(const GridFunctionND& f) {
  for (int d = 0; d < f.dim(); ++d) {
    const Axis& a = f.axis(d);
    require(a.n % 2 == 1 && std::fabs(a.lo + a.hi) <= 1e-12 * std::fabs(a.hi - a.lo),
            "cvx0 carrier: axes must be symmetric with an odd node count");
  }
  std::array<int, 3> c{0, 0, 0};
  for (int d = 0; d < f.dim(); ++d) c[d] = f.axis(d).n / 2;
  require(std::fabs(f[f.index(c)]) <= 1e-12, "cvx0 carrier: f(0) must be 0");
  for (std::size_t k = 0; k < f.size(); ++k) {
    require(f[k] >= 0.0, "cvx0 carrier: f must be nonnegative");
    auto idx = f.unravel(k);
    std::array<int, 3> mir{0, 0, 0};
    for (int d = 0; d < f.dim(); ++d) mir[d] = f.axis(d).n - 1 - idx[d];
    double other = f[f.index(mir)];
    bool both_inf = !is_finite(f[k]) && !is_finite(other);
    require(both_inf || std::fabs(f[k] - other) <= 1e-9, "cvx0 carrier: f must be even");
  }
}

GridFunctionND t_transform(const GridFunctionND& f, const MonotoneMap& rho,
                           const std::vector<Axis>& out) {
  require_cvx0(f);
  GridFunctionND q = inf_convolution(f, CostSpec::inner_product(rho), out);
  GridFunctionND res = q;
  for (std::size_t k = 0; k < res.size(); ++k) res[k] = -q[k];
  return res;
}

GridFunctionND polar_transform(const GridFunctionND& f, const std::vector<Axis>& out) {
  require_cvx0(f);
  auto oax = axes_array(out, f.dim());

  bool all_zero = true;
  for (std::size_t k = 0; k < f.size() && all_zero; ++k)
    if (f[k] != 0.0) all_zero = false;

  std::size_t total = 1;
  for (int d = 0; d < f.dim(); ++d) total *= (std::size_t)oax[d].n;
  std::vector<double> res(total, 0.0);
  if (all_zero) return GridFunctionND(f.dim(), oax, std::move(res));

  GridFunctionND shell(f.dim(), oax, std::vector<double>(total, 0.0));
  for (std::size_t i = 0; i < total; ++i) {
    auto x = shell.point(i);
    double best = -kInf;
    bool has_candidate = false;
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto y = f.point(j);
      double dot = 0.0;
      for (int d = 0; d < f.dim(); ++d) dot += x[d] * y[d];
      double num = dot - 1.0;
      double den = f[j];
      double cand;
      if (den >= kInf) {
        cand = 0.0;  // finite / +inf
      } else if (den > 0.0) {
        cand = num / den;
      } else {  // den == 0 (validated nonnegative)
        if (num > 0.0)
          cand = kInf;
        else if (num == 0.0)
          cand = 0.0;
        else
          continue;  // negative / 0 dropped
      }
      has_candidate = true;
      if (cand > best) best = cand;
      if (best >= kInf) break;
    }
    require(has_candidate, "polar_transform: empty candidate set");
    res[i] = best;
  }
  // pin the origin: every numerator there is -1, so the sup is <= 0
  std::array<int, 3> c{0, 0, 0};
  for (int d = 0; d < f.dim(); ++d) c[d] = oax[d].n / 2;
  GridFunctionND outg(f.dim(), oax, std::move(res));
  bool centered = true;
  for (int d = 0; d < f.dim(); ++d)
    if (oax[d].n % 2 == 0 || std::fabs(oax[d].lo + oax[d].hi) > 1e-12 * (oax[d].hi - oax[d].lo))
      centered = false;
  if (centered) outg[outg.index(c)] = 0.0;
  return outg;
}

std::vector<double> lambda_span_nd(const GridFunctionND& a, const GridFunctionND& b, int count) {
  require(count >= 2, "lambda_span_nd: need at least 2 lambdas");
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

// Lebesgue mass of {g <= lambda} as box total minus the strict superlevel
// mass; carries the same one-cell boundary error.
LevelSetMass mass_le(const GridFunctionND& g, double lambda) {
  auto gt = superlevel_mass(g, lambda, MeasureSpec::lebesgue(g.dim()));
  double total = g.cell_volume() * (double)g.size();
  return {lambda, total - gt.mass, gt.error_bound};
}

GridFunctionND apply_transform(const GridFunctionND& f, TransformKind kind,
                               const MonotoneMap* rho, const std::vector<Axis>& out) {
  switch (kind) {
    case TransformKind::Legendre:
      return legendre_grid(f, out);
    case TransformKind::Polar:
      return polar_transform(f, out);
    case TransformKind::T:
      require(rho != nullptr, "transform_comparison_check: T needs a map");
      return t_transform(f, *rho, out);
  }
  throw std::invalid_argument("transform_comparison_check: unknown transform");
}

}  // namespace

TransformReport transform_comparison_check(const GridFunctionND& f, TransformKind kind,
                                           const MonotoneMap* rho, const std::vector<Axis>& out,
                                           const std::vector<double>& lambdas) {
  require_cvx0(f);
  require(!lambdas.empty(), "transform_comparison_check: empty lambda grid");
  const int n = f.dim();
  GridFunctionND fstar = increasing_rearrangement(f, MeasureSpec::lebesgue(n));

  GridFunctionND af = apply_transform(f, kind, rho, out);
  GridFunctionND afs = apply_transform(fstar, kind, rho, out);

  double hmax = 0.0;
  for (int d = 0; d < n; ++d) hmax = std::max(hmax, f.axis(d).h());
  double lf = 0.0;
  {
    // Lipschitz activity of f over its finite region (f_* corner values may
    // be +inf; f itself is finite here by require_cvx0 instances in use)
    for (std::size_t k = 0; k < f.size(); ++k) {
      auto idx = f.unravel(k);
      for (int d = 0; d < n; ++d) {
        if (idx[d] + 1 >= f.axis(d).n) continue;
        auto j = idx;
        j[d] += 1;
        double a = f[k], b = f[f.index(j)];
        if (!is_finite(a) || !is_finite(b)) continue;
        lf = std::max(lf, std::fabs(b - a) / f.axis(d).h());
      }
    }
  }
  double rx = corner_radius(out);
  double sq = std::sqrt((double)n);

  TransformReport rep;
  rep.kind = kind;
  rep.pass = true;

  if (kind == TransformKind::Polar) {
    // Sublevel sets {Af <= lambda} are intersections of halfspaces
    // <x,y> <= 1 + lambda f(y); node snapping and rearrangement value error
    // perturb the right-hand sides additively by S, and since those sides
    // are >= 1 the set dilates by at most the factor (1 + S).  Two chained
    // dilations (f to the continuum statement and back to f_*) give the
    // (1 + S)^(2n) mass factor.
    rep.kappa = 2.0 * sq + 2.0;
    for (double lam : lambdas) {
      TransformRow row;
      row.lambda = lam;
      require(lam > 0.0, "transform_comparison_check: polar lambdas must be positive");
      auto ml = mass_le(af, lam);
      auto mr = mass_le(afs, lam);
      double s = hmax * (sq * rx + lam * lf * rep.kappa);
      double factor = std::pow(1.0 + s, 2.0 * n);
      row.mass_lhs = ml.mass;
      row.mass_rhs = mr.mass;
      row.slack = (factor - 1.0) * mr.mass + ml.error_bound + mr.error_bound;
      row.pass = ml.mass <= mr.mass * factor + ml.error_bound + mr.error_bound;
      if (!row.pass) rep.pass = false;
      rep.rows.push_back(row);
    }
    return rep;
  }

  // Additive lambda shift: moving the sup's argument to the nearest node
  // costs (R_x * rho_slope + Lf) * sqrt(n)/2 * h, the rearrangement's value
  // error costs 2*Lf*h, and the finite/+inf fringe of f_* near the volume
  // ball costs (R_x * rho_slope * sqrt(n) + Lf) * h.
  double rho_slope = 1.0;
  if (kind == TransformKind::T) {
    double dot_bound = rx * corner_radius(std::vector<Axis>(
                                f.axes().begin(), f.axes().begin() + n));
    rho_slope = rho->slope_bound(-dot_bound, dot_bound);
  }
  double kappa = 0.5 * sq * (rx * rho_slope + lf) + 2.0 * lf + (sq * rx * rho_slope + lf);
  rep.kappa = kappa;
  double delta = kappa * hmax;
  for (double lam : lambdas) {
    TransformRow row;
    row.lambda = lam;
    auto ml = mass_le(af, lam);
    auto mr = mass_le(afs, lam + delta);
    row.mass_lhs = ml.mass;
    row.mass_rhs = mass_le(afs, lam).mass;
    row.slack = (mr.mass - row.mass_rhs) + ml.error_bound + mr.error_bound;
    row.pass = ml.mass <= mr.mass + ml.error_bound + mr.error_bound;
    if (!row.pass) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

ScalingIdentityReport polar_legendre_identity_check(const GridFunctionND& f,
                                                    const std::vector<Axis>& out, double lambda) {
  require(lambda > 0.0, "polar_legendre_identity_check: lambda must be positive");
  require_cvx0(f);
  GridFunctionND pol = polar_transform(f, out);

  ScalingIdentityReport rep;
  rep.lambda = lambda;
  rep.pass = true;
  const double cv = pol.cell_volume();

  for (std::size_t i = 0; i < pol.size(); ++i) {
    auto x = pol.point(i);
    // discrete conjugate at the off-grid point x / lambda
    double lf = -kInf;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!is_finite(f[j])) continue;
      auto y = f.point(j);
      double dot = 0.0;
      for (int d = 0; d < f.dim(); ++d) dot += (x[d] / lambda) * y[d];
      lf = std::max(lf, dot - f[j]);
    }
    bool polar_gt = pol[i] > lambda;
    bool leg_gt = lf > 1.0 / lambda;
    // the origin pin makes pol(0) = 0 while the raw sup may sit below 0;
    // both classify as "not greater" for positive lambda, so no exception
    if (polar_gt) rep.mass_polar_gt += cv;
    if (leg_gt) rep.mass_legendre_gt += cv;
    if (polar_gt != leg_gt) {
      ++rep.mismatched_cells;
      double tol = 1e-9 * (1.0 + std::fabs(lambda) + std::fabs(lf));
      bool near = std::fabs(pol[i] - lambda) <= tol || std::fabs(lf - 1.0 / lambda) <= tol;
      if (!near) rep.pass = false;
    }
  }
  return rep;
}

}  // namespace ric
