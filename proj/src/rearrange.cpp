#include "ric/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ric/envelope.hpp"

namespace ric {

namespace {

void check_measure(const MeasureSpec& mu, int dim) {
  if (mu.kind == MeasureKind::Gaussian1D)
    require(dim == 1, "Gaussian1D measure needs a 1-dimensional carrier");
  else
    require(mu.dim == dim, "Lebesgue measure dimension mismatch");
}

// masses[i] = mass of the cell owned by node i
std::vector<double> cell_masses_1d(const Axis& axis, const MeasureSpec& mu) {
  std::vector<double> m(axis.n);
  double h = axis.h();
  for (int i = 0; i < axis.n; ++i) m[i] = cell_mass_1d(mu, axis.node(i), h);
  return m;
}

struct MassPair {
  double mass = 0.0;
  double err = 0.0;
};

template <class Pred>
MassPair masked_mass_1d(const GridFunction1D& f, const MeasureSpec& mu, Pred in) {
  MassPair out;
  double h = f.h();
  for (int i = 0; i < f.size(); ++i) {
    bool a = in(f[i]);
    if (a) out.mass += cell_mass_1d(mu, f.x(i), h);
    bool straddle = (i > 0 && in(f[i - 1]) != a) || (i + 1 < f.size() && in(f[i + 1]) != a);
    if (straddle) out.err += cell_mass_1d(mu, f.x(i), h);
  }
  return out;
}

template <class Pred>
MassPair masked_mass_nd(const GridFunctionND& f, Pred in) {
  MassPair out;
  const double cv = f.cell_volume();
  const int dim = f.dim();
  for (std::size_t k = 0; k < f.size(); ++k) {
    bool a = in(f[k]);
    if (a) out.mass += cv;
    auto idx = f.unravel(k);
    bool straddle = false;
    for (int d = 0; d < dim && !straddle; ++d) {
      for (int step = -1; step <= 1 && !straddle; step += 2) {
        auto j = idx;
        j[d] += step;
        if (j[d] < 0 || j[d] >= f.axis(d).n) continue;
        if (in(f[f.index(j)]) != a) straddle = true;
      }
    }
    if (straddle) out.err += cv;
  }
  return out;
}

// Distribution plateaus: distinct values with cumulative cell mass, ordered
// by the rearrangement direction.
struct Plateaus {
  std::vector<double> value;
  std::vector<double> cum;

  // First plateau whose cumulative mass strictly exceeds the target.  At or
  // past the total the descending direction clamps to the last plateau (the
  // rearranged function decays to its minimum), while the ascending direction
  // diverges: a node whose canonical set outweighs the whole sample lies
  // outside every sublevel ball, so the increasing rearrangement is +inf
  // there.
  double at(double target, bool inf_past_total) const {
    if (inf_past_total && target > cum.back()) return kInf;
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    std::size_t i = (std::size_t)(it - cum.begin());
    if (i >= value.size()) i = value.size() - 1;
    return value[i];
  }
};

Plateaus build_plateaus(std::vector<std::pair<double, double>> vm, bool descending) {
  if (descending)
    std::sort(vm.begin(), vm.end(), [](auto& a, auto& b) { return a.first > b.first; });
  else
    std::sort(vm.begin(), vm.end(), [](auto& a, auto& b) { return a.first < b.first; });
  Plateaus p;
  double acc = 0.0;
  for (std::size_t i = 0; i < vm.size(); ++i) {
    acc += vm[i].second;
    if (!p.value.empty() && vm[i].first == p.value.back()) {
      p.cum.back() = acc;
    } else {
      p.value.push_back(vm[i].first);
      p.cum.push_back(acc);
    }
  }
  return p;
}

// Target mass of the canonical set reaching node x: centered ball through x
// for Lebesgue, left half-line (-inf, x) for Gaussian1D.
double target_mass_1d(const MeasureSpec& mu, double x) {
  if (mu.kind == MeasureKind::Gaussian1D) return normal_cdf(x);
  return ball_mass(1, std::fabs(x));
}

}  // namespace

LevelSetMass superlevel_mass(const GridFunction1D& f, double lambda, const MeasureSpec& mu) {
  check_measure(mu, 1);
  auto mp = masked_mass_1d(f, mu, [lambda](double v) { return v > lambda; });
  return {lambda, mp.mass, mp.err};
}

LevelSetMass sublevel_mass(const GridFunction1D& f, double lambda, const MeasureSpec& mu) {
  check_measure(mu, 1);
  auto mp = masked_mass_1d(f, mu, [lambda](double v) { return v < lambda; });
  return {lambda, mp.mass, mp.err};
}

LevelSetMass superlevel_mass(const GridFunctionND& f, double lambda, const MeasureSpec& mu) {
  check_measure(mu, f.dim());
  require(mu.kind == MeasureKind::Lebesgue, "superlevel_mass: ND carriers are Lebesgue-only");
  auto mp = masked_mass_nd(f, [lambda](double v) { return v > lambda; });
  return {lambda, mp.mass, mp.err};
}

LevelSetMass sublevel_mass(const GridFunctionND& f, double lambda, const MeasureSpec& mu) {
  check_measure(mu, f.dim());
  require(mu.kind == MeasureKind::Lebesgue, "sublevel_mass: ND carriers are Lebesgue-only");
  auto mp = masked_mass_nd(f, [lambda](double v) { return v < lambda; });
  return {lambda, mp.mass, mp.err};
}

GridFunction1D decreasing_rearrangement(const GridFunction1D& f, const MeasureSpec& mu) {
  check_measure(mu, 1);
  auto cm = cell_masses_1d(f.axis(), mu);
  std::vector<std::pair<double, double>> vm(f.size());
  for (int i = 0; i < f.size(); ++i) {
    require(f[i] >= 0.0, "decreasing_rearrangement: f must be nonnegative");
    vm[i] = {f[i], cm[i]};
  }
  auto p = build_plateaus(std::move(vm), /*descending=*/true);
  std::vector<double> out(f.size());
  for (int i = 0; i < f.size(); ++i) out[i] = p.at(target_mass_1d(mu, f.x(i)), false);
  return GridFunction1D(f.axis(), std::move(out));
}

GridFunction1D increasing_rearrangement(const GridFunction1D& f, const MeasureSpec& mu) {
  check_measure(mu, 1);
  auto cm = cell_masses_1d(f.axis(), mu);
  std::vector<std::pair<double, double>> vm(f.size());
  for (int i = 0; i < f.size(); ++i) vm[i] = {f[i], cm[i]};
  auto p = build_plateaus(std::move(vm), /*descending=*/false);
  std::vector<double> out(f.size());
  for (int i = 0; i < f.size(); ++i) out[i] = p.at(target_mass_1d(mu, f.x(i)), true);
  return GridFunction1D(f.axis(), std::move(out));
}

GridFunctionND decreasing_rearrangement(const GridFunctionND& f, const MeasureSpec& mu) {
  check_measure(mu, f.dim());
  require(mu.kind == MeasureKind::Lebesgue, "decreasing_rearrangement: ND is Lebesgue-only");
  const double cv = f.cell_volume();
  std::vector<std::pair<double, double>> vm(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    require(f[k] >= 0.0, "decreasing_rearrangement: f must be nonnegative");
    vm[k] = {f[k], cv};
  }
  auto p = build_plateaus(std::move(vm), /*descending=*/true);
  GridFunctionND out = f;
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto pt = f.point(k);
    double r2 = 0.0;
    for (int d = 0; d < f.dim(); ++d) r2 += pt[d] * pt[d];
    out[k] = p.at(ball_mass(f.dim(), std::sqrt(r2)), false);
  }
  return out;
}

GridFunctionND increasing_rearrangement(const GridFunctionND& f, const MeasureSpec& mu) {
  check_measure(mu, f.dim());
  require(mu.kind == MeasureKind::Lebesgue, "increasing_rearrangement: ND is Lebesgue-only");
  const double cv = f.cell_volume();
  std::vector<std::pair<double, double>> vm(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) vm[k] = {f[k], cv};
  auto p = build_plateaus(std::move(vm), /*descending=*/false);
  GridFunctionND out = f;
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto pt = f.point(k);
    double r2 = 0.0;
    for (int d = 0; d < f.dim(); ++d) r2 += pt[d] * pt[d];
    out[k] = p.at(ball_mass(f.dim(), std::sqrt(r2)), true);
  }
  return out;
}

double lipschitz_estimate(const GridFunction1D& f) {
  double L = 0.0;
  double h = f.h();
  for (int i = 0; i + 1 < f.size(); ++i) {
    require(is_finite(f[i]) && is_finite(f[i + 1]),
            "lipschitz_estimate: f takes +inf inside the box");
    L = std::max(L, std::fabs(f[i + 1] - f[i]) / h);
  }
  return L;
}

double lipschitz_estimate(const GridFunctionND& f) {
  double L = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    require(is_finite(f[k]), "lipschitz_estimate: f takes +inf inside the box");
    auto idx = f.unravel(k);
    for (int d = 0; d < f.dim(); ++d) {
      if (idx[d] + 1 >= f.axis(d).n) continue;
      auto j = idx;
      j[d] += 1;
      L = std::max(L, std::fabs(f[f.index(j)] - f[k]) / f.axis(d).h());
    }
  }
  return L;
}

std::vector<double> squared_distance_field(const SetOnGrid& a) {
  a.validate();
  require(a.count() > 0, "squared_distance_field: empty set");
  std::size_t total = a.mask.size();
  std::vector<double> d(total);
  for (std::size_t k = 0; k < total; ++k) d[k] = a.mask[k] ? 0.0 : kInf;

  // per-axis envelope sweeps; strides walk every line along the axis
  std::array<int, 3> n{1, 1, 1};
  for (int dd = 0; dd < a.dim; ++dd) n[dd] = a.axes[dd].n;
  for (int axis = 0; axis < a.dim; ++axis) {
    const int len = n[axis];
    std::vector<double> ys(len), line(len), res;
    for (int i = 0; i < len; ++i) ys[i] = a.axes[axis].node(i);
    // iterate over all lines: indices of the other axes
    std::array<int, 3> other{0, 0, 0};
    int odims[2], ocount = 0;
    for (int dd = 0; dd < a.dim; ++dd)
      if (dd != axis) odims[ocount++] = dd;
    std::array<int, 3> idx{0, 0, 0};
    bool done = false;
    while (!done) {
      bool any_finite = false;
      for (int i = 0; i < len; ++i) {
        idx[axis] = i;
        for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
        std::size_t k = 0;
        for (int dd = 0; dd < a.dim; ++dd) k = k * n[dd] + idx[dd];
        line[i] = d[k];
        if (is_finite(line[i])) any_finite = true;
      }
      if (any_finite) {
        res = ParabolaEnvelope::evaluate(ys, line, 1.0, ys);
        for (int i = 0; i < len; ++i) {
          idx[axis] = i;
          for (int o = 0; o < ocount; ++o) idx[odims[o]] = other[o];
          std::size_t k = 0;
          for (int dd = 0; dd < a.dim; ++dd) k = k * n[dd] + idx[dd];
          d[k] = res[i];
        }
      }
      // advance the line counter
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
  return d;
}

namespace {

LipschitzCheckReport lipschitz_check_impl(const std::vector<double>& values,
                                          const SetOnGrid& shape_probe, double L,
                                          double dist_factor,
                                          const std::vector<double>& eps_grid,
                                          const std::vector<double>& lambda_grid) {
  LipschitzCheckReport rep;
  rep.lipschitz = L;
  for (double lambda : lambda_grid) {
    SetOnGrid A = shape_probe;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      A.mask[k] = values[k] < lambda ? 1 : 0;
      cnt += A.mask[k];
    }
    if (cnt == 0) {
      for (double eps : eps_grid) rep.rows.push_back({lambda, eps, true, -kInf});
      continue;
    }
    auto d2 = squared_distance_field(A);
    for (double eps : eps_grid) {
      LipschitzCheckRow row{lambda, eps, true, -kInf};
      const double e2 = eps * eps;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(d2[k] < e2)) continue;  // not reached by the strict enlargement
        double bound = lambda + L * dist_factor * eps;
        double excess = values[k] - bound;
        if (excess > row.worst_excess) row.worst_excess = excess;
        if (values[k] >= bound) row.holds = false;
      }
      if (!row.holds) rep.holds = false;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace

LipschitzCheckReport enlargement_lipschitz_check(const GridFunction1D& f, double L,
                                                 const std::vector<double>& eps_grid,
                                                 const std::vector<double>& lambda_grid) {
  require(L >= 0.0, "enlargement_lipschitz_check: L must be >= 0");
  SetOnGrid probe;
  probe.dim = 1;
  probe.axes[0] = f.axis();
  probe.mask.assign(f.size(), 0);
  return lipschitz_check_impl(f.values(), probe, L, 1.0, eps_grid, lambda_grid);
}

LipschitzCheckReport enlargement_lipschitz_check(const GridFunctionND& f, double L,
                                                 const std::vector<double>& eps_grid,
                                                 const std::vector<double>& lambda_grid) {
  require(L >= 0.0, "enlargement_lipschitz_check: L must be >= 0");
  SetOnGrid probe;
  probe.dim = f.dim();
  probe.axes = f.axes();
  probe.mask.assign(f.size(), 0);
  double factor = std::sqrt((double)f.dim());
  return lipschitz_check_impl(f.values(), probe, L, factor, eps_grid, lambda_grid);
}

}  // namespace ric
