#include "ric/cost.hpp"

#include <algorithm>
#include <cmath>

namespace ric {

// ------------------------------------------------------------ MonotoneMap ---

void MonotoneMap::validate() const {
  require(xs.size() == ys.size(), "MonotoneMap: table size mismatch");
  require(xs.size() >= 2, "MonotoneMap: need at least two table nodes");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(is_finite(xs[i]) && is_finite(ys[i]), "MonotoneMap: non-finite table entry");
    if (i > 0) {
      require(xs[i] > xs[i - 1], "MonotoneMap: abscissae must be strictly increasing");
      require(ys[i] >= ys[i - 1], "MonotoneMap: values must be nondecreasing");
    }
  }
}

double MonotoneMap::operator()(double t) const {
  const std::size_t n = xs.size();
  if (t <= xs.front()) {
    double s = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    return ys.front() + s * (t - xs.front());
  }
  if (t >= xs.back()) {
    double s = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    return ys.back() + s * (t - xs.back());
  }
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  std::size_t i = (std::size_t)(it - xs.begin());  // xs[i-1] < t < xs[i]
  double s = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + s * (t - xs[i - 1]);
}

double MonotoneMap::generalized_inverse(double e) const {
  const std::size_t n = xs.size();
  if (e <= ys.front()) {
    double s = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    if (s > 0.0) return xs.front() + (e - ys.front()) / s;
    return -kInf;  // the left extension already sits at ys.front() >= e
  }
  auto it = std::lower_bound(ys.begin(), ys.end(), e);
  if (it == ys.end()) {
    double s = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    if (s > 0.0) return xs.back() + (e - ys.back()) / s;
    return kInf;  // never reached
  }
  std::size_t i = (std::size_t)(it - ys.begin());  // first ys[i] >= e, i >= 1 here
  if (ys[i - 1] >= e) return xs[i - 1];            // defensive; lower_bound should preclude
  double s = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
  return xs[i - 1] + (e - ys[i - 1]) / s;
}

double MonotoneMap::slope_bound(double lo, double hi) const {
  require(lo <= hi, "MonotoneMap::slope_bound: empty interval");
  const std::size_t n = xs.size();
  auto seg = [&](std::size_t i) { return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]); };
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (xs[i] < hi && xs[i + 1] > lo) best = std::max(best, seg(i));
  if (lo < xs.front()) best = std::max(best, seg(0));       // left extension
  if (hi > xs.back()) best = std::max(best, seg(n - 2));    // right extension
  return best;
}

bool MonotoneMap::strictly_increasing() const {
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (!(ys[i] > ys[i - 1])) return false;
  return true;
}

MonotoneMap MonotoneMap::identity() { return from_table({-1.0, 1.0}, {-1.0, 1.0}); }

MonotoneMap MonotoneMap::from_table(std::vector<double> xs, std::vector<double> ys) {
  MonotoneMap m;
  m.xs = std::move(xs);
  m.ys = std::move(ys);
  m.validate();
  return m;
}

// ----------------------------------------------------------- RadialKernel ---

double RadialKernel::operator()(double r) const {
  if (kind == Kind::Quadratic) return 0.5 * r * r;
  return profile.eval(r);
}

void RadialKernel::validate() const {
  if (kind == Kind::Quadratic) return;
  profile.validate();
  require(profile.v.front() >= 0.0, "RadialKernel: G(0) must be >= 0");
}

RadialKernel RadialKernel::quadratic() { return RadialKernel{}; }

RadialKernel RadialKernel::from_profile(PLProfile p) {
  RadialKernel k;
  k.kind = Kind::Profile;
  k.profile = std::move(p);
  k.validate();
  return k;
}

// --------------------------------------------------------------- CostSpec ---

CostSpec CostSpec::hopf_lax(RadialKernel G, double t) {
  CostSpec c;
  c.kind = CostKind::HopfLax;
  c.G = std::move(G);
  c.t = t;
  c.validate();
  return c;
}

CostSpec CostSpec::inner_product(MonotoneMap rho) {
  CostSpec c;
  c.kind = CostKind::InnerProduct;
  c.map = std::move(rho);
  c.validate();
  return c;
}

CostSpec CostSpec::distance(MonotoneMap alpha) {
  CostSpec c;
  c.kind = CostKind::Distance;
  c.map = std::move(alpha);
  c.validate();
  return c;
}

void CostSpec::validate() const {
  switch (kind) {
    case CostKind::HopfLax:
      G.validate();
      require(t > 0.0 && is_finite(t), "CostSpec: HopfLax needs t > 0");
      break;
    case CostKind::InnerProduct:
      map.validate();
      require(map.strictly_increasing(), "CostSpec: InnerProduct map must be increasing");
      require(std::fabs(map(0.0)) <= 1e-12, "CostSpec: InnerProduct map must vanish at 0");
      break;
    case CostKind::Distance:
      map.validate();
      break;
  }
}

double CostSpec::phi(const double* x, const double* y, int dim) const {
  if (kind == CostKind::InnerProduct) {
    double dot = 0.0;
    for (int d = 0; d < dim; ++d) dot += x[d] * y[d];
    return -map(dot);
  }
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    double dd = x[d] - y[d];
    r2 += dd * dd;
  }
  double r = std::sqrt(r2);
  if (kind == CostKind::Distance) return map(r);
  return t * G(r / t);
}

double CostSpec::radial_slope_bound(double rmax) const {
  require(rmax >= 0.0, "radial_slope_bound: rmax must be >= 0");
  switch (kind) {
    case CostKind::Distance:
      return map.slope_bound(0.0, rmax);
    case CostKind::HopfLax: {
      // slope of r -> t*G(r/t) equals G'(r/t)
      double s = rmax / t;
      if (G.kind == RadialKernel::Kind::Quadratic) return s;
      const PLProfile& p = G.profile;
      double last = p.r.back();
      double best = 0.0;
      for (std::size_t i = 0; i + 1 < p.r.size(); ++i) {
        if (p.r[i] >= s) break;
        best = std::max(best, (p.v[i + 1] - p.v[i]) / (p.r[i + 1] - p.r[i]));
      }
      if (s > last) best = std::max(best, p.tail_slope);  // kInf wall propagates
      return best;
    }
    case CostKind::InnerProduct:
      throw std::invalid_argument("radial_slope_bound: cost is not radial");
  }
  return 0.0;
}

}  // namespace ric
