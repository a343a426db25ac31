#include "ric/profile.hpp"

#include <algorithm>
#include <cmath>

namespace ric {

double PLProfile::eval(double x) const {
  require(x >= 0.0 && !std::isnan(x), "PLProfile::eval: x must be >= 0");
  if (x >= r.back()) {
    if (x == r.back()) return v.back();
    if (tail_slope == kInf) return kInf;
    return v.back() + tail_slope * (x - r.back());
  }
  // piece with r[i] <= x < r[i+1]
  int i = (int)(std::upper_bound(r.begin(), r.end(), x) - r.begin()) - 1;
  if (i < 0) i = 0;
  double t = (x - r[i]) / (r[i + 1] - r[i]);
  return v[i] + t * (v[i + 1] - v[i]);
}

double PLProfile::max_slope() const {
  if (tail_slope != kInf) return tail_slope;
  if (knots() >= 2) return (v.back() - v[knots() - 2]) / (r.back() - r[knots() - 2]);
  return 0.0;
}

void PLProfile::validate() const {
  require(!r.empty() && r.size() == v.size(), "PLProfile: knot/value size mismatch");
  require(r[0] == 0.0, "PLProfile: first knot must be 0");
  double prev_slope = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(is_finite(v[i]), "PLProfile: knot values must be finite");
    require(!std::isnan(r[i]), "PLProfile: NaN knot");
    if (i > 0) {
      require(r[i] > r[i - 1], "PLProfile: knots must be strictly increasing");
      double m = (v[i] - v[i - 1]) / (r[i] - r[i - 1]);
      require(m >= -1e-12, "PLProfile: decreasing piece");
      require(m >= prev_slope - 1e-9 * (1.0 + std::fabs(prev_slope)),
              "PLProfile: slopes must be nondecreasing (not convex)");
      prev_slope = std::max(prev_slope, m);
    }
  }
  require(!std::isnan(tail_slope), "PLProfile: NaN tail slope");
  if (tail_slope != kInf)
    require(tail_slope >= prev_slope - 1e-9 * (1.0 + std::fabs(prev_slope)),
            "PLProfile: tail slope below last chord");
}

PLProfile convex_profile(std::vector<double> knots, std::vector<double> values,
                         double tail_slope) {
  PLProfile p{std::move(knots), std::move(values), tail_slope};
  p.validate();
  require(p.v[0] == 0.0, "convex_profile: value at 0 must be 0");
  require(p.tail_slope > 0.0 && p.tail_slope != kInf,
          "convex_profile: tail slope must be finite and positive");
  return p;
}

PLProfile scale_arg(const PLProfile& p, double lambda) {
  require(lambda > 0.0 && is_finite(lambda), "scale_arg: lambda must be positive");
  PLProfile q = p;
  for (double& x : q.r) x /= lambda;
  q.tail_slope = (p.tail_slope == kInf) ? kInf : p.tail_slope * lambda;
  return q;
}

PLProfile legendre_conjugate(const PLProfile& p) {
  p.validate();
  const int K = p.knots() - 1;
  // For rho between the chord slopes around knot i the sup is attained at
  // r[i], so the conjugate has knots at the distinct chord slopes and slope
  // r[i] in between.  Values are accumulated from those slopes instead of
  // being evaluated per anchor: the slope sequence r[i] is nondecreasing by
  // construction, so the output stays convex under rounding even when two
  // chord slopes agree to within rounding -- independently evaluated anchor
  // values would put a noise-scale chord over such a gap and could come out
  // locally concave.  Gaps under a relative epsilon collapse into one knot,
  // moving values by at most epsilon * r_max.
  PLProfile q;
  q.r.push_back(0.0);
  q.v.push_back(-p.v[0]);
  double slope_lo = 0.0;
  auto distinct = [](double m, double lo) { return m > lo + 1e-12 * (1.0 + std::fabs(lo)); };
  for (int i = 0; i < K; ++i) {
    double m = (p.v[i + 1] - p.v[i]) / (p.r[i + 1] - p.r[i]);
    if (distinct(m, slope_lo)) {
      // piece [slope_lo, m] anchored at knot i ends here
      q.r.push_back(m);
      q.v.push_back(q.v.back() + p.r[i] * (m - slope_lo));
      slope_lo = m;
    }
  }
  if (p.tail_slope == kInf) {
    // input is +inf past r[K]: conjugate finite everywhere with final slope
    // r[K] (anchor stuck at the domain end)
    q.tail_slope = p.r[K];
  } else if (distinct(p.tail_slope, slope_lo)) {
    q.r.push_back(p.tail_slope);
    q.v.push_back(q.v.back() + p.r[K] * (p.tail_slope - slope_lo));
    q.tail_slope = kInf;  // +inf past the largest slope
  } else {
    // no growth beyond slope_lo (e.g. constant input): domain ends here
    q.tail_slope = kInf;
  }
  q.validate();
  return q;
}

namespace {

struct Line {
  double a, b;  // a * r + b
};

// Upper envelope of lines on [0, cut], emitted as PL knots. Lines are sorted
// by slope; dominated lines are dropped with the usual hull test.
PLProfile upper_envelope(std::vector<Line> lines, double cut) {
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  // same slope: keep largest intercept
  std::vector<Line> uniq;
  for (const auto& l : lines) {
    if (!uniq.empty() && uniq.back().a == l.a) {
      uniq.back().b = std::max(uniq.back().b, l.b);
      continue;
    }
    uniq.push_back(l);
  }
  // full-line upper hull by increasing slope; the walk below starts at r = 0,
  // which discards pieces active only at negative r
  std::vector<Line> hull;
  auto cross = [](const Line& p, const Line& q) { return (p.b - q.b) / (q.a - p.a); };
  for (const auto& l : uniq) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(l);
  }
  // Walk the hull left to right over [0, cut].  Values are accumulated from
  // the active line's slope rather than evaluated per line: the slopes are
  // strictly increasing along the hull, so the output stays convex under
  // rounding even when two crossovers nearly coincide (such knots collapse;
  // per-line evaluation would put a noise-scale chord over the tiny gap).
  PLProfile out;
  // find the line active at r = 0: the hull is ordered by slope with
  // nondecreasing crossover points, so skip crossovers at or left of 0
  std::vector<double> xs;  // crossovers between consecutive hull lines
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) xs.push_back(cross(hull[i], hull[i + 1]));
  std::size_t start = 0;
  while (start < xs.size() && xs[start] <= 0.0) ++start;
  out.r.push_back(0.0);
  out.v.push_back(hull[start].b);
  std::size_t active = start;  // hull line active at and after out.r.back()
  for (std::size_t i = start; i < xs.size(); ++i) {
    double x = xs[i];
    if (is_finite(cut) && x >= cut) break;
    double prev = out.r.back();
    if (x > prev + 1e-12 * (1.0 + std::fabs(prev))) {
      out.r.push_back(x);
      out.v.push_back(out.v.back() + hull[active].a * (x - prev));
    }
    active = i + 1;  // hull[i+1] takes over past xs[i] whether or not emitted
  }
  // terminal behaviour
  if (is_finite(cut)) {
    double prev = out.r.back();
    if (cut > prev) {
      out.r.push_back(cut);
      out.v.push_back(out.v.back() + hull[active].a * (cut - prev));
    }
    out.tail_slope = kInf;
  } else {
    out.tail_slope = hull[active].a;
    if (out.r.size() == 1) {
      // single line: add a knot to satisfy the carrier shape
      out.r.push_back(1.0);
      out.v.push_back(out.v[0] + out.tail_slope);
    }
  }
  return out;
}

}  // namespace

PLProfile polar_conjugate(const PLProfile& p) {
  p.validate();
  require(p.v[0] >= 0.0, "polar_conjugate: profile must be nonnegative");
  std::vector<Line> lines;
  lines.push_back({0.0, 0.0});  // the 0/0 and c/inf conventions
  double r_zero = 0.0;          // largest knot radius with value 0
  for (int i = 0; i < p.knots(); ++i) {
    if (p.v[i] > 0.0) {
      lines.push_back({p.r[i] / p.v[i], -1.0 / p.v[i]});
    } else if (p.r[i] > 0.0) {
      r_zero = std::max(r_zero, p.r[i]);
    }
  }
  if (p.tail_slope != kInf) {
    require(p.tail_slope > 0.0, "polar_conjugate: tail slope must be positive");
    lines.push_back({1.0 / p.tail_slope, 0.0});  // limit s -> inf
  }
  double cut = (r_zero > 0.0) ? 1.0 / r_zero : kInf;
  PLProfile q = upper_envelope(std::move(lines), cut);
  q.validate();
  return q;
}

namespace {

// g_k(x) = integral over [0,1] of u^k e^{-x u} du, stable near x = 0.
double gk(int k, double x) {
  if (std::fabs(x) < 0.5) {
    // sum_{j>=0} (-x)^j / (j! (k+j+1)); direct formulas cancel badly here
    double s = 0.0, t = 1.0;
    for (int j = 0; j < 30; ++j) {
      s += t / (k + j + 1);
      t *= -x / (j + 1);
      if (std::fabs(t) < 1e-22) break;
    }
    return s;
  }
  double e = std::exp(-x);
  switch (k) {
    case 0: return (1.0 - e) / x;
    case 1: return (1.0 - (1.0 + x) * e) / (x * x);
    case 2: return (2.0 - (2.0 + 2.0 * x + x * x) * e) / (x * x * x);
    default: throw std::invalid_argument("gk: k must be 0..2");
  }
}

}  // namespace

double exp_poly_integral(int k, double a, double b, double r0, double r1) {
  require(k >= 0 && k <= 2, "exp_poly_integral: k must be 0..2");
  require(r1 >= r0, "exp_poly_integral: bad interval");
  if (r1 == r0) return 0.0;
  const double d = r1 - r0;
  const double x = a * d;
  const double front = std::exp(-(a * r0 + b));
  // integral = front * d * sum_j C(k,j) r0^{k-j} d^j g_j(x)
  double s = 0.0;
  if (k == 0) {
    s = gk(0, x);
  } else if (k == 1) {
    s = r0 * gk(0, x) + d * gk(1, x);
  } else {
    s = r0 * r0 * gk(0, x) + 2.0 * r0 * d * gk(1, x) + d * d * gk(2, x);
  }
  return front * d * s;
}

double exp_poly_integral_tail(int k, double a, double b, double r0) {
  require(k >= 0 && k <= 2, "exp_poly_integral_tail: k must be 0..2");
  require(a > 0.0, "exp_poly_integral_tail: needs positive decay");
  const double front = std::exp(-(a * r0 + b));
  // integral over [0,inf) of (r0+u)^k e^{-a u} du
  double s = 0.0;
  if (k == 0) {
    s = 1.0 / a;
  } else if (k == 1) {
    s = r0 / a + 1.0 / (a * a);
  } else {
    s = r0 * r0 / a + 2.0 * r0 / (a * a) + 2.0 / (a * a * a);
  }
  return front * s;
}

double moment_integral(const PLProfile& p, int n) {
  require(n >= 1 && n <= 3, "moment_integral: n must be 1..3");
  const int k = n - 1;
  double total = 0.0;
  for (int i = 0; i + 1 < p.knots(); ++i) {
    double a = (p.v[i + 1] - p.v[i]) / (p.r[i + 1] - p.r[i]);
    double b = p.v[i] - a * p.r[i];
    total += exp_poly_integral(k, a, b, p.r[i], p.r[i + 1]);
  }
  if (p.tail_slope == kInf) return total;
  require(p.tail_slope > 0.0, "moment_integral: nonpositive tail slope, divergent");
  double a = p.tail_slope;
  double b = p.last_v() - a * p.last_r();
  total += exp_poly_integral_tail(k, a, b, p.last_r());
  return total;
}

PLProfile fit_convex_pl(const std::vector<double>& radii, const std::vector<double>& values,
                        double tail_slope) {
  require(radii.size() == values.size() && radii.size() >= 2, "fit_convex_pl: bad input");
  require(radii[0] == 0.0, "fit_convex_pl: first radius must be 0");
  PLProfile p;
  p.r = radii;
  p.v = values;
  // clamp chord slopes to be nondecreasing; tolerance absorbs quadrature
  // noise in smooth inputs without visibly moving the values
  double prev = 0.0;
  bool first = true;
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    double dr = p.r[i] - p.r[i - 1];
    require(dr > 0.0, "fit_convex_pl: radii must increase");
    double m = (p.v[i] - p.v[i - 1]) / dr;
    if (first) {
      prev = m;
      first = false;
      continue;
    }
    if (m < prev) {
      p.v[i] = p.v[i - 1] + prev * dr;
      m = prev;
    }
    prev = m;
  }
  p.tail_slope = (tail_slope >= 0.0) ? tail_slope : prev;
  if (p.tail_slope < prev) p.tail_slope = prev;
  p.validate();
  return p;
}

PLProfile gaussian_profile(double r_max, int knots) {
  require(r_max > 0.0 && knots >= 2, "gaussian_profile: bad parameters");
  PLProfile p;
  p.r.resize(knots);
  p.v.resize(knots);
  for (int i = 0; i < knots; ++i) {
    double x = r_max * i / (knots - 1);
    p.r[i] = x;
    p.v[i] = 0.5 * x * x;
  }
  p.tail_slope = r_max;
  p.validate();
  return p;
}

}  // namespace ric
