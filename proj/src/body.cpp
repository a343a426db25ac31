#include "ric/body.hpp"

#include <algorithm>
#include <cmath>

namespace ric {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Vec2 = std::array<double, 2>;

double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

// Convex hull (counterclockwise, no collinear points) of a point set.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross({pts[i][0] - hull[k - 2][0], pts[i][1] - hull[k - 2][1]},
                           {hull[k - 1][0] - hull[k - 2][0], hull[k - 1][1] - hull[k - 2][1]}) >=
                         0.0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper
    while (k >= lower && cross({pts[i][0] - hull[k - 2][0], pts[i][1] - hull[k - 2][1]},
                               {hull[k - 1][0] - hull[k - 2][0],
                                hull[k - 1][1] - hull[k - 2][1]}) >= 0.0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double shoelace(const std::vector<Vec2>& poly) {
  double a = 0.0;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    a += cross(p, q);
  }
  return 0.5 * std::fabs(a);
}

// Dual points u_j / h_j of the body's halfplane constraints.
std::vector<Vec2> dual_points(const SupportBody2D& k) {
  std::vector<Vec2> pts(k.m);
  for (int j = 0; j < k.m; ++j) {
    Vec2 u = k.direction(j);
    pts[j] = {u[0] / k.h[j], u[1] / k.h[j]};
  }
  return pts;
}

// Vertices of the halfplane intersection { x : <x, p> <= 1 for hull points p }.
// Consecutive hull points are the active constraints; each adjacent pair of
// lines <x, p> = 1, <x, q> = 1 meets in one vertex.
std::vector<Vec2> primal_vertices(const SupportBody2D& k) {
  auto hull = convex_hull(dual_points(k));
  require(hull.size() >= 3, "SupportBody2D: degenerate body");
  std::vector<Vec2> verts;
  verts.reserve(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& p = hull[i];
    const Vec2& q = hull[(i + 1) % hull.size()];
    double det = cross(p, q);
    require(std::fabs(det) > 1e-14, "SupportBody2D: parallel active constraints");
    verts.push_back({(q[1] - p[1]) / det, (p[0] - q[0]) / det});
  }
  return verts;
}

}  // namespace

double SupportBody2D::angle(int j) const { return 2.0 * kPi * j / m; }

std::array<double, 2> SupportBody2D::direction(int j) const {
  if (j >= m / 2) {
    auto u = direction(j - m / 2);
    return {-u[0], -u[1]};
  }
  double th = angle(j);
  return {std::cos(th), std::sin(th)};
}

void SupportBody2D::validate() const {
  require(m >= 8, "SupportBody2D: need at least 8 directions");
  require(m % 2 == 0, "SupportBody2D: direction count must be even");
  require((int)h.size() == m, "SupportBody2D: support size mismatch");
  for (int j = 0; j < m; ++j) {
    require(is_finite(h[j]) && h[j] > 0.0, "SupportBody2D: support values must be positive");
  }
  for (int j = 0; j < m / 2; ++j)
    require(h[j] == h[j + m / 2], "SupportBody2D: symmetry h(u) = h(-u) violated");
}

SupportBody2D SupportBody2D::disc(int m, double radius) {
  require(radius > 0.0 && is_finite(radius), "SupportBody2D::disc: radius must be positive");
  SupportBody2D k;
  k.m = m;
  k.h.assign(m, radius);
  k.validate();
  return k;
}

SupportBody2D SupportBody2D::make(std::vector<double> support) {
  SupportBody2D k;
  k.m = (int)support.size();
  require(k.m >= 8 && k.m % 2 == 0, "SupportBody2D::make: need an even count >= 8");
  k.h = std::move(support);
  for (int j = 0; j < k.m / 2; ++j) {
    require(is_finite(k.h[j]) && is_finite(k.h[j + k.m / 2]),
            "SupportBody2D::make: non-finite support value");
    double avg = 0.5 * (k.h[j] + k.h[j + k.m / 2]);
    require(avg > 0.0, "SupportBody2D::make: support values must be positive");
    k.h[j] = k.h[j + k.m / 2] = avg;
  }
  // convexify: replace the samples with the support function of the
  // halfplane intersection they cut out
  auto verts = primal_vertices(k);
  for (int j = 0; j < k.m / 2; ++j) {
    Vec2 u = k.direction(j);
    double best = -kInf;
    for (const Vec2& v : verts) best = std::max(best, std::fabs(dot(v, u)));
    k.h[j] = k.h[j + k.m / 2] = best;
  }
  k.validate();
  return k;
}

double body_area(const SupportBody2D& k) {
  k.validate();
  return shoelace(primal_vertices(k));
}

SupportBody2D polar_body(const SupportBody2D& k) {
  k.validate();
  auto pts = dual_points(k);
  SupportBody2D p;
  p.m = k.m;
  p.h.assign(k.m, 0.0);
  for (int i = 0; i < k.m / 2; ++i) {
    Vec2 u = k.direction(i);
    double best = -kInf;
    for (const Vec2& q : pts) best = std::max(best, std::fabs(dot(u, q)));
    p.h[i] = p.h[i + k.m / 2] = best;
  }
  p.validate();
  return p;
}

double polar_area(const SupportBody2D& k) {
  k.validate();
  auto hull = convex_hull(dual_points(k));
  require(hull.size() >= 3, "polar_area: degenerate polar body");
  return shoelace(hull);
}

SupportBody2D scale_body(const SupportBody2D& k, double lambda) {
  require(lambda > 0.0 && is_finite(lambda), "scale_body: lambda must be positive");
  SupportBody2D out = k;
  for (double& v : out.h) v *= lambda;
  out.validate();
  return out;
}

SantaloSetReport santalo_set_check(const SupportBody2D& k, double tol) {
  SantaloSetReport rep;
  rep.area_k = body_area(k);
  rep.area_polar = polar_area(k);
  rep.product = rep.area_k * rep.area_polar;
  rep.bound = kPi * kPi;
  rep.area_star_polar = rep.bound / rep.area_k;  // polar of the equal-area disc
  rep.pass_product = rep.product <= rep.bound + tol;
  rep.pass_star = rep.area_polar <= rep.area_star_polar + tol;
  return rep;
}

SetOnGrid rasterize(const SupportBody2D& k, const Axis& ax0, const Axis& ax1) {
  k.validate();
  ax0.validate();
  ax1.validate();
  auto pts = dual_points(k);
  SetOnGrid s;
  s.dim = 2;
  s.axes[0] = ax0;
  s.axes[1] = ax1;
  s.mask.assign((std::size_t)ax0.n * ax1.n, 0);
  std::size_t idx = 0;
  for (int i = 0; i < ax0.n; ++i) {
    for (int j = 0; j < ax1.n; ++j, ++idx) {
      Vec2 x{ax0.node(i), ax1.node(j)};
      bool inside = true;
      for (const Vec2& p : pts) {
        if (dot(x, p) > 1.0) {
          inside = false;
          break;
        }
      }
      s.mask[idx] = inside ? 1 : 0;
    }
  }
  return s;
}

bool masks_agree_within_one_layer(const SetOnGrid& a, const SetOnGrid& b) {
  require(a.dim == 2 && b.dim == 2, "masks_agree_within_one_layer: 2D only");
  require(a.mask.size() == b.mask.size(), "masks_agree_within_one_layer: size mismatch");
  int n0 = a.axes[0].n, n1 = a.axes[1].n;
  auto at = [&](const SetOnGrid& s, int i, int j) { return s.mask[(std::size_t)i * n1 + j]; };
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      if (at(a, i, j) == at(b, i, j)) continue;
      // the disagreeing cell must touch b's boundary
      bool near_boundary = false;
      auto v = at(b, i, j);
      for (int di = -1; di <= 1 && !near_boundary; ++di) {
        for (int dj = -1; dj <= 1 && !near_boundary; ++dj) {
          int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= n0 || jj < 0 || jj >= n1) continue;
          if (at(b, ii, jj) != v) near_boundary = true;
        }
      }
      if (!near_boundary) return false;
    }
  }
  return true;
}

}  // namespace ric
