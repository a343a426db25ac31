#pragma once
// Uniform-grid function carriers, dimensions 1..3.
//
// Conventions: nodes are axis.lo + i*h with h = (hi-lo)/(n-1); each node owns
// a cell of side h centered on it (cells at the box edge extend h/2 past it).
// A grid function is +inf outside its sampled box. Discrete minima/suprema
// over nodes stand in for the continuum ones; every comparison made from
// these carriers budgets an O(h) slack for that.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ric/xreal.hpp"

namespace ric {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;  // node count, >= 2

  double h() const { return (hi - lo) / (n - 1); }
  double node(int i) const { return lo + i * h(); }
  void validate() const {
    require(n >= 2, "Axis: need at least 2 nodes");
    require(lo < hi, "Axis: lo < hi required");
    require(is_finite(lo) && is_finite(hi), "Axis: bounds must be finite");
  }
};

class GridFunction1D {
 public:
  GridFunction1D() = default;
  GridFunction1D(Axis axis, std::vector<double> values)
      : axis_(axis), v_(std::move(values)) {
    axis_.validate();
    require((int)v_.size() == axis_.n, "GridFunction1D: size mismatch");
    int finite = 0;
    for (double x : v_) {
      require_valid(x);
      if (is_finite(x)) ++finite;
    }
    require(finite > 0, "GridFunction1D: no finite values");
  }

  static GridFunction1D sample(Axis axis, const std::function<double(double)>& f) {
    axis.validate();
    std::vector<double> v(axis.n);
    for (int i = 0; i < axis.n; ++i) v[i] = f(axis.node(i));
    return GridFunction1D(axis, std::move(v));
  }

  const Axis& axis() const { return axis_; }
  int size() const { return axis_.n; }
  double h() const { return axis_.h(); }
  double x(int i) const { return axis_.node(i); }
  double operator[](int i) const { return v_[i]; }
  double& operator[](int i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

  double min_finite() const {
    double m = kInf;
    for (double x : v_)
      if (is_finite(x)) m = xmin(m, x);
    return m;
  }
  double max_finite() const {
    double m = -kInf;
    for (double x : v_)
      if (is_finite(x)) m = xmax(m, x);
    return m;
  }

 private:
  Axis axis_;
  std::vector<double> v_;
};

// Row-major storage, last axis fastest. dim in {1,2,3}.
class GridFunctionND {
 public:
  GridFunctionND() = default;
  GridFunctionND(int dim, std::array<Axis, 3> axes, std::vector<double> values)
      : dim_(dim), axes_(axes), v_(std::move(values)) {
    require(dim_ >= 1 && dim_ <= 3, "GridFunctionND: dim must be 1..3");
    std::size_t total = 1;
    for (int d = 0; d < dim_; ++d) {
      axes_[d].validate();
      total *= (std::size_t)axes_[d].n;
    }
    require(v_.size() == total, "GridFunctionND: size mismatch");
    int finite = 0;
    for (double x : v_) {
      require_valid(x);
      if (is_finite(x)) ++finite;
    }
    require(finite > 0, "GridFunctionND: no finite values");
  }

  static GridFunctionND sample(int dim, std::array<Axis, 3> axes,
                               const std::function<double(const std::array<double, 3>&)>& f);

  int dim() const { return dim_; }
  const Axis& axis(int d) const { return axes_[d]; }
  const std::array<Axis, 3>& axes() const { return axes_; }
  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

  // Cell volume for Lebesgue masses: product of axis spacings.
  double cell_volume() const {
    double c = 1.0;
    for (int d = 0; d < dim_; ++d) c *= axes_[d].h();
    return c;
  }

  std::size_t index(const std::array<int, 3>& idx) const {
    std::size_t k = 0;
    for (int d = 0; d < dim_; ++d) k = k * axes_[d].n + idx[d];
    return k;
  }
  std::array<int, 3> unravel(std::size_t k) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim_ - 1; d >= 0; --d) {
      idx[d] = (int)(k % axes_[d].n);
      k /= axes_[d].n;
    }
    return idx;
  }
  std::array<double, 3> point(std::size_t k) const {
    auto idx = unravel(k);
    std::array<double, 3> p{0, 0, 0};
    for (int d = 0; d < dim_; ++d) p[d] = axes_[d].node(idx[d]);
    return p;
  }

  double min_finite() const {
    double m = kInf;
    for (double x : v_)
      if (is_finite(x)) m = xmin(m, x);
    return m;
  }
  double max_finite() const {
    double m = -kInf;
    for (double x : v_)
      if (is_finite(x)) m = xmax(m, x);
    return m;
  }

 private:
  int dim_ = 1;
  std::array<Axis, 3> axes_{};
  std::vector<double> v_;
};

// Boolean mask over the cells (= nodes, one cell per node) of a grid.
struct SetOnGrid {
  int dim = 1;
  std::array<Axis, 3> axes{};
  std::vector<std::uint8_t> mask;

  std::size_t size() const { return mask.size(); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : mask) c += b ? 1 : 0;
    return c;
  }
  void validate() const;
};

// Strict sublevel / superlevel sets as cell masks.
SetOnGrid sublevel_set(const GridFunction1D& f, double lambda);
SetOnGrid sublevel_set(const GridFunctionND& f, double lambda);
SetOnGrid superlevel_set(const GridFunction1D& f, double lambda);
SetOnGrid superlevel_set(const GridFunctionND& f, double lambda);

}  // namespace ric
