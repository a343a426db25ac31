#include "ric/grid.hpp"

namespace ric {

GridFunctionND GridFunctionND::sample(
    int dim, std::array<Axis, 3> axes,
    const std::function<double(const std::array<double, 3>&)>& f) {
  require(dim >= 1 && dim <= 3, "GridFunctionND::sample: dim must be 1..3");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) {
    axes[d].validate();
    total *= (std::size_t)axes[d].n;
  }
  std::vector<double> v(total);
  GridFunctionND shell(dim, axes, std::vector<double>(total, 0.0));
  for (std::size_t k = 0; k < total; ++k) v[k] = f(shell.point(k));
  return GridFunctionND(dim, axes, std::move(v));
}

void SetOnGrid::validate() const {
  require(dim >= 1 && dim <= 3, "SetOnGrid: dim must be 1..3");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) {
    axes[d].validate();
    total *= (std::size_t)axes[d].n;
  }
  require(mask.size() == total, "SetOnGrid: mask size mismatch");
}

SetOnGrid sublevel_set(const GridFunction1D& f, double lambda) {
  SetOnGrid s;
  s.dim = 1;
  s.axes[0] = f.axis();
  s.mask.resize(f.size());
  for (int i = 0; i < f.size(); ++i) s.mask[i] = f[i] < lambda ? 1 : 0;
  return s;
}

SetOnGrid sublevel_set(const GridFunctionND& f, double lambda) {
  SetOnGrid s;
  s.dim = f.dim();
  s.axes = f.axes();
  s.mask.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s.mask[i] = f[i] < lambda ? 1 : 0;
  return s;
}

SetOnGrid superlevel_set(const GridFunction1D& f, double lambda) {
  SetOnGrid s;
  s.dim = 1;
  s.axes[0] = f.axis();
  s.mask.resize(f.size());
  for (int i = 0; i < f.size(); ++i) s.mask[i] = f[i] > lambda ? 1 : 0;
  return s;
}

SetOnGrid superlevel_set(const GridFunctionND& f, double lambda) {
  SetOnGrid s;
  s.dim = f.dim();
  s.axes = f.axes();
  s.mask.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s.mask[i] = f[i] > lambda ? 1 : 0;
  return s;
}

}  // namespace ric
