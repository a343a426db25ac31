#include "ric/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "ric/xreal.hpp"

namespace ric {

// Lower envelope of parabolas f[j] + w*(x - y[j])^2 over sorted sources y,
// evaluated at sorted queries x.  Sources with f[j] = +inf never contribute.
// The envelope scan yields the winner parabola per query; the reported value
// takes the min over the winner and its envelope neighbours so that boundary
// rounding in the intersection abscissae cannot cost us the true minimum.
std::vector<double> ParabolaEnvelope::evaluate(const std::vector<double>& y,
                                               const std::vector<double>& f, double w,
                                               const std::vector<double>& x,
                                               std::vector<int>* arg) {
  require(w > 0.0, "ParabolaEnvelope: weight must be positive");
  require(y.size() == f.size(), "ParabolaEnvelope: source size mismatch");
  const int m = (int)y.size();
  require(m > 0, "ParabolaEnvelope: no sources");
  for (int j = 1; j < m; ++j)
    require(y[j] > y[j - 1], "ParabolaEnvelope: sources must be strictly increasing");

  std::vector<int> finite;
  finite.reserve(m);
  for (int j = 0; j < m; ++j) {
    require(!std::isnan(f[j]) && f[j] > -kInf, "ParabolaEnvelope: invalid source value");
    if (is_finite(f[j])) finite.push_back(j);
  }
  require(!finite.empty(), "ParabolaEnvelope: all sources are +inf");

  // v: indices of parabolas on the envelope; z[k]: left edge of v[k]'s range
  std::vector<int> v(finite.size());
  std::vector<double> z(finite.size() + 1);
  int k = 0;
  v[0] = finite[0];
  z[0] = -kInf;
  z[1] = kInf;
  for (std::size_t t = 1; t < finite.size(); ++t) {
    int j = finite[t];
    double s;
    for (;;) {
      int p = v[k];
      // intersection of parabola j with parabola p
      s = ((f[j] + w * y[j] * y[j]) - (f[p] + w * y[p] * y[p])) / (2.0 * w * (y[j] - y[p]));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    if (s <= z[k]) {
      // j dominates everything so far
      v[0] = j;
      z[0] = -kInf;
      z[1] = kInf;
      k = 0;
    } else {
      ++k;
      v[k] = j;
      z[k] = s;
      z[k + 1] = kInf;
    }
  }
  const int envn = k + 1;

  std::vector<double> out(x.size());
  if (arg) arg->assign(x.size(), -1);
  int kk = 0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (q > 0) require(x[q] >= x[q - 1], "ParabolaEnvelope: queries must be nondecreasing");
    while (kk + 1 < envn && z[kk + 1] < x[q]) ++kk;
    double best = kInf;
    int best_j = -1;
    for (int c = kk - 1; c <= kk + 1; ++c) {
      if (c < 0 || c >= envn) continue;
      int j = v[c];
      double dx = x[q] - y[j];
      double val = f[j] + w * dx * dx;
      if (val < best) {
        best = val;
        best_j = j;
      }
    }
    out[q] = best;
    if (arg) (*arg)[q] = best_j;
  }
  return out;
}

}  // namespace ric
