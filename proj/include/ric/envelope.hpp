#pragma once
// Exact lower envelope of parabolas on a line: given source nodes y_j with
// heights f_j and weight w > 0, evaluates q(x) = min_j f_j + w (x - y_j)^2 at
// the query nodes. This is the separable kernel behind both the squared
// Euclidean distance field and the quadratic Hopf-Lax fast path.
//
// The envelope is computed with the usual single-pass intersection scan over
// sources sorted by position. Each query is finished by evaluating the
// winning parabola and its two envelope neighbours and taking the minimum,
// so the result equals the brute-force minimum even when rounding perturbs
// an intersection abscissa: a misassignment can only confuse adjacent
// envelope segments.

#include <vector>

#include "ric/xreal.hpp"

namespace ric {

struct ParabolaEnvelope {
  // y: strictly increasing source positions; f: heights (+inf allowed, such
  // sources are skipped; at least one finite height required).
  // Returns argmin indices too when arg != nullptr.
  static std::vector<double> evaluate(const std::vector<double>& y,
                                      const std::vector<double>& f, double w,
                                      const std::vector<double>& x,
                                      std::vector<int>* arg = nullptr);
};

}  // namespace ric
