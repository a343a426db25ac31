#pragma once
// Extended-real conventions shared by every module.
//
// Carriers store plain doubles where +inf means "outside the effective
// domain". -inf is representable but only a handful of operations are allowed
// to produce it (infimal values of unbounded objectives); carriers reject it.
// NaN is never a legal value: any operation that would produce one throws
// instead.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ric {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double v) { return std::isfinite(v); }

// Addition where +inf absorbs finite values. inf + (-inf) has no consistent
// value; callers must not form it, so it throws.
inline double xadd(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("xadd: NaN operand");
  if ((a == kInf && b == -kInf) || (a == -kInf && b == kInf))
    throw std::invalid_argument("xadd: inf + (-inf) is undefined");
  return a + b;
}

inline double xmin(double a, double b) { return a < b ? a : b; }
inline double xmax(double a, double b) { return a > b ? a : b; }

// Validates a value about to enter a carrier. allow_neg_inf is off for grid
// functions and profiles; report fields that legitimately hold -inf opt in.
inline void require_valid(double v, bool allow_neg_inf = false) {
  if (std::isnan(v)) throw std::invalid_argument("value is NaN");
  if (!allow_neg_inf && v == -kInf) throw std::invalid_argument("value is -inf");
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace ric
