#pragma once

#include <cmath>
#include <sstream>

#include "chainlattice/errors.hpp"

namespace chainlattice::roots {

struct BisectionResult {
  double root;
  double f_root;
  int iterations;
};

/// Bisection on [lo, hi] down to adjacent doubles.  f(lo) and f(hi) must
/// have opposite signs (a zero at either end is returned directly).
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, int max_iter = 400) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (!(std::signbit(f_lo) != std::signbit(f_hi)) || !std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    std::ostringstream os;
    os << "bisect: no sign change on [" << lo << ", " << hi << "] (f = " << f_lo << ", " << f_hi << ")";
    throw BracketError(os.str());
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, 0.0, it + 1};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? BisectionResult{lo, f_lo, it} : BisectionResult{hi, f_hi, it};
}

}  // namespace chainlattice::roots
