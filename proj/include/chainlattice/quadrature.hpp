#pragma once

// Panel-wise adaptive Gauss-Kronrod integration, used for the Mellin-type
// theta integrals in log variables.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chainlattice/errors.hpp"

namespace chainlattice::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // integral of |f|
};

struct PanelOptions {
  double panel_width = 1.0;
  double rel_tol = 1e-13;
  unsigned max_depth = 12;
};

/// Integrates f over [lo, hi] split into panels of roughly equal width plus
/// the given interior breakpoints.  Throws QuadratureError if the combined
/// error estimate exceeds rel_tol * L1 (with a small absolute floor).
template <class F>
QuadratureResult integrate_panels(F&& f, double lo, double hi, const std::vector<double>& breakpoints = {},
                                  const PanelOptions& options = {}) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts{lo, hi};
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());

  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / options.panel_width)));
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double pa = a + p * width;
      const double pb = (p + 1 == panels) ? b : pa + width;
      double err = 0.0;
      double l1 = 0.0;
      const double v = gauss_kronrod<double, 31>::integrate(f, pa, pb, options.max_depth,
                                                           options.rel_tol, &err, &l1);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrate_panels: non-finite integrand on [" << pa << ", " << pb << "]";
        throw QuadratureError(os.str());
      }
      total.value += v;
      total.error += err;
      total.l1 += l1;
    }
  }
  const double allowed = std::max(100.0 * options.rel_tol * total.l1, 1e-300);
  if (total.error > allowed) {
    std::ostringstream os;
    os << "integrate_panels: no convergence, error estimate " << total.error << " vs L1 " << total.l1;
    throw QuadratureError(os.str());
  }
  return total;
}

}  // namespace chainlattice::quadrature
