#pragma once

#include <cmath>
#include <utility>

namespace ribbonband {

struct ScalarMinimum {
  double x;
  double value;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than x_tol.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > x_tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    if (!(c < d)) break;
  }
  return fc < fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

}  // namespace ribbonband
