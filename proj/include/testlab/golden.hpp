#pragma once

#include <cmath>
#include <utility>

namespace testlab {

/// Golden-section search for the maximizer of a unimodal function on
/// [lo, hi]. Stops when the bracket is narrower than `tolerance`.
template <typename F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 200 && hi - lo > tolerance; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

template <typename F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double tolerance) {
  auto [x, negated] = golden_section_maximize([&](double v) { return -f(v); }, lo, hi, tolerance);
  return {x, -negated};
}

}  // namespace testlab
