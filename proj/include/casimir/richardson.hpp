#pragma once

#include <functional>

namespace casimir {

// Central differences with one Richardson step: f is evaluated at x +- h and
// x +- h/2 and the O(h^2) error terms cancel.

inline double richardson_first(const std::function<double(double)>& f, double x, double h) {
  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_h2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d_h2 - d_h) / 3.0;
}

inline double richardson_second(const std::function<double(double)>& f, double x, double h) {
  const double f0 = f(x);
  const double s_h = (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h);
  const double s_h2 = (f(x + 0.5 * h) - 2.0 * f0 + f(x - 0.5 * h)) / (0.25 * h * h);
  return (4.0 * s_h2 - s_h) / 3.0;
}

}  // namespace casimir
