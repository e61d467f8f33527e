#pragma once

#include <functional>
#include <span>
#include <vector>

namespace casimir::quadrature {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are built once and cached; the returned
/// reference stays valid for the lifetime of the program.
const Rule& gauss_legendre(int n);

/// Gauss-Laguerre rule for int_0^inf e^{-x} f(x) dx. Weights are returned as
/// logarithms because for large n they span far more than the double range.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

const LaguerreRule& gauss_laguerre(int n);

/// int_lo^hi f with an n-point Gauss-Legendre rule.
double integrate_panel(const std::function<double(double)>& f, double lo, double hi, int n);

/// Sum of fixed-order Gauss-Legendre panels between consecutive breakpoints.
double integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        int n);

}  // namespace casimir::quadrature
