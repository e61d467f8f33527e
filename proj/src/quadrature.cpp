#include "casimir/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include "casimir/errors.hpp"

namespace casimir::quadrature {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 0) return {1.0, 0.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

Rule build_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

// Laguerre polynomials L_0..L_n at x carried with a common scale e^{log_scale}.
struct ScaledLaguerre {
  double ln;           // L_n (scaled)
  double ln_minus_1;   // L_{n-1} (scaled)
  double sum_squares;  // sum_{k<n} L_k^2 (scaled by e^{2 log_scale})
  double log_scale;
};

ScaledLaguerre scaled_laguerre(int n, double x) {
  constexpr double kBig = 1e100;
  const double log_big = std::log(kBig);
  double p0 = 1.0;
  double p1 = 1.0 - x;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    sum += p1 * p1;
    const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > kBig) {
      p0 /= kBig;
      p1 /= kBig;
      sum /= kBig * kBig;
      log_scale += log_big;
    }
  }
  return {p1, p0, sum, log_scale};
}

LaguerreRule build_gauss_laguerre(int n) {
  // Golub-Welsch for the initial nodes, then Newton on L_n and Christoffel weights
  // w_j = 1 / sum_{k<n} L_k(x_j)^2 evaluated in scaled arithmetic.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) sub(k - 1) = k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Gauss-Laguerre eigenvalue solve failed");

  LaguerreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.log_weights.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double x = solver.eigenvalues()(j);
    for (int iter = 0; iter < 8; ++iter) {
      const ScaledLaguerre p = scaled_laguerre(n, x);
      // L_n' = n (L_n - L_{n-1}) / x
      const double dp = n * (p.ln - p.ln_minus_1) / x;
      const double dx = p.ln / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * x) break;
    }
    const ScaledLaguerre p = scaled_laguerre(n, x);
    rule.nodes[static_cast<std::size_t>(j)] = x;
    rule.log_weights[static_cast<std::size_t>(j)] = -(std::log(p.sum_squares) + 2.0 * p.log_scale);
  }
  return rule;
}

template <class R, class Build>
const R& cached(int n, Build build) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const R>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const R>(build(n));
  return *slot;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  return cached<Rule>(n, build_gauss_legendre);
}

const LaguerreRule& gauss_laguerre(int n) {
  if (n < 1) throw DomainError("gauss_laguerre: n must be positive");
  return cached<LaguerreRule>(n, build_gauss_laguerre);
}

double integrate_panel(const std::function<double(double)>& f, double lo, double hi, int n) {
  const Rule& rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        int n) {
  double sum = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) sum += integrate_panel(f, breaks[i - 1], breaks[i], n);
  return sum;
}

}  // namespace casimir::quadrature
