#include "casimir/lifshitz.hpp"

#include <array>
#include <cmath>

#include "casimir/ceil_count.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

using units::c;
using units::hbar;
using units::k_B;
using units::pi;

void require_gap(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("separation must be positive and finite");
}

void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw DomainError("temperature must be positive and finite");
}

// Panel offsets in u above the lower limit; the integrands decay like e^{-u}.
constexpr std::array<double, 9> kOffsets{0.0, 0.25, 0.75, 1.75, 3.75, 7.75, 15.75, 31.75, 70.0};
constexpr std::array<double, 13> kOffsetsFromZero{0.0,  1e-5, 1e-4, 1e-3, 1e-2,  0.1,  0.5,
                                                   1.5,  3.5,  7.5,  15.5, 31.5, 70.0};

template <class F, std::size_t N>
double integrate_refined(const F& f, double lower, const std::array<double, N>& offsets) {
  std::array<double, N> breaks{};
  for (std::size_t i = 0; i < N; ++i) breaks[i] = lower + offsets[i];
  const std::function<double(double)> g = f;
  double previous = quadrature::integrate_panels(g, breaks, 12);
  for (int order = 24; order <= 192; order *= 2) {
    const double current = quadrature::integrate_panels(g, breaks, order);
    if (std::abs(current - previous) <= 1e-9 * std::abs(current) || current == 0.0) return current;
    previous = current;
  }
  throw NumericalError("Lifshitz u-integral did not converge", previous);
}

// Matsubara-mode integrands in v = u - u0, u = 2 q a, u0 = 2 xi a / c, t = u / u0.
// The common factor e^{-u0} is pulled out so the quadrature never sees denormals.
constexpr double kNegligibleExponent = 690.0;

double mode_energy_integral(double eps, double u0) {
  if (u0 > kNegligibleExponent) return 0.0;
  const double e0 = std::exp(-u0);
  return e0 * integrate_refined(
                  [=](double v) {
                    const double u = u0 + v;
                    const auto r = fresnel_t(eps, u / u0);
                    const double e = e0 * std::exp(-v);
                    return u * (std::log1p(-r.te * r.te * e) + std::log1p(-r.tm * r.tm * e)) / e0;
                  },
                  0.0, kOffsets);
}

double mode_pressure_integral(double eps, double u0) {
  if (u0 > kNegligibleExponent) return 0.0;
  const double e0 = std::exp(-u0);
  return e0 * integrate_refined(
                  [=](double v) {
                    const double u = u0 + v;
                    const auto r = fresnel_t(eps, u / u0);
                    const double ev = std::exp(-v);
                    const double te = r.te * r.te;
                    const double tm = r.tm * r.tm;
                    return u * u * ev * (te / (1.0 - te * e0 * ev) + tm / (1.0 - tm * e0 * ev));
                  },
                  0.0, kOffsets);
}

// Plasma TE reflection at zero frequency, in u = 2 k a; p = a wp / c.
double plasma_te0(double u, double p) {
  const double k = 0.5 * u;
  const double root = std::sqrt(k * k + p * p);
  return -p * p / ((k + root) * (k + root));
}

double polylog3(double x) {
  double sum = 0.0;
  double power = x;
  for (int k = 1; k < 100000; ++k) {
    const double term = power / (static_cast<double>(k) * k * k);
    sum += term;
    if (term < 1e-17 * sum) break;
    power *= x;
  }
  return sum;
}

double static_tm_reflection(const MaterialModel& model) {
  // Dielectric tables are flat at low frequency; 1 rad/s stands in for zero.
  const double eps0 = model.eps(1.0);
  return (eps0 - 1.0) / (eps0 + 1.0);
}

template <class Mode>
double ordered_sum(const MaterialModel& model, double a, const MatsubaraGrid& grid, Mode mode) {
  require_gap(a);
  std::vector<double> terms(static_cast<std::size_t>(grid.n_max()));
  parallel_for(terms.size(), [&](std::size_t i) {
    terms[i] = mode(model, a, grid.temperature(), static_cast<int>(i) + 1);
  });
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

}  // namespace

double thermal_length(double temperature) {
  require_temperature(temperature);
  return hbar * c / (2.0 * pi * k_B * temperature);
}

double matsubara_frequency(double temperature, int n) {
  require_temperature(temperature);
  if (n < 0) throw DomainError("Matsubara index must be >= 0");
  return 2.0 * pi * n * k_B * temperature / hbar;
}

MatsubaraGrid::MatsubaraGrid(double temperature, int n_max) : temperature_(temperature) {
  require_temperature(temperature);
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  frequencies_.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) frequencies_.push_back(matsubara_frequency(temperature, n));
}

MatsubaraGrid MatsubaraGrid::for_separation(double temperature, double a_min, double factor) {
  require_gap(a_min);
  if (!(factor > 0.0)) throw DomainError("Matsubara factor must be positive");
  return MatsubaraGrid(temperature, ceil_count(factor * thermal_length(temperature) / a_min));
}

FresnelPair fresnel(double eps, double xi, double kperp) {
  if (!(xi > 0.0)) throw DomainError("fresnel: xi must be positive");
  if (!(kperp >= 0.0)) throw DomainError("fresnel: kperp must be >= 0");
  const double K = xi / c;
  return fresnel_t(eps, std::sqrt(1.0 + (kperp / K) * (kperp / K)));
}

FresnelPair fresnel_t(double eps, double t) {
  if (!(eps >= 1.0)) throw DomainError("fresnel: eps(i xi) must be >= 1");
  const double km = std::sqrt(eps - 1.0 + t * t);
  return {(t - km) / (t + km), (eps * t - km) / (eps * t + km)};
}

double pp_free_energy_mode(const MaterialModel& model, double a, double temperature, int n) {
  require_gap(a);
  if (n < 1) throw DomainError("pp_free_energy_mode: n must be >= 1");
  const double xi = matsubara_frequency(temperature, n);
  const double u0 = 2.0 * xi * a / c;
  return k_B * temperature / (8.0 * pi * a * a) * mode_energy_integral(model.eps(xi), u0);
}

double pp_pressure_mode(const MaterialModel& model, double a, double temperature, int n) {
  require_gap(a);
  if (n < 1) throw DomainError("pp_pressure_mode: n must be >= 1");
  const double xi = matsubara_frequency(temperature, n);
  const double u0 = 2.0 * xi * a / c;
  return k_B * temperature / (8.0 * pi * a * a * a) * mode_pressure_integral(model.eps(xi), u0);
}

double pp_pressure_mode_signed(const MaterialModel& model, double a, double temperature, int n) {
  return -pp_pressure_mode(model, a, temperature, n);
}

double pp_zero_mode_drude(double a, double temperature) {
  require_gap(a);
  require_temperature(temperature);
  return -k_B * temperature * units::zeta3 / (16.0 * pi * a * a);
}

double pp_zero_mode_energy(const MaterialModel& model, double a, double temperature) {
  const double drude = pp_zero_mode_drude(a, temperature);
  switch (model.static_response()) {
    case StaticResponse::drude:
      return drude;
    case StaticResponse::plasma: {
      const double p = a * model.plasma_frequency() / c;
      const double te = integrate_refined(
          [=](double u) {
            const double r = plasma_te0(u, p);
            return u * std::log1p(-r * r * std::exp(-u));
          },
          0.0, kOffsetsFromZero);
      return drude + k_B * temperature / (16.0 * pi * a * a) * te;
    }
    case StaticResponse::dielectric: {
      const double r = static_tm_reflection(model);
      return -k_B * temperature / (16.0 * pi * a * a) * polylog3(r * r);
    }
  }
  return drude;
}

double pp_zero_mode_pressure(const MaterialModel& model, double a, double temperature) {
  const double drude = -2.0 * pp_zero_mode_drude(a, temperature) / a;
  switch (model.static_response()) {
    case StaticResponse::drude:
      return drude;
    case StaticResponse::plasma: {
      const double p = a * model.plasma_frequency() / c;
      const double te = integrate_refined(
          [=](double u) {
            const double r = plasma_te0(u, p);
            const double x = r * r * std::exp(-u);
            return u * u * x / (1.0 - x);
          },
          0.0, kOffsetsFromZero);
      return drude + k_B * temperature / (16.0 * pi * a * a * a) * te;
    }
    case StaticResponse::dielectric: {
      const double r = static_tm_reflection(model);
      return k_B * temperature / (8.0 * pi * a * a * a) * polylog3(r * r);
    }
  }
  return drude;
}

double pp_free_energy_npos(const MaterialModel& model, double a, const MatsubaraGrid& grid) {
  return ordered_sum(model, a, grid, pp_free_energy_mode);
}

double pp_pressure_npos(const MaterialModel& model, double a, const MatsubaraGrid& grid) {
  return ordered_sum(model, a, grid, pp_pressure_mode);
}

double pp_free_energy(const MaterialModel& model, double a, const MatsubaraGrid& grid) {
  return pp_zero_mode_energy(model, a, grid.temperature()) + pp_free_energy_npos(model, a, grid);
}

double pp_pressure(const MaterialModel& model, double a, const MatsubaraGrid& grid) {
  return pp_zero_mode_pressure(model, a, grid.temperature()) + pp_pressure_npos(model, a, grid);
}

double ideal_pressure(double a) {
  require_gap(a);
  return pi * pi * hbar * c / (240.0 * a * a * a * a);
}

double ideal_free_energy(double a) {
  require_gap(a);
  return -pi * pi * hbar * c / (720.0 * a * a * a);
}

}  // namespace casimir
