#include "casimir/classical.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr long kMaxTerms = 100'000'000;

// Value and first two Z-derivatives of one series.
struct Triple {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  Triple& operator+=(const Triple& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
};

bool small_against(const Triple& term, const Triple& sum, double tol) {
  return std::abs(term.v) <= tol * std::abs(sum.v) && std::abs(term.d1) <= tol * std::abs(sum.d1) &&
         std::abs(term.d2) <= tol * std::abs(sum.d2);
}

// ln(1 - Z^p) and its Z-derivatives.
Triple log_term(double z, double log_z, double p) {
  const double zp = std::exp(p * log_z);
  const double one_minus = -std::expm1(p * log_z);
  const double zpm1 = zp / z;
  const double zpm2 = zpm1 / z;
  const double q = p * zpm1 / one_minus;
  return {std::log(one_minus), -q, -p * (p - 1.0) * zpm2 / one_minus - q * q};
}

// Z^p (1 - Z^{p-1}) / (1 - Z^p) with p = 2l + 1, and its Z-derivatives.
Triple ratio_term(double z, double log_z, double p) {
  const double zp = std::exp(p * log_z);
  const double h = -std::expm1(p * log_z);
  const double g = zp * -std::expm1((p - 1.0) * log_z);
  const double z2p1 = zp * zp / z;  // Z^{2p-1}
  const double g1 = p * zp / z - (2.0 * p - 1.0) * z2p1 / z;
  const double g2 = p * (p - 1.0) * zp / (z * z) - (2.0 * p - 1.0) * (2.0 * p - 2.0) * z2p1 / (z * z);
  const double h1 = -p * zp / z;
  const double h2 = -p * (p - 1.0) * zp / (z * z);
  const double num1 = g1 * h - g * h1;
  return {g / h, num1 / (h * h), (g2 * h - g * h2) / (h * h) - 2.0 * h1 * num1 / (h * h * h)};
}

template <class Term>
Triple sum_series(double z, double tol, Term term, int& count) {
  const double log_z = std::log(z);
  Triple sum;
  for (long l = 1; l < kMaxTerms; ++l) {
    const double p = 2.0 * static_cast<double>(l) + 1.0;
    const Triple t = term(z, log_z, p);
    sum += t;
    if (small_against(t, sum, tol)) {
      count = std::max(count, static_cast<int>(l));
      return sum;
    }
  }
  throw NumericalError("classical n = 0 series did not converge", sum.v);
}

}  // namespace

Geometry::Geometry(double radius, double gap) : radius_(radius), gap_(gap) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sphere radius must be positive");
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("gap must be positive");
}

double Geometry::z() const { return z_parameter(aspect()); }

double z_parameter(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("z_parameter: x must be positive");
  return 1.0 / (1.0 + x + std::sqrt(x * (2.0 + x)));
}

ClassicalZeroMode classical_zero_mode(const Geometry& geom, double temperature, double tol) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw DomainError("temperature must be positive and finite");
  if (!(tol > 0.0) || tol > 1e-6) throw DomainError("series tolerance must lie in (0, 1e-6]");
  const double x = geom.aspect();
  const double z = z_parameter(x);
  if (!(z < 1.0 - 1e-8)) throw DomainError("gap too small for the n = 0 series (Z too close to 1); increase a/R");

  int terms = 0;
  const Triple s1 = sum_series(
      z, tol,
      [](double zz, double lz, double p) {
        const Triple t = log_term(zz, lz, p);
        return Triple{p * t.v, p * t.d1, p * t.d2};
      },
      terms);
  const Triple s2 = sum_series(z, tol, ratio_term, terms);

  // G = ln(1 - u), u = (1 - Z^2) S2
  const double w = 1.0 - z * z;
  const double u = w * s2.v;
  const double u1 = -2.0 * z * s2.v + w * s2.d1;
  const double u2 = -2.0 * s2.v - 4.0 * z * s2.d1 + w * s2.d2;
  const double g = std::log1p(-u);
  const double g1 = -u1 / (1.0 - u);
  const double g2 = -u2 / (1.0 - u) - u1 * u1 / ((1.0 - u) * (1.0 - u));

  const double half_kt = 0.5 * units::k_B * temperature;
  const double root = std::sqrt(x * (2.0 + x));
  const double r = geom.radius();
  const double z_a = -z / root / r;
  const double z_aa = 1.0 / (root * root * root) / (r * r);

  const double e1 = s1.d1 + g1;
  const double e2 = s1.d2 + g2;
  ClassicalZeroMode out;
  out.free_energy = half_kt * (s1.v + g);
  out.force = -half_kt * e1 * z_a;
  out.gradient = -half_kt * (e2 * z_a * z_a + e1 * z_aa);
  out.terms = terms;
  return out;
}

double free_energy_n0(const Geometry& geom, double temperature, double tol) {
  return classical_zero_mode(geom, temperature, tol).free_energy;
}

double force_n0(const Geometry& geom, double temperature, double tol) {
  return classical_zero_mode(geom, temperature, tol).force;
}

double gradient_n0(const Geometry& geom, double temperature, double tol) {
  return classical_zero_mode(geom, temperature, tol).gradient;
}

}  // namespace casimir
