#include "casimir/special.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"

namespace casimir::special {

namespace {

// rho[l] = i_{l-1}(z) / i_l(z) for l = 1..l_max, by downward recurrence from far above.
std::vector<double> regular_ratios(int l_max, double z) {
  const int start = static_cast<int>(std::max<double>(l_max, z)) + 100;
  std::vector<double> rho(static_cast<std::size_t>(l_max) + 1, 0.0);
  double next = z / (2.0 * start + 3.0);  // i_{start+1}/i_start, leading order
  for (int l = start; l >= 1; --l) {
    const double r = (2.0 * l + 1.0) / z + next;
    if (l <= l_max) rho[static_cast<std::size_t>(l)] = r;
    next = 1.0 / r;
  }
  return rho;
}

double log_i0(double z) {
  if (z < 1.0) return std::log(std::sinh(z) / z);
  return z - std::log(2.0 * z) + std::log1p(-std::exp(-2.0 * z));
}

}  // namespace

SphericalBesselTable modified_spherical_bessel(int l_max, double z) {
  if (l_max < 0) throw DomainError("modified_spherical_bessel: l_max must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("modified_spherical_bessel: z must be > 0");
  const auto n = static_cast<std::size_t>(l_max) + 1;
  SphericalBesselTable out;
  out.log_i.resize(n);
  out.log_k.resize(n);
  out.dlog_zi.resize(n);
  out.dlog_zk.resize(n);

  // The l = 0 log derivative needs i_1/i_0, so compute one ratio beyond l_max.
  const auto rho = regular_ratios(std::max(l_max, 1), z);
  out.log_i[0] = log_i0(z);
  out.dlog_zi[0] = 1.0 + z / rho[1];
  for (std::size_t l = 1; l < n; ++l) {
    out.log_i[l] = out.log_i[l - 1] - std::log(rho[l]);
    out.dlog_zi[l] = z * rho[l] - static_cast<double>(l);
  }

  // S = k_l / k_{l-1}: S_1 = 1 + 1/z, S_{l+1} = 1/S_l + (2l+1)/z.
  out.log_k[0] = -z - std::log(z);
  out.dlog_zk[0] = -z;
  double s = 1.0 + 1.0 / z;
  for (std::size_t l = 1; l < n; ++l) {
    out.log_k[l] = out.log_k[l - 1] + std::log(s);
    out.dlog_zk[l] = -z / s - static_cast<double>(l);
    s = 1.0 / s + (2.0 * static_cast<double>(l) + 1.0) / z;
  }
  return out;
}

std::vector<double> regular_log_derivative(int l_max, double z) {
  if (l_max < 0) throw DomainError("regular_log_derivative: l_max must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("regular_log_derivative: z must be > 0");
  const auto rho = regular_ratios(std::max(l_max, 1), z);
  std::vector<double> out(static_cast<std::size_t>(l_max) + 1);
  out[0] = 1.0 + z / rho[1];
  for (std::size_t l = 1; l < out.size(); ++l) out[l] = z * rho[l] - static_cast<double>(l);
  return out;
}

void log_legendre_column(int m, int l_max, double t, std::span<double> out) {
  if (m < 0 || l_max < m) throw DomainError("log_legendre_column: need 0 <= m <= l_max");
  if (!(t > 1.0)) throw DomainError("log_legendre_column: t must be > 1");
  if (out.size() < static_cast<std::size_t>(l_max - m + 1))
    throw DomainError("log_legendre_column: output span too short");
  const double md = m;
  const double log_s = 0.5 * std::log((t - 1.0) * (t + 1.0));
  out[0] = 0.5 * std::log(2.0 * md + 1.0) + 0.5 * std::lgamma(2.0 * md + 1.0) - md * std::log(2.0) -
           std::lgamma(md + 1.0) + md * log_s;
  if (l_max == m) return;
  double ratio = std::sqrt(2.0 * md + 3.0) * t;
  out[1] = out[0] + std::log(ratio);
  for (int l = m + 2; l <= l_max; ++l) {
    const double ld = l;
    const double a = std::sqrt((2.0 * ld + 1.0) * (2.0 * ld - 1.0) / ((ld - md) * (ld + md)));
    const double b = std::sqrt((2.0 * ld + 1.0) * (ld - md - 1.0) * (ld + md - 1.0) /
                               ((2.0 * ld - 3.0) * (ld - md) * (ld + md)));
    ratio = a * t - b / ratio;
    out[static_cast<std::size_t>(l - m)] = out[static_cast<std::size_t>(l - m - 1)] + std::log(ratio);
  }
}

}  // namespace casimir::special
