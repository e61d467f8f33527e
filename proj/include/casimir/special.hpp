#pragma once

#include <span>
#include <vector>

// Special functions for the multipole oracle. Everything that can overflow at
// large order is returned as a logarithm.
namespace casimir::special {

/// Modified spherical Bessel functions of orders 0..l_max at one argument z > 0,
/// normalised so that i_0(z) = sinh(z)/z and k_0(z) = e^{-z}/z.
struct SphericalBesselTable {
  std::vector<double> log_i;    // ln i_l(z)
  std::vector<double> log_k;    // ln k_l(z)
  std::vector<double> dlog_zi;  // (z i_l(z))' / i_l(z)
  std::vector<double> dlog_zk;  // (z k_l(z))' / k_l(z), negative
};

SphericalBesselTable modified_spherical_bessel(int l_max, double z);

/// Only the regular part (for the sphere interior): (z i_l)'/i_l for l = 0..l_max.
std::vector<double> regular_log_derivative(int l_max, double z);

/// ln Pbar_l^m(t) for l = m..l_max written to out[l - m], t > 1, where
///   Pbar_l^m(t) = sqrt((2l+1) (l-m)!/(l+m)!) (t^2-1)^{m/2} d^m P_l(t)/dt^m.
/// These are positive for t > 1 and grow like (t + sqrt(t^2-1))^l.
void log_legendre_column(int m, int l_max, double t, std::span<double> out);

}  // namespace casimir::special
