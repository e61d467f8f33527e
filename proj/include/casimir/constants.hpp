#pragma once

#include <numbers>

// Physical constants (CODATA 2018, exact where SI fixes them) and the unit
// conversions used at the library boundary. Everything inside the library is SI.
namespace casimir::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 299792458.0;               // m / s
inline constexpr double k_B = 1.380649e-23;            // J / K
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double zeta3 = 1.2020569031595942854;

inline constexpr double micrometre = 1e-6;

/// eV -> angular frequency (rad/s) via E = hbar omega.
constexpr double ev_to_rad_per_s(double ev) { return ev * electron_volt / hbar; }
constexpr double rad_per_s_to_ev(double omega) { return omega * hbar / electron_volt; }

constexpr double um_to_m(double um) { return um * micrometre; }
constexpr double m_to_um(double m) { return m / micrometre; }

}  // namespace casimir::units
