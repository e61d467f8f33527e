#pragma once

#include <vector>

#include "casimir/material.hpp"

// Parallel-plate Lifshitz theory, one Matsubara mode at a time.
//
// Sign convention (used by the whole library): free energies are negative;
// pressures returned here are positive magnitudes of the attraction,
// P = +d(free energy)/da. The sphere-plate force F = -dF/da is negative
// (attractive) and its gradient dF/da positive, see pfa.hpp.
namespace casimir {

/// lambda_T = hbar c / (2 pi k_B T).
double thermal_length(double temperature);

/// xi_n = 2 pi n k_B T / hbar.
double matsubara_frequency(double temperature, int n);

class MatsubaraGrid {
 public:
  MatsubaraGrid(double temperature, int n_max);

  /// n_max = ceil(factor * lambda_T / a_min).
  static MatsubaraGrid for_separation(double temperature, double a_min, double factor = 10.0);

  double temperature() const { return temperature_; }
  int n_max() const { return static_cast<int>(frequencies_.size()); }
  /// xi_n for 1 <= n <= n_max.
  double frequency(int n) const { return frequencies_.at(static_cast<std::size_t>(n - 1)); }
  const std::vector<double>& frequencies() const { return frequencies_; }

 private:
  double temperature_;
  std::vector<double> frequencies_;
};

struct FresnelPair {
  double te;
  double tm;
};

/// Reflection coefficients of a half space at imaginary frequency i xi.
FresnelPair fresnel(double eps, double xi, double kperp);

/// Same coefficients in terms of t = q c / xi >= 1 (q the vacuum decay constant).
FresnelPair fresnel_t(double eps, double t);

/// n-th Matsubara term (n >= 1, full weight) of the free energy per unit area, J/m^2.
double pp_free_energy_mode(const MaterialModel& model, double a, double temperature, int n);

/// n-th Matsubara term of the pressure magnitude, Pa. Equals d/da of pp_free_energy_mode.
double pp_pressure_mode(const MaterialModel& model, double a, double temperature, int n);

/// Same as pp_pressure_mode with the physical sign (force per area on the plate
/// along +a, negative for attraction).
double pp_pressure_mode_signed(const MaterialModel& model, double a, double temperature, int n);

/// Drude n = 0 term, half weight included: -k_B T zeta(3) / (16 pi a^2).
double pp_zero_mode_drude(double a, double temperature);

/// n = 0 term (half weight) for the static response of the model.
double pp_zero_mode_energy(const MaterialModel& model, double a, double temperature);
double pp_zero_mode_pressure(const MaterialModel& model, double a, double temperature);

/// Sums over n = 1..grid.n_max() in index order.
double pp_free_energy_npos(const MaterialModel& model, double a, const MatsubaraGrid& grid);
double pp_pressure_npos(const MaterialModel& model, double a, const MatsubaraGrid& grid);

/// Full Matsubara sums including the n = 0 term.
double pp_free_energy(const MaterialModel& model, double a, const MatsubaraGrid& grid);
double pp_pressure(const MaterialModel& model, double a, const MatsubaraGrid& grid);

/// Ideal-conductor zero temperature pressure pi^2 hbar c / (240 a^4).
double ideal_pressure(double a);
/// Ideal-conductor zero temperature energy per area -pi^2 hbar c / (720 a^3).
double ideal_free_energy(double a);

}  // namespace casimir
