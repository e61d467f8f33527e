#pragma once

#include <vector>

#include "casimir/classical.hpp"
#include "casimir/material.hpp"

// Sphere-plate scattering formula for the n > 0 Matsubara modes. This is the
// in-repo reference the semi-analytic formula is validated against.
//
// For one Matsubara frequency and one azimuthal number m the round trip
// sphere -> plate -> sphere is a dense matrix over (l, polarisation). In the
// symmetrised form used here
//
//   M_{l1 p1, l2 p2} = s(T_{l1 p1}) sum_j sum_{P in TE,TM}
//                      r_P(t_j) L_P(l1 p1; t_j) R_P(l2 p2; t_j)
//
// where t = kappa c / xi >= 1 runs over a Gauss-Laguerre rule in 2 xi L (t - 1)/c
// (L = R + a), and L_P, R_P carry sqrt|T_l| (Mie), the plane-wave weight and the
// normalised Legendre functions of t. See docs/derivation.md.
namespace casimir {

struct MieCoefficients {
  double te;
  double tm;
};

/// Sphere T-matrix elements at imaginary frequency. Underflows to zero at large l;
/// the oracle uses the log-scaled form internally.
MieCoefficients mie_coefficients(double eps, double xi, double radius, int l);

struct LogMie {
  double log_abs_te;
  double sign_te;
  double log_abs_tm;
  double sign_tm;
};

/// ln|T_l| and sign for l = 0..l_max (l = 0 entries are unused).
std::vector<LogMie> log_mie_coefficients(double eps, double xi, double radius, int l_max);

struct MultipoleTruncation {
  int l_max = 0;
  int m_max = 0;
  int n_max = 0;
  int nodes = 0;  // Gauss-Laguerre nodes per block; 0 selects l_max + 40

  /// l_max = ceil(6 R/a), m_max = ceil(6 sqrt(R/a)), n_max = ceil(10 lambda_T/a).
  static MultipoleTruncation defaults(const Geometry& geom, double temperature);

  int quadrature_nodes() const;

  /// Throws ValidationError when l_max < ceil(R/a), m_max > l_max or any count < 1.
  void validate(const Geometry& geom) const;
};

/// Dense round-trip block for one (n, m). Rows/columns are ordered
/// (l_min, TE) .. (l_max, TE), (l_min, TM) .. (l_max, TM), l_min = max(1, |m|).
class RoundTripBlock {
 public:
  RoundTripBlock(int n, int m, int l_min, int l_max, std::vector<double> data);

  int n() const { return n_; }
  int m() const { return m_; }
  int l_min() const { return l_min_; }
  int l_max() const { return l_max_; }
  int dim() const { return 2 * (l_max_ - l_min_ + 1); }
  double operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(col)];
  }
  const std::vector<double>& data() const { return data_; }

  /// ln det(1 - M) by partially pivoted LU. Throws NumericalError when the
  /// determinant is not positive.
  double log_det_one_minus() const;

  double spectral_radius() const;

 private:
  int n_;
  int m_;
  int l_min_;
  int l_max_;
  std::vector<double> data_;
};

/// Assembles the block; only |m| matters (block(-m) == block(m)).
RoundTripBlock round_trip_block(const MaterialModel& model, const Geometry& geom, double temperature,
                                int n, int m, const MultipoleTruncation& trunc);

/// k_B T sum_{n=1}^{n_max} [ln det(1-M_{n,0}) + 2 sum_{m=1}^{m_max} ln det(1-M_{n,m})].
double free_energy_npos_scattering(const MaterialModel& model, const Geometry& geom,
                                   double temperature, const MultipoleTruncation& trunc);

/// Per-block contributions k_B T w_m ln det(1 - M_{n,m}) in (n, m) order, with the
/// m-multiplicity w_m (1 for m = 0, 2 otherwise) already applied.
struct BlockContribution {
  int n;
  int m;
  double value;
};
std::vector<BlockContribution> scattering_contributions(const MaterialModel& model,
                                                        const Geometry& geom, double temperature,
                                                        const MultipoleTruncation& trunc);

struct ScatteringForce {
  double value;     // total, n = 0 exact channel included
  double n0_exact;  // analytic classical channel
  double npos;      // finite-difference derivative of the n > 0 scattering energy
};

struct DerivativeOptions {
  double relative_step = 1e-4;  // h = relative_step * a
};

/// F = F_{n=0}^exact - d/da (n > 0 scattering free energy), two-level Richardson.
/// The truncation is held fixed across the stencil.
ScatteringForce force_scattering(const MaterialModel& model, const Geometry& geom,
                                 double temperature, const MultipoleTruncation& trunc,
                                 const DerivativeOptions& options = {});

/// F' = F'_{n=0}^exact - d^2/da^2 (n > 0 scattering free energy). The default step
/// is larger than for the force because the second difference amplifies roundoff.
ScatteringForce gradient_scattering(const MaterialModel& model, const Geometry& geom,
                                    double temperature, const MultipoleTruncation& trunc,
                                    const DerivativeOptions& options = {1e-2});

enum class ScanQuantity { free_energy, force };

struct ConvergenceReport {
  ScanQuantity quantity;
  std::vector<int> l_max;
  std::vector<double> values;
  std::vector<double> deltas;  // |v_i - v_{i-1}| / |v_i|, deltas[0] = NaN
  double target;
  int converged_l_max;  // smallest l_max whose delta is below target, -1 if none
};

/// Evaluates the n > 0 oracle along an ascending l_max schedule; the other
/// truncations are taken from base.
ConvergenceReport convergence_scan(const MaterialModel& model, const Geometry& geom,
                                   double temperature, const std::vector<int>& schedule,
                                   const MultipoleTruncation& base, double target = 1e-4,
                                   ScanQuantity quantity = ScanQuantity::free_energy);

}  // namespace casimir
