#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/classical.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/material.hpp"

namespace casimir {

struct ThetaRow {
  double gap;          // m
  double theta;        // force coefficient
  double theta_tilde;  // gradient coefficient
};

struct ThetaCoeffs {
  double theta;
  double theta_tilde;
};

/// Curvature-correction coefficients of the n > 0 modes as a function of the gap.
/// Interpolated with monotone (Fritsch-Carlson) cubics in a; never extrapolated.
class ThetaTable {
 public:
  ThetaTable(std::vector<ThetaRow> rows, std::string material, double temperature);

  const std::vector<ThetaRow>& rows() const { return rows_; }
  const std::string& material() const { return material_; }
  double temperature() const { return temperature_; }
  double min_gap() const { return rows_.front().gap; }
  double max_gap() const { return rows_.back().gap; }

  /// Throws RangeError outside [min_gap, max_gap].
  ThetaCoeffs at(double gap) const;

 private:
  std::vector<ThetaRow> rows_;
  std::vector<double> slope_theta_;
  std::vector<double> slope_theta_tilde_;
  std::string material_;
  double temperature_;
};

/// Text format: "# a_um theta theta_tilde" header, optional "# material: X" and
/// "# temperature_K: T" tags, one whitespace separated row per gap.
ThetaTable load_theta_table(std::istream& in);
ThetaTable load_theta_table_file(const std::string& path);
void write_theta_table(std::ostream& out, const ThetaTable& table);

ThetaCoeffs theta_coeffs(const ThetaTable& table, double gap);

/// PFA force of the n > 0 modes: 2 pi R sum_n F_n^pp(a). Negative (attractive).
double force_pfa_npos(const MaterialModel& model, double radius, double gap,
                      const MatsubaraGrid& grid);

/// d/da of force_pfa_npos: 2 pi R sum_n P_n^pp(a). Positive.
double gradient_pfa_npos(const MaterialModel& model, double radius, double gap,
                         const MatsubaraGrid& grid);

/// Full PFA (n = 0 included) force and gradient, for comparison columns.
double force_pfa(const MaterialModel& model, double radius, double gap, const MatsubaraGrid& grid);
double gradient_pfa(const MaterialModel& model, double radius, double gap,
                    const MatsubaraGrid& grid);

/// Ideal-conductor PFA force -pi^3 hbar c R / (360 a^3).
double ideal_pfa_force(double radius, double gap);

enum class Quantity { force, gradient };

/// Result of the semi-analytic formula with its breakdown. Invariant:
/// value == n0_exact + npos_pfa * correction_factor, evaluated exactly that way.
struct ForceResult {
  Quantity quantity;
  double value;              // N (force) or N/m (gradient)
  double n0_exact;           // exact classical channel
  double npos_pfa;           // PFA of the n > 0 modes
  double de_coefficient;     // theta or theta_tilde
  double correction_factor;  // 1 - coefficient * a / R

  // Metadata.
  double radius;
  double gap;
  double temperature;
  int n_max;
  double series_tolerance;
  std::string material;
};

struct ApproxOptions {
  double series_tolerance = kDefaultSeriesTolerance;
  /// Matsubara truncation factor: n_max = ceil(factor * lambda_T / a).
  double matsubara_factor = 10.0;
};

/// F = F_{n=0}^exact + F_{n>0}^PFA (1 - theta a / R).
ForceResult force_approx(const MaterialModel& model, double radius, double gap, double temperature,
                         const ThetaTable& table, const ApproxOptions& options = {});

/// F' = F'_{n=0}^exact + F'_{n>0}^PFA (1 - theta_tilde a / R).
ForceResult gradient_approx(const MaterialModel& model, double radius, double gap,
                            double temperature, const ThetaTable& table,
                            const ApproxOptions& options = {});

}  // namespace casimir
