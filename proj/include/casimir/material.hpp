#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace casimir {

/// Drude response parameters, both as angular frequencies (rad/s).
struct DrudeParams {
  double plasma_frequency = 0.0;
  double relaxation_rate = 0.0;
};

/// Gold defaults used throughout the Casimir literature: 9.0 eV and 35 meV.
DrudeParams gold_drude_defaults();

struct OpticalSample {
  double omega;     // rad/s
  double eps_imag;  // dimensionless, >= 0
};

/// Imaginary part of the permittivity on the real frequency axis, sampled at
/// strictly increasing frequencies, together with the Drude law used below the
/// first sample. Immutable after construction.
class OpticalDataTable {
 public:
  /// Validates and takes ownership of the samples. Throws ValidationError naming
  /// the first offending row.
  OpticalDataTable(std::vector<OpticalSample> rows, DrudeParams low_frequency_extrapolation,
                   std::string provenance = {});

  const std::vector<OpticalSample>& rows() const { return rows_; }
  const DrudeParams& extrapolation() const { return extrapolation_; }
  const std::string& provenance() const { return provenance_; }

  /// eps''(omega): Drude law below the first row, log-log interpolation between rows
  /// (linear in ln omega when an endpoint is zero), zero above the last row.
  double eps_imag(double omega) const;

 private:
  std::vector<OpticalSample> rows_;
  DrudeParams extrapolation_;
  std::string provenance_;
};

/// Parses the two-column text format: '#' comments, "omega_eV eps_imag" per line.
/// Comment lines of the form "# provenance: ..." are kept as provenance text.
OpticalDataTable load_optical_data(std::istream& in, DrudeParams extrapolation);
OpticalDataTable load_optical_data_file(const std::string& path, DrudeParams extrapolation);

/// Writes the table back in the same text format, full double precision.
void write_optical_data(std::ostream& out, const OpticalDataTable& table);

/// eps(i xi) = 1 + wp^2 / (xi (xi + gamma)).
double eps_drude(double xi, double wp, double gamma);

/// eps(i xi) = 1 + wp^2 / xi^2.
double eps_plasma(double xi, double wp);

/// Quadrature controls for the dispersion integral. Each table interval starts as
/// panels_per_interval equal panels in ln omega, each refined adaptively.
struct DispersionOptions {
  int panels_per_interval = 1;
  double relative_tolerance = 1e-13;
};

/// eps(i xi) = 1 + (2/pi) int_0^inf omega eps''(omega) / (omega^2 + xi^2) d omega.
double eps_tabulated(const OpticalDataTable& table, double xi, const DispersionOptions& options = {});

enum class MaterialKind { drude, plasma, tabulated };

/// How the plate reflects at zero frequency. Decides which n = 0 formula applies.
enum class StaticResponse {
  drude,      // TM reflects fully, TE not at all
  plasma,     // TM reflects fully, TE reflects via the plasma length
  dielectric  // finite static permittivity
};

/// Permittivity at imaginary frequency for one of the supported models. Cheap to
/// copy; the tabulated variant shares its immutable table.
class MaterialModel {
 public:
  static MaterialModel drude(double plasma_frequency, double relaxation_rate);
  static MaterialModel plasma(double plasma_frequency);
  static MaterialModel tabulated(std::shared_ptr<const OpticalDataTable> table);
  static MaterialModel gold_drude();

  MaterialKind kind() const { return kind_; }
  double plasma_frequency() const { return params_.plasma_frequency; }
  double relaxation_rate() const { return params_.relaxation_rate; }
  const OpticalDataTable* table() const { return table_.get(); }

  /// eps(i xi) for xi > 0. Throws DomainError for xi <= 0.
  double eps(double xi) const;

  StaticResponse static_response() const;

  /// Human readable one-line description (kind and parameters in eV).
  std::string describe() const;

 private:
  MaterialModel(MaterialKind kind, DrudeParams params, std::shared_ptr<const OpticalDataTable> table);

  MaterialKind kind_;
  DrudeParams params_;
  std::shared_ptr<const OpticalDataTable> table_;
};

}  // namespace casimir
