#pragma once

namespace casimir {

/// Sphere of radius R at minimum gap a above a plate.
class Geometry {
 public:
  Geometry(double radius, double gap);

  double radius() const { return radius_; }
  double gap() const { return gap_; }
  /// x = a / R.
  double aspect() const { return gap_ / radius_; }
  /// Bispherical parameter, see z_parameter.
  double z() const;
  /// Same sphere at another gap.
  Geometry with_gap(double gap) const { return {radius_, gap}; }

 private:
  double radius_;
  double gap_;
};

/// Z = 1 / (1 + x + sqrt(x (2 + x))), x > 0.
double z_parameter(double x);

inline constexpr double kDefaultSeriesTolerance = 1e-12;

/// Exact Drude n = 0 (classical) sphere-plate channel with its first two gap
/// derivatives, all from a single pass over the multipole series.
struct ClassicalZeroMode {
  double free_energy;  // J, negative
  double force;        // N, F = -dF/da, negative (attractive)
  double gradient;     // N/m, dF/da
  int terms;           // series terms summed
};

ClassicalZeroMode classical_zero_mode(const Geometry& geom, double temperature,
                                      double tol = kDefaultSeriesTolerance);

double free_energy_n0(const Geometry& geom, double temperature, double tol = kDefaultSeriesTolerance);
double force_n0(const Geometry& geom, double temperature, double tol = kDefaultSeriesTolerance);
double gradient_n0(const Geometry& geom, double temperature, double tol = kDefaultSeriesTolerance);

}  // namespace casimir
