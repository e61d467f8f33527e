#include "casimir/scattering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/ceil_count.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/richardson.hpp"
#include "casimir/simd/kernels.hpp"
#include "casimir/special.hpp"

namespace casimir {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void split_log(double value, double& log_abs, double& sign) {
  if (value == 0.0) {
    log_abs = kNegInf;
    sign = 0.0;
  } else {
    log_abs = std::log(std::abs(value));
    sign = value > 0.0 ? 1.0 : -1.0;
  }
}

// Everything about one Matsubara frequency that all m blocks share.
struct ModeData {
  int n = 0;
  std::vector<LogMie> mie;
  std::vector<double> t;          // plane-wave variable kappa c / xi at the nodes
  std::vector<double> half_log_w; // ln sqrt(W_j)
  std::vector<double> r_te;
  std::vector<double> r_tm;
};

ModeData mode_data(const MaterialModel& model, const Geometry& geom, double temperature, int n,
                   const MultipoleTruncation& trunc) {
  ModeData d;
  d.n = n;
  const double xi = matsubara_frequency(temperature, n);
  const double eps = model.eps(xi);
  d.mie = log_mie_coefficients(eps, xi, geom.radius(), trunc.l_max);

  const auto& rule = quadrature::gauss_laguerre(trunc.quadrature_nodes());
  const double two_kl = 2.0 * xi * (geom.radius() + geom.gap()) / units::c;
  const std::size_t count = rule.nodes.size();
  d.t.resize(count);
  d.half_log_w.resize(count);
  d.r_te.resize(count);
  d.r_tm.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    d.t[j] = 1.0 + rule.nodes[j] / two_kl;
    d.half_log_w[j] = 0.5 * (rule.log_weights[j] - two_kl - std::log(two_kl));
    const auto r = fresnel_t(eps, d.t[j]);
    d.r_te[j] = r.te;
    d.r_tm[j] = r.tm;
  }
  return d;
}

RoundTripBlock assemble_block(const ModeData& d, int m, int l_max) {
  const int l_min = std::max(1, m);
  const auto nl = static_cast<std::size_t>(l_max - l_min + 1);
  const std::size_t dim = 2 * nl;
  const std::size_t len = d.t.size();

  // Row-major (dim x len) factors; A carries the plate reflection.
  std::vector<double> a_te(dim * len, 0.0), b_te(dim * len, 0.0);
  std::vector<double> a_tm(dim * len, 0.0), b_tm(dim * len, 0.0);

  const int col_len = l_max - m + 1;
  std::vector<double> log_p(static_cast<std::size_t>(col_len));
  std::vector<double> log_p_next(static_cast<std::size_t>(std::max(col_len - 1, 1)));
  const double md = m;

  for (std::size_t j = 0; j < len; ++j) {
    const double t = d.t[j];
    special::log_legendre_column(m, l_max, t, log_p);
    if (m < l_max) special::log_legendre_column(m + 1, l_max, t, log_p_next);
    const double log_s = 0.5 * std::log((t - 1.0) * (t + 1.0));
    const double log_mt_over_s = m > 0 ? std::log(md * t) - log_s : kNegInf;
    const double log_m_over_s = m > 0 ? std::log(md) - log_s : kNegInf;

    for (int l = l_min; l <= l_max; ++l) {
      const double ld = l;
      const double lp = log_p[static_cast<std::size_t>(l - m)];
      // dbar = m t Pbar_l^m / s + sqrt((l-m)(l+m+1)) Pbar_l^{m+1}; both terms positive
      double log_d = log_mt_over_s + lp;
      if (l > m)
        log_d = log_add(log_d, 0.5 * std::log((ld - md) * (ld + md + 1.0)) +
                                   log_p_next[static_cast<std::size_t>(l - m - 1)]);
      const double log_q = log_m_over_s + lp;
      const double base = d.half_log_w[j] - 0.5 * std::log(ld * (ld + 1.0));
      const auto& mie = d.mie[static_cast<std::size_t>(l)];
      const double log_f_te = base + 0.5 * mie.log_abs_te;
      const double log_f_tm = base + 0.5 * mie.log_abs_tm;

      const std::size_t row_e = static_cast<std::size_t>(l - l_min);
      const std::size_t row_m = nl + row_e;
      const double e_d = std::exp(log_f_te + log_d);
      const double e_q = std::exp(log_f_te + log_q);
      const double m_d = std::exp(log_f_tm + log_d);
      const double m_q = std::exp(log_f_tm + log_q);

      a_te[row_e * len + j] = e_d * d.r_te[j];
      b_te[row_e * len + j] = e_d;
      a_tm[row_e * len + j] = e_q * d.r_tm[j];
      b_tm[row_e * len + j] = -e_q;

      a_te[row_m * len + j] = m_q * d.r_te[j];
      b_te[row_m * len + j] = -m_q;
      a_tm[row_m * len + j] = m_d * d.r_tm[j];
      b_tm[row_m * len + j] = m_d;
    }
  }

  std::vector<double> block(dim * dim, 0.0);
  simd::gram_accumulate(a_te, dim, b_te, dim, len, block);
  simd::gram_accumulate(a_tm, dim, b_tm, dim, len, block);
  for (std::size_t i = 0; i < nl; ++i) {
    const auto& mie = d.mie[static_cast<std::size_t>(l_min) + i];
    for (std::size_t k = 0; k < dim; ++k) {
      block[i * dim + k] *= mie.sign_te;
      block[(nl + i) * dim + k] *= mie.sign_tm;
    }
  }
  return RoundTripBlock(d.n, m, l_min, l_max, std::move(block));
}

double energy_unchecked(const MaterialModel& model, const Geometry& geom, double temperature,
                        const MultipoleTruncation& trunc) {
  double sum = 0.0;
  for (const auto& c : scattering_contributions(model, geom, temperature, trunc)) sum += c.value;
  return sum;
}

}  // namespace

std::vector<LogMie> log_mie_coefficients(double eps, double xi, double radius, int l_max) {
  if (!(xi > 0.0)) throw DomainError("mie_coefficients: xi must be positive");
  if (!(radius > 0.0)) throw DomainError("mie_coefficients: radius must be positive");
  if (!(eps >= 1.0)) throw DomainError("mie_coefficients: eps(i xi) must be >= 1");
  if (l_max < 1) throw DomainError("mie_coefficients: l must be >= 1");
  const double x = xi * radius / units::c;
  const double y = std::sqrt(eps) * x;
  const auto outside = special::modified_spherical_bessel(l_max, x);
  const auto inside = special::regular_log_derivative(l_max, y);

  std::vector<LogMie> out(static_cast<std::size_t>(l_max) + 1, LogMie{kNegInf, 0.0, kNegInf, 0.0});
  for (std::size_t l = 1; l < out.size(); ++l) {
    const double log_ratio = outside.log_i[l] - outside.log_k[l];
    const double di_x = outside.dlog_zi[l];
    const double dk_x = outside.dlog_zk[l];
    const double di_y = inside[l];
    const double te = (di_y - di_x) / (dk_x - di_y);
    const double tm = (di_y - eps * di_x) / (eps * dk_x - di_y);
    split_log(te, out[l].log_abs_te, out[l].sign_te);
    split_log(tm, out[l].log_abs_tm, out[l].sign_tm);
    out[l].log_abs_te += log_ratio;
    out[l].log_abs_tm += log_ratio;
  }
  return out;
}

MieCoefficients mie_coefficients(double eps, double xi, double radius, int l) {
  const auto table = log_mie_coefficients(eps, xi, radius, l);
  const auto& c = table[static_cast<std::size_t>(l)];
  return {c.sign_te * std::exp(c.log_abs_te), c.sign_tm * std::exp(c.log_abs_tm)};
}

MultipoleTruncation MultipoleTruncation::defaults(const Geometry& geom, double temperature) {
  const double ratio = geom.radius() / geom.gap();
  MultipoleTruncation t;
  t.l_max = ceil_count(6.0 * ratio);
  t.m_max = std::min(t.l_max, ceil_count(6.0 * std::sqrt(ratio)));
  t.n_max = ceil_count(10.0 * thermal_length(temperature) / geom.gap());
  return t;
}

int MultipoleTruncation::quadrature_nodes() const { return nodes > 0 ? nodes : l_max + 40; }

void MultipoleTruncation::validate(const Geometry& geom) const {
  const int floor = ceil_count(geom.radius() / geom.gap());
  std::ostringstream msg;
  if (l_max < 1 || n_max < 1 || m_max < 0 || nodes < 0) {
    msg << "truncation needs l_max >= 1, n_max >= 1, m_max >= 0 and nodes >= 0";
  } else if (m_max > l_max) {
    msg << "m_max = " << m_max << " exceeds l_max = " << l_max;
  } else if (l_max < floor) {
    msg << "l_max = " << l_max << " is below the geometric floor ceil(R/a) = " << floor
        << "; use at least " << floor << " (recommended ceil(6R/a) = "
        << ceil_count(6.0 * geom.radius() / geom.gap()) << ")";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

RoundTripBlock::RoundTripBlock(int n, int m, int l_min, int l_max, std::vector<double> data)
    : n_(n), m_(m), l_min_(l_min), l_max_(l_max), data_(std::move(data)) {
  const auto d = static_cast<std::size_t>(dim());
  if (l_min < 1 || l_max < l_min || data_.size() != d * d)
    throw DomainError("RoundTripBlock: inconsistent shape");
}

double RoundTripBlock::log_det_one_minus() const {
  const int d = dim();
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) a(i, k) = (i == k ? 1.0 : 0.0) - (*this)(i, k);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const auto& u = lu.matrixLU();
  double log_abs = 0.0;
  double sign = lu.permutationP().determinant();
  for (int i = 0; i < d; ++i) {
    const double v = u(i, i);
    if (v < 0.0) sign = -sign;
    log_abs += std::log(std::abs(v));
  }
  if (!(sign > 0.0) || !std::isfinite(log_abs)) {
    std::ostringstream msg;
    msg << "det(1 - M) is not positive for n = " << n_ << ", m = " << m_
        << " (truncation or assembly problem)";
    throw NumericalError(msg.str(), log_abs);
  }
  return log_abs;
}

double RoundTripBlock::spectral_radius() const {
  const int d = dim();
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) a(i, k) = (*this)(i, k);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

RoundTripBlock round_trip_block(const MaterialModel& model, const Geometry& geom, double temperature,
                                int n, int m, const MultipoleTruncation& trunc) {
  trunc.validate(geom);
  if (n < 1 || n > trunc.n_max) throw DomainError("round_trip_block: need 1 <= n <= n_max");
  if (std::abs(m) > trunc.m_max) throw DomainError("round_trip_block: need |m| <= m_max");
  return assemble_block(mode_data(model, geom, temperature, n, trunc), std::abs(m), trunc.l_max);
}

std::vector<BlockContribution> scattering_contributions(const MaterialModel& model,
                                                        const Geometry& geom, double temperature,
                                                        const MultipoleTruncation& trunc) {
  const auto n_count = static_cast<std::size_t>(trunc.n_max);
  std::vector<ModeData> modes(n_count);
  parallel_for(n_count, [&](std::size_t i) {
    modes[i] = mode_data(model, geom, temperature, static_cast<int>(i) + 1, trunc);
  });

  const auto m_count = static_cast<std::size_t>(trunc.m_max) + 1;
  std::vector<BlockContribution> out(n_count * m_count);
  const double kt = units::k_B * temperature;
  parallel_for(out.size(), [&](std::size_t idx) {
    const std::size_t i = idx / m_count;
    const int m = static_cast<int>(idx % m_count);
    const double weight = m == 0 ? 1.0 : 2.0;
    const auto block = assemble_block(modes[i], m, trunc.l_max);
    out[idx] = {static_cast<int>(i) + 1, m, kt * weight * block.log_det_one_minus()};
  });
  return out;
}

double free_energy_npos_scattering(const MaterialModel& model, const Geometry& geom,
                                   double temperature, const MultipoleTruncation& trunc) {
  trunc.validate(geom);
  return energy_unchecked(model, geom, temperature, trunc);
}

ScatteringForce force_scattering(const MaterialModel& model, const Geometry& geom,
                                 double temperature, const MultipoleTruncation& trunc,
                                 const DerivativeOptions& options) {
  trunc.validate(geom);
  if (!(options.relative_step > 0.0 && options.relative_step < 0.5))
    throw DomainError("finite-difference step must lie in (0, 0.5) a");
  const auto energy = [&](double a) { return energy_unchecked(model, geom.with_gap(a), temperature, trunc); };
  const double derivative = richardson_first(energy, geom.gap(), options.relative_step * geom.gap());
  ScatteringForce f;
  f.n0_exact = force_n0(geom, temperature);
  f.npos = -derivative;
  f.value = f.n0_exact + f.npos;
  return f;
}

ScatteringForce gradient_scattering(const MaterialModel& model, const Geometry& geom,
                                    double temperature, const MultipoleTruncation& trunc,
                                    const DerivativeOptions& options) {
  trunc.validate(geom);
  if (!(options.relative_step > 0.0 && options.relative_step < 0.5))
    throw DomainError("finite-difference step must lie in (0, 0.5) a");
  const auto energy = [&](double a) { return energy_unchecked(model, geom.with_gap(a), temperature, trunc); };
  const double second = richardson_second(energy, geom.gap(), options.relative_step * geom.gap());
  ScatteringForce f;
  f.n0_exact = gradient_n0(geom, temperature);
  f.npos = -second;
  f.value = f.n0_exact + f.npos;
  return f;
}

ConvergenceReport convergence_scan(const MaterialModel& model, const Geometry& geom,
                                   double temperature, const std::vector<int>& schedule,
                                   const MultipoleTruncation& base, double target,
                                   ScanQuantity quantity) {
  if (schedule.empty()) throw ValidationError("convergence schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1]))
      throw ValidationError("convergence schedule must be strictly ascending", i);

  ConvergenceReport report;
  report.quantity = quantity;
  report.target = target;
  report.converged_l_max = -1;
  for (const int l_max : schedule) {
    MultipoleTruncation trunc = base;
    trunc.l_max = l_max;
    trunc.m_max = std::min(base.m_max, l_max);
    const double value = quantity == ScanQuantity::free_energy
                             ? free_energy_npos_scattering(model, geom, temperature, trunc)
                             : force_scattering(model, geom, temperature, trunc).value;
    double delta = std::numeric_limits<double>::quiet_NaN();
    if (!report.values.empty()) delta = std::abs(value - report.values.back()) / std::abs(value);
    report.l_max.push_back(l_max);
    report.values.push_back(value);
    report.deltas.push_back(delta);
    if (report.converged_l_max < 0 && delta < target) report.converged_l_max = l_max;
  }
  return report;
}

}  // namespace casimir
