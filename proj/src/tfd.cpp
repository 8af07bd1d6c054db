#include "squeezekit/tfd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "squeezekit/closed_form.hpp"
#include "squeezekit/errors.hpp"

namespace squeezekit {

namespace {

void require_positive_inputs(double beta, double omega) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be finite and > 0");
}

}  // namespace

void validate(const TfdConfig& config) {
  require_positive_inputs(config.beta, config.omega_min);
  require_positive_inputs(config.beta, config.omega_max);
  if (!(config.omega_min < config.omega_max)) throw InvalidArgument("omega_min must be < omega_max");
  if (config.num_points < 2) throw InvalidArgument("num_points must be >= 2");
}

std::vector<double> frequency_grid(const TfdConfig& config) {
  validate(config);
  std::vector<double> grid(static_cast<std::size_t>(config.num_points));
  const double steps = config.num_points - 1;
  for (int i = 0; i < config.num_points; ++i) {
    const double t = i / steps;
    grid[static_cast<std::size_t>(i)] =
        config.grid == FrequencyGrid::Linear
            ? config.omega_min + t * (config.omega_max - config.omega_min)
            : std::exp(std::log(config.omega_min) + t * (std::log(config.omega_max) - std::log(config.omega_min)));
  }
  grid.front() = config.omega_min;
  grid.back() = config.omega_max;
  return grid;
}

double tfd_alpha(double beta, double omega) {
  require_positive_inputs(beta, omega);
  return std::exp(-0.5 * beta * omega);
}

double tfd_r(double beta, double omega) {
  require_positive_inputs(beta, omega);
  const double half = 0.5 * beta * omega;
  const double alpha = std::exp(-half);
  return 0.5 * (std::log1p(alpha) - std::log(-std::expm1(-half)));
}

int tfd_auto_cutoff(double beta, double omega) {
  require_positive_inputs(beta, omega);
  const double half = 0.5 * beta * omega;
  // e^{-half K} < 1e-12  <=>  K > 12 ln 10 / half
  const double needed = std::floor(12.0 * std::log(10.0) / half) + 1.0;
  if (!(needed <= kMaxTfdCutoff)) return kMaxTfdCutoff;
  return std::max(2, static_cast<int>(needed));
}

FockState tfd_mode_state(double beta, double omega, int cutoff) {
  return tmsv_closed_form(SqueezeParamAlpha(tfd_alpha(beta, omega), SqueezeContext::TwoMode), cutoff);
}

ThermalCheck thermal_check(double beta, double omega, int cutoff) {
  const double alpha = tfd_alpha(beta, omega);
  if (cutoff < 1 || std::pow(alpha, cutoff) >= 1e-10) {
    throw DomainError("cutoff " + std::to_string(cutoff) + " too small: alpha^cutoff must be < 1e-10");
  }
  const FockState state = tfd_mode_state(beta, omega, cutoff);
  const int keep[] = {1};
  const DensityMatrix rho = reduced_density(state, keep);

  ThermalCheck check;
  const double boltzmann = std::exp(-beta * omega);
  const double ground = -std::expm1(-beta * omega);
  for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
    const double p = rho.matrix()(i, i).real();
    check.populations.push_back(p);
    check.population_residual =
        std::max(check.population_residual, std::abs(p - ground * std::pow(boltzmann, static_cast<double>(i))));
    for (Eigen::Index j = 0; j < rho.matrix().cols(); ++j) {
      if (i != j) check.max_off_diagonal = std::max(check.max_off_diagonal, std::abs(rho.matrix()(i, j)));
    }
  }
  check.mean_occupation = mean_occupation(state, 1);
  check.occupation_deviation = std::abs(check.mean_occupation - 1.0 / std::expm1(beta * omega));
  return check;
}

std::vector<TfdSpectrumRow> tfd_spectrum(const TfdConfig& config) {
  std::vector<TfdSpectrumRow> rows;
  for (double omega : frequency_grid(config)) {
    TfdSpectrumRow row;
    row.omega = omega;
    row.alpha = tfd_alpha(config.beta, omega);
    row.r = tfd_r(config.beta, omega);
    row.cutoff = tfd_auto_cutoff(config.beta, omega);
    row.cutoff_capped = std::pow(row.alpha, row.cutoff) >= 1e-12;
    const FockState state = tfd_mode_state(config.beta, omega, row.cutoff);
    row.mean_occupation = mean_occupation(state, 1);

    const int keep[] = {1};
    const DensityMatrix rho = reduced_density(state, keep);
    const double boltzmann = std::exp(-config.beta * omega);
    const double ground = -std::expm1(-config.beta * omega);
    double residual = std::abs(row.mean_occupation - 1.0 / std::expm1(config.beta * omega));
    for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
      residual = std::max(residual, std::abs(rho.matrix()(i, i).real() - ground * std::pow(boltzmann, static_cast<double>(i))));
    }
    row.thermal_residual = residual;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace squeezekit
