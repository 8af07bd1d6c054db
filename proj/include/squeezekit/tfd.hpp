#pragma once

// Thermofield-double spectra. Each frequency omega carries an independent
// two-mode squeezed vacuum with alpha = e^{-beta omega / 2} = tanh r, so a
// finite frequency grid stands in for the continuum product over modes.

#include <vector>

#include "squeezekit/fock.hpp"

namespace squeezekit {

enum class FrequencyGrid { Linear, Logarithmic };

struct TfdConfig {
  double beta = 1.0;  // inverse Unruh temperature 2 pi / a
  double omega_min = 0.1;
  double omega_max = 10.0;
  int num_points = 50;
  FrequencyGrid grid = FrequencyGrid::Logarithmic;
};

/// Throws InvalidArgument / DomainError on a malformed config.
void validate(const TfdConfig& config);

/// Grid points, ascending, endpoints included.
std::vector<double> frequency_grid(const TfdConfig& config);

struct TfdSpectrumRow {
  double omega = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  double mean_occupation = 0.0;
  double thermal_residual = 0.0;
  int cutoff = 0;
  /// The auto cutoff hit kMaxTfdCutoff, so the row carries truncation error.
  bool cutoff_capped = false;
};

inline constexpr int kMaxTfdCutoff = 200;

/// e^{-beta omega / 2}.
double tfd_alpha(double beta, double omega);

/// atanh(e^{-beta omega / 2}) = ln coth(beta omega / 4) / 2, written as
/// (log1p(alpha) - log(-expm1(-beta omega / 2))) / 2 so it keeps full relative
/// accuracy for both beta omega << 1 and beta omega >> 1.
double tfd_r(double beta, double omega);

/// Smallest K with e^{-beta omega K / 2} < 1e-12, capped at kMaxTfdCutoff.
int tfd_auto_cutoff(double beta, double omega);

/// Two-mode state for one frequency (the closed-form squeezed pair).
FockState tfd_mode_state(double beta, double omega, int cutoff);

struct ThermalCheck {
  /// max_n |p_n - (1 - e^{-beta omega}) e^{-beta omega n}| over the one-wedge populations.
  double population_residual = 0.0;
  /// Largest off-diagonal magnitude of the one-wedge density matrix.
  double max_off_diagonal = 0.0;
  double mean_occupation = 0.0;
  /// |mean_occupation - 1/(e^{beta omega} - 1)|.
  double occupation_deviation = 0.0;
  std::vector<double> populations;
};

/// Reduces the mode pair to one wedge and compares with the Bose-Einstein
/// distribution. Requires alpha^cutoff < 1e-10.
ThermalCheck thermal_check(double beta, double omega, int cutoff);

/// One row per grid point, sorted by omega. thermal_residual is the larger of
/// the population residual and the occupation deviation.
std::vector<TfdSpectrumRow> tfd_spectrum(const TfdConfig& config);

}  // namespace squeezekit
