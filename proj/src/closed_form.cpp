#include "squeezekit/closed_form.hpp"

#include <cmath>
#include <string>

#include "squeezekit/errors.hpp"

namespace squeezekit {

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("cutoff must be >= 1, got " + std::to_string(cutoff));
}

// alpha^n via polar form so large n keeps full relative accuracy.
Complex complex_power(Complex alpha, int n) {
  if (n == 0) return 1.0;
  const double modulus = std::abs(alpha);
  if (modulus == 0.0) return 0.0;
  return std::polar(std::pow(modulus, n), n * std::arg(alpha));
}

}  // namespace

SqueezeParamAlpha::SqueezeParamAlpha(Complex value, SqueezeContext context) : value_(value), context_(context) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("alpha must be finite");
  }
  if (std::abs(value) >= 1.0) {
    throw DomainError("normalizability requires |alpha| < 1, got |alpha| = " + std::to_string(std::abs(value)));
  }
}

double double_factorial_ratio(int n) {
  if (n < 0) throw InvalidArgument("double_factorial_ratio needs n >= 0");
  // (2n-1)!!/(2n)!! = (2n)! / (2^n n!)^2
  const double log_ratio = std::lgamma(2.0 * n + 1.0) - 2.0 * std::lgamma(n + 1.0) - n * std::log(4.0);
  return std::exp(log_ratio);
}

double gen_fn_partial_sum(double x, int terms) {
  if (!(std::abs(x) < 1.0)) throw DomainError("generating function needs |x| < 1");
  if (terms < 1) throw InvalidArgument("terms must be >= 1");
  double sum = 0.0;
  double power = 1.0;
  for (int n = 0; n < terms; ++n) {
    sum += double_factorial_ratio(n) * power;
    power *= x;
  }
  return sum;
}

int auto_cutoff(double alpha_modulus, double epsilon) {
  if (!(alpha_modulus >= 0.0 && alpha_modulus < 1.0)) throw DomainError("auto_cutoff needs 0 <= |alpha| < 1");
  const double denom = 1.0 - alpha_modulus * alpha_modulus;
  int k = 2;
  while (std::pow(alpha_modulus, k + 2) / denom >= epsilon) k += 2;
  return k;
}

FockState smsv_closed_form(const SqueezeParamAlpha& alpha, int cutoff) {
  require_cutoff(cutoff);
  const Complex a = alpha.value();
  const double c0 = std::pow(1.0 - std::norm(a), 0.25);
  std::vector<Complex> amps(static_cast<std::size_t>(cutoff) + 1, Complex{});
  double kept = 0.0;
  for (int n = 0; 2 * n <= cutoff; ++n) {
    const Complex c = complex_power(a, n) * std::sqrt(double_factorial_ratio(n)) * c0;
    amps[static_cast<std::size_t>(2 * n)] = c;
    kept += std::norm(c);
  }
  FockState truncated(1, cutoff, std::move(amps));
  return truncated.normalized().with_truncation_deficit(std::max(0.0, 1.0 - kept));
}

FockState tmsv_closed_form(const SqueezeParamAlpha& alpha, int cutoff) {
  require_cutoff(cutoff);
  const Complex a = alpha.value();
  const double c00 = std::sqrt(1.0 - std::norm(a));
  const FockBasis basis(2, cutoff);
  std::vector<Complex> amps(basis.dim(), Complex{});
  double kept = 0.0;
  for (int m = 0; m <= cutoff; ++m) {
    const Complex c = complex_power(a, m) * c00;
    const int occ[2] = {m, m};
    amps[basis.index(occ)] = c;
    kept += std::norm(c);
  }
  FockState truncated(2, cutoff, std::move(amps));
  return truncated.normalized().with_truncation_deficit(std::max(0.0, 1.0 - kept));
}

namespace {

// sum_k (coupling^k / k!) |0>, accumulated as v_k = (coupling / k) v_{k-1}.
// The square-truncated raising operators only move amplitude upward, so each
// term is exactly the infinite-space term restricted to the box.
FockState exp_series(const FockOperator& coupling, int num_modes, int cutoff) {
  DenseVector term = new_vacuum(num_modes, cutoff).vector();
  DenseVector sum = term;
  for (int k = 1; term.squaredNorm() > 0.0; ++k) {
    term = (coupling.matrix() * term) / static_cast<double>(k);
    sum += term;
  }
  return {num_modes, cutoff, sum};
}

}  // namespace

FockState exp_quadratic_single(const SqueezeParamAlpha& alpha, int cutoff, bool normalize) {
  require_cutoff(cutoff);
  const FockOperator up = square_ladder(1, cutoff, 1, LadderKind::Raise);
  const FockState raw = exp_series((0.5 * alpha.value()) * (up * up), 1, cutoff);
  const double exact_norm_sq = 1.0 / std::sqrt(1.0 - std::norm(alpha.value()));
  const double deficit = std::max(0.0, 1.0 - raw.norm() * raw.norm() / exact_norm_sq);
  return (normalize ? raw.normalized() : raw).with_truncation_deficit(deficit);
}

FockState exp_pair_coupling(const SqueezeParamAlpha& alpha, int cutoff, bool normalize) {
  require_cutoff(cutoff);
  const FockOperator up_a = square_ladder(2, cutoff, 1, LadderKind::Raise);
  const FockOperator up_b = square_ladder(2, cutoff, 2, LadderKind::Raise);
  const FockState raw = exp_series(alpha.value() * (up_a * up_b), 2, cutoff);
  const double exact_norm_sq = 1.0 / (1.0 - std::norm(alpha.value()));
  const double deficit = std::max(0.0, 1.0 - raw.norm() * raw.norm() / exact_norm_sq);
  return (normalize ? raw.normalized() : raw).with_truncation_deficit(deficit);
}

}  // namespace squeezekit
