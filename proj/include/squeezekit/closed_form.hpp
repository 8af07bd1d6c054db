#pragma once

// Closed-form squeezed vacua and the non-unitary exponential constructions
// they are compared against.

#include "squeezekit/fock.hpp"

namespace squeezekit {

enum class SqueezeContext { SingleMode, TwoMode };

/// Squeeze parameter alpha of the annihilation condition (a - alpha a^dagger)
/// or the coupled pair (a - alpha b^dagger), (b - alpha a^dagger).
/// |alpha| < 1 is required for a normalizable state.
class SqueezeParamAlpha {
 public:
  SqueezeParamAlpha(Complex value, SqueezeContext context);

  Complex value() const { return value_; }
  SqueezeContext context() const { return context_; }

 private:
  Complex value_;
  SqueezeContext context_;
};

/// (2n-1)!! / (2n)!!, evaluated through lgamma so it stays finite for large n.
double double_factorial_ratio(int n);

/// sum_{n<terms} ratio(n) x^n, the truncated series of (1-x)^(-1/2).
double gen_fn_partial_sum(double x, int terms);

/// Smallest even K with |alpha|^(K+2) / (1-|alpha|^2) < epsilon.
int auto_cutoff(double alpha_modulus, double epsilon = 1e-12);

/// Single-mode squeezed vacuum from its Fock coefficients
///   C_{2n} = alpha^n sqrt((2n-1)!!/(2n)!!) (1-|alpha|^2)^(1/4),
/// truncated at `cutoff` and renormalized; the lost norm-squared is kept in
/// truncation_deficit().
FockState smsv_closed_form(const SqueezeParamAlpha& alpha, int cutoff);

/// Two-mode squeezed vacuum sqrt(1-|alpha|^2) sum_m alpha^m |m,m>, truncated
/// and renormalized like smsv_closed_form.
FockState tmsv_closed_form(const SqueezeParamAlpha& alpha, int cutoff);

/// exp(alpha a^dagger^2 / 2)|0>, summed term by term with the ladder
/// operators. With normalize == false the raw series is returned, whose
/// norm is (1-|alpha|^2)^(-1/4) up to truncation.
FockState exp_quadratic_single(const SqueezeParamAlpha& alpha, int cutoff, bool normalize = true);

/// exp(alpha a^dagger b^dagger)|0,0>, summed term by term. Unnormalized norm
/// is (1-|alpha|^2)^(-1/2) up to truncation.
FockState exp_pair_coupling(const SqueezeParamAlpha& alpha, int cutoff, bool normalize = true);

}  // namespace squeezekit
