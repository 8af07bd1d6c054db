#pragma once

// Unitary squeezing operators built by exponentiating their anti-Hermitian
// generators on the truncated space, plus residual checks of the operator
// identities that tie them to the closed-form states.

#include "squeezekit/closed_form.hpp"
#include "squeezekit/fock.hpp"

namespace squeezekit {

/// xi = r e^{i theta}. theta is reduced into [0, 2 pi).
class SqueezeParamXi {
 public:
  SqueezeParamXi(double r, double theta);

  double r() const { return r_; }
  double theta() const { return theta_; }
  Complex value() const { return std::polar(r_, theta_); }

 private:
  double r_;
  double theta_;
};

/// Sign s in alpha = s tanh(r) e^{i theta}. The single-mode operator
/// S(xi) = exp((xi* a^2 - xi a^dagger^2)/2) gives s = -1; the two-mode operator
/// T(xi) = exp(xi a^dagger b^dagger - xi* a b) gives s = +1. This is the only
/// place the convention is encoded.
constexpr double alpha_sign(SqueezeContext context) {
  return context == SqueezeContext::SingleMode ? -1.0 : 1.0;
}

SqueezeParamAlpha alpha_from_xi(const SqueezeParamXi& xi, SqueezeContext context);
SqueezeParamXi xi_from_alpha(const SqueezeParamAlpha& alpha);

/// (xi* a^2 - xi a^dagger^2) / 2 on the square cutoff-K space.
FockOperator generator_single(const SqueezeParamXi& xi, int cutoff);
/// xi a^dagger b^dagger - xi* a b on the square two-mode cutoff-K space.
FockOperator generator_two(const SqueezeParamXi& xi, int cutoff);

/// exp(X) by scaling and squaring with a truncated Taylor series.
///
/// X is scaled by 2^-s until ||X/2^s||_1 <= 1/2, then the series is cut at the
/// first degree m whose remainder bound
///     ||X/2^s||^(m+1) / (m+1)! * 1/(1 - ||X/2^s||/(m+2))
/// drops below 2^-53 (unit roundoff), and the result is squared s times.
FockOperator matrix_exp(const FockOperator& generator);
DenseMatrix matrix_exp(const DenseMatrix& generator);

/// exp(X) applied to `state`, exponentiating only the smallest coordinate
/// block that X leaves invariant and that contains the support of `state`.
/// Equal to apply(matrix_exp(X), state) in exact arithmetic.
FockState apply_matrix_exp(const FockOperator& generator, const FockState& state);

/// Smallest even cutoff K >= 4 with tanh(r)^K < 1e-12.
int auto_cutoff_for_r(double r);

/// S(xi)|0>. With cutoff <= 0 the cutoff is chosen by auto_cutoff_for_r.
/// Throws DomainError if tanh(r)^cutoff >= 1e-10.
FockState squeeze_single(const SqueezeParamXi& xi, int cutoff = 0);
/// T(xi)|0,0>; same cutoff rules as squeeze_single.
FockState squeeze_two(const SqueezeParamXi& xi, int cutoff = 0);

/// Max-norm residual of T a = (cosh r a - e^{i theta} sinh r b^dagger) T and of
/// the analogous b identity, over matrix elements whose row and column states
/// have every occupation <= window. Returns the larger of the two.
///
/// This is the conjugation identity T a T^dagger = cosh r a - e^{i theta} sinh r b^dagger
/// multiplied through by T on the right. It needs only one truncated
/// exponential between window states, so the cutoff boundary contaminates it
/// far less than the conjugated form (see bch_conjugation_residual_two).
double bch_residual_two(const SqueezeParamXi& xi, int cutoff, int window);

/// The same identity in its literal conjugated form T a T^dagger - (...), on
/// the same window. Converges to zero as the cutoff grows, but more slowly.
double bch_conjugation_residual_two(const SqueezeParamXi& xi, int cutoff, int window);

/// Max-norm residual of [a, E] - alpha a^dagger E on the interior window,
/// where E = exp(alpha a^dagger^2 / 2) is summed exactly on the truncated space.
double commutator_check_single(const SqueezeParamAlpha& alpha, int cutoff, int window);

}  // namespace squeezekit
