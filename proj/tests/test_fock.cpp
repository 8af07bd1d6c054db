#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "squeezekit/closed_form.hpp"
#include "squeezekit/errors.hpp"
#include "squeezekit/fock.hpp"
#include "test_support.hpp"

using namespace squeezekit;

namespace {

FockState ket(int cutoff, std::initializer_list<int> occ) {
  return FockState::basis_state(cutoff, std::vector<int>(occ));
}

}  // namespace

TEST(FockBasis, LexicographicModeOneSlowest) {
  const FockBasis basis(3, 2);
  EXPECT_EQ(basis.dim(), 27u);
  const int occ[3] = {1, 0, 2};
  EXPECT_EQ(basis.index(occ), 1u * 9 + 0u * 3 + 2u);
  EXPECT_EQ(basis.occupations(11), (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(basis.occupation(11, 3), 2);
  EXPECT_EQ(basis.stride(1), 9u);
  for (std::size_t i = 0; i < basis.dim(); ++i) EXPECT_EQ(basis.index(basis.occupations(i)), i);
}

TEST(FockBasis, RejectsBadOccupations) {
  const FockBasis basis(2, 3);
  const int too_big[2] = {4, 0};
  const int negative[2] = {0, -1};
  const int wrong_len[1] = {0};
  EXPECT_THROW(basis.index(too_big), InvalidArgument);
  EXPECT_THROW(basis.index(negative), InvalidArgument);
  EXPECT_THROW(basis.index(wrong_len), InvalidArgument);
}

TEST(FockBasis, DimensionOverflowIsReported) { EXPECT_THROW(fock_dimension(64, 100), BudgetExceeded); }

TEST(Vacuum, SingleMode) {
  const FockState v = new_vacuum(1, 10);
  EXPECT_EQ(v.dim(), 11u);
  EXPECT_EQ(v[0], Complex(1.0));
  for (std::size_t i = 1; i < v.dim(); ++i) EXPECT_EQ(v[i], Complex(0.0));
  EXPECT_TRUE(v.is_normalized());
}

TEST(Vacuum, TwoAndThreeModes) {
  const FockState v2 = new_vacuum(2, 3);
  EXPECT_EQ(v2.dim(), 16u);
  const int zero2[2] = {0, 0};
  EXPECT_EQ(v2.amplitude(zero2), Complex(1.0));
  EXPECT_NEAR(v2.norm(), 1.0, 0.0);
  const FockState v3 = new_vacuum(3, 2);
  EXPECT_EQ(v3.dim(), 27u);
  const int zero3[3] = {0, 0, 0};
  EXPECT_EQ(v3.amplitude(zero3), Complex(1.0));
  EXPECT_NEAR(v3.norm(), 1.0, 0.0);
}

TEST(Vacuum, RejectsZeroModesOrCutoff) {
  EXPECT_THROW(new_vacuum(0, 3), InvalidArgument);
  EXPECT_THROW(new_vacuum(2, 0), InvalidArgument);
}

TEST(FockState, RejectsWrongTensorSize) {
  EXPECT_THROW(FockState(2, 2, std::vector<Complex>(8)), InvalidArgument);
}

TEST(FockState, NormalizingZeroVectorFails) {
  EXPECT_THROW(FockState(1, 2, std::vector<Complex>(3)).normalized(), DomainError);
}

TEST(Ladder, LowerOnTwo) {
  const FockState out = apply(ladder(1, 2, 1, LadderKind::Lower), ket(2, {2}));
  EXPECT_EQ(out.cutoff(), 2);
  EXPECT_NEAR(std::abs(out[1] - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), std::sqrt(2.0), 1e-15);
}

TEST(Ladder, RaiseOnTwoKeepsTopLevel) {
  const FockState out = apply(ladder(1, 2, 1, LadderKind::Raise), ket(2, {2}));
  EXPECT_EQ(out.cutoff(), 3);
  EXPECT_NEAR(std::abs(out[3] - std::sqrt(3.0)), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), std::sqrt(3.0), 1e-15);
}

TEST(Ladder, LowerSecondModeOfTwo) {
  const FockState out = apply(ladder(2, 2, 2, LadderKind::Lower), ket(2, {1, 1}));
  const int target[2] = {1, 0};
  EXPECT_NEAR(std::abs(out.amplitude(target) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(Ladder, MatrixEntriesAreSqrtM) {
  const DenseMatrix a = ladder(1, 5, 1, LadderKind::Lower).dense();
  for (int row = 0; row <= 5; ++row) {
    for (int col = 0; col <= 5; ++col) {
      const double expect = (row == col - 1) ? std::sqrt(static_cast<double>(col)) : 0.0;
      EXPECT_EQ(a(row, col), Complex(expect));
    }
  }
}

TEST(Ladder, RaiseIsAdjointOfLowerOnLargerBox) {
  const DenseMatrix raise = ladder(2, 3, 1, LadderKind::Raise).dense();
  const DenseMatrix lower_rect = embedding(2, 3, 4).dense().adjoint() * ladder(2, 4, 1, LadderKind::Lower).dense();
  EXPECT_LE((raise.adjoint() - lower_rect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ladder, RejectsModeOutOfRange) {
  EXPECT_THROW(ladder(2, 3, 0, LadderKind::Lower), InvalidArgument);
  EXPECT_THROW(ladder(2, 3, 3, LadderKind::Raise), InvalidArgument);
}

TEST(Ladder, CommutatorExactBelowCutoff) {
  const int cutoff = 6;
  const FockOperator a = ladder(1, cutoff, 1, LadderKind::Lower);
  const FockOperator a_big = ladder(1, cutoff + 1, 1, LadderKind::Lower);
  const FockOperator ad = ladder(1, cutoff, 1, LadderKind::Raise);
  const FockOperator ad_sq = square_ladder(1, cutoff, 1, LadderKind::Raise);
  for (int m = 0; m < cutoff; ++m) {
    const FockState psi = ket(cutoff, {m});
    const FockState raise_lower = apply(a_big, apply(ad, psi));  // cutoff + 1
    EXPECT_NEAR(std::abs(raise_lower[static_cast<std::size_t>(m)] - static_cast<double>(m + 1)), 0.0, 1e-13);
    EXPECT_NEAR(raise_lower.norm(), m + 1.0, 1e-13);
    const FockState lower_raise = apply(ad_sq, apply(a, psi));
    EXPECT_NEAR(std::abs(lower_raise[static_cast<std::size_t>(m)] - static_cast<double>(m)), 0.0, 1e-13);
    EXPECT_NEAR(lower_raise.norm(), static_cast<double>(m), 1e-13);
  }
}

TEST(Ladder, AdjointnessProperty) {
  auto rng = sqtest::make_rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int modes = 1 + trial % 3;
    const int cutoff = 3 + trial % 4;
    const int mode = 1 + trial % modes;
    const FockState psi = sqtest::random_state(rng, modes, cutoff + 1);
    const FockState phi = sqtest::random_state(rng, modes, cutoff);
    // <a psi | phi> = <psi | a^dagger phi> with psi on the cutoff+1 box.
    const FockOperator a = ladder(modes, cutoff + 1, mode, LadderKind::Lower);
    const FockState a_psi = apply(embedding(modes, cutoff, cutoff + 1).adjoint(), apply(a, psi));
    const FockState ad_phi = apply(ladder(modes, cutoff, mode, LadderKind::Raise), phi);
    EXPECT_NEAR(std::abs(inner(a_psi, phi) - inner(psi, ad_phi)), 0.0, 1e-13);
  }
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(new_vacuum(1, 4), new_vacuum(1, 4)), Complex(1.0));
  EXPECT_EQ(inner(ket(4, {0}), ket(4, {2})), Complex(0.0));
  const FockState psi(1, 1, std::vector<Complex>{0.6, Complex(0.0, 0.8)});
  EXPECT_NEAR(std::abs(inner(psi, psi) - 1.0), 0.0, 1e-15);
}

TEST(Inner, ConjugateLinearInLhs) {
  const FockState lhs(1, 1, std::vector<Complex>{Complex(0.0, 1.0), 0.0});
  const FockState rhs(1, 1, std::vector<Complex>{1.0, 0.0});
  EXPECT_NEAR(std::abs(inner(lhs, rhs) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Inner, ShapeMismatch) {
  EXPECT_THROW(inner(new_vacuum(1, 3), new_vacuum(1, 4)), InvalidArgument);
  EXPECT_THROW(inner(new_vacuum(1, 3), new_vacuum(2, 3)), InvalidArgument);
}

TEST(Fidelity, Examples) {
  const FockState v = new_vacuum(1, 4);
  EXPECT_NEAR(fidelity(v, v), 1.0, 1e-15);
  EXPECT_EQ(fidelity(ket(4, {0}), ket(4, {2})), 0.0);
}

TEST(Fidelity, RejectsUnnormalized) {
  const FockState raw(1, 1, std::vector<Complex>{1.0, 1.0});
  EXPECT_THROW(fidelity(raw, raw), InvalidArgument);
}

TEST(Fidelity, SymmetricAndPhaseInvariant) {
  auto rng = sqtest::make_rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const FockState a = sqtest::random_state(rng, 2, 3);
    const FockState b = sqtest::random_state(rng, 2, 3);
    const double f = fidelity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), 1e-14);
    const Complex phase = std::polar(1.0, 0.37 * trial);
    const FockState rotated(2, 3, DenseVector(phase * b.vector()));
    EXPECT_NEAR(fidelity(a, rotated), f, 1e-14);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(MeanOccupation, VacuumAndSqueezed) {
  EXPECT_EQ(mean_occupation(new_vacuum(2, 4), 1), 0.0);
  const FockState s = smsv_closed_form(SqueezeParamAlpha(0.5, SqueezeContext::SingleMode), 60);
  EXPECT_NEAR(mean_occupation(s, 1), 1.0 / 3.0, 1e-6);
  EXPECT_THROW(mean_occupation(s, 2), InvalidArgument);
}

TEST(MeanOccupation, TfdModeAtTwoLnTwo) {
  // alpha = e^{-ln 2} = 0.5 for beta omega = 2 ln 2
  const FockState s = tmsv_closed_form(SqueezeParamAlpha(std::exp(-std::log(2.0)), SqueezeContext::TwoMode), 40);
  EXPECT_NEAR(mean_occupation(s, 1), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(mean_occupation(s, 2), 1.0 / 3.0, 1e-6);
}

TEST(ReducedDensity, ProductVacuum) {
  const DensityMatrix rho = reduced_density(new_vacuum(2, 3), std::vector<int>{1});
  EXPECT_EQ(rho.matrix().rows(), 4);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(rho.matrix().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(ReducedDensity, TwoModeSqueezedIsGeometric) {
  const FockState s = tmsv_closed_form(SqueezeParamAlpha(0.5, SqueezeContext::TwoMode), 40);
  const DenseMatrix rho = reduced_density(s, std::vector<int>{1}).matrix();
  for (int n = 0; n <= 10; ++n) {
    EXPECT_NEAR(rho(n, n).real(), 0.75 * std::pow(0.25, n), 1e-12);
    for (int m = 0; m <= 10; ++m) {
      if (m != n) EXPECT_LE(std::abs(rho(n, m)), 1e-15);
    }
  }
}

TEST(ReducedDensity, BellLike) {
  std::vector<Complex> amps(4);
  amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
  const DenseMatrix rho = reduced_density(FockState(2, 1, amps), std::vector<int>{1}).matrix();
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.0, 1e-15);
}

TEST(ReducedDensity, RejectsBadKeepSets) {
  const FockState v = new_vacuum(2, 2);
  EXPECT_THROW(reduced_density(v, std::vector<int>{}), InvalidArgument);
  EXPECT_THROW(reduced_density(v, std::vector<int>{1, 2}), InvalidArgument);
  EXPECT_THROW(reduced_density(v, std::vector<int>{3}), InvalidArgument);
}

TEST(ReducedDensity, TracePreservedAndPositive) {
  auto rng = sqtest::make_rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const FockState psi = sqtest::random_state(rng, 3, 2);
    const std::vector<int> keep = trial % 2 == 0 ? std::vector<int>{2} : std::vector<int>{1, 3};
    const DensityMatrix rho = reduced_density(psi, keep);
    EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-10);
    EXPECT_LE(rho.hermiticity_residual(), 1e-12);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(rho.matrix());
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(ReducedDensity, KeptModesInAscendingOrder) {
  const FockState psi = FockState::basis_state(2, std::vector<int>{0, 1, 2});
  const DenseMatrix rho = reduced_density(psi, std::vector<int>{3, 1}).matrix();
  // Kept modes (1, 3) with occupations (0, 2) -> index 0 * 3 + 2.
  EXPECT_NEAR(std::abs(rho(2, 2) - 1.0), 0.0, 1e-15);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(reduced_density(new_vacuum(2, 3), std::vector<int>{1})), 0.0, 1e-10);
  DenseMatrix half = DenseMatrix::Zero(2, 2);
  half(0, 0) = half(1, 1) = 0.5;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(1, 1, half)), std::numbers::ln2, 1e-10);
}

TEST(Entropy, ReducedTwoModeSqueezed) {
  const FockState s = tmsv_closed_form(SqueezeParamAlpha(0.5, SqueezeContext::TwoMode), 40);
  double expect = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double p = 0.75 * std::pow(0.25, n);
    if (p > 0.0) expect -= p * std::log(p);
  }
  EXPECT_NEAR(von_neumann_entropy(reduced_density(s, std::vector<int>{2})), expect, 1e-8);
}

TEST(Entropy, RejectsNonHermitian) {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 0.5;
  EXPECT_THROW(von_neumann_entropy(DensityMatrix(1, 1, m)), InvalidArgument);
}

TEST(TensorProduct, OrderingAndNorm) {
  const FockState a = FockState::basis_state(2, std::vector<int>{1});
  const FockState b = FockState::basis_state(2, std::vector<int>{2});
  const FockState ab = tensor_product(a, b);
  EXPECT_EQ(ab.num_modes(), 2);
  const int occ[2] = {1, 2};
  EXPECT_EQ(ab.amplitude(occ), Complex(1.0));
  EXPECT_THROW(tensor_product(a, new_vacuum(1, 3)), InvalidArgument);
}

TEST(FockOperator, CompositionChecksCutoffs) {
  const FockOperator up = ladder(1, 3, 1, LadderKind::Raise);  // 3 -> 4
  EXPECT_THROW(up * up, InvalidArgument);
  const FockOperator up2 = ladder(1, 4, 1, LadderKind::Raise) * up;  // 3 -> 5
  EXPECT_EQ(up2.domain_cutoff(), 3);
  EXPECT_EQ(up2.codomain_cutoff(), 5);
}

TEST(FockOperator, IdentityIsUnitary) {
  EXPECT_EQ(FockOperator::identity(2, 3).unitarity_residual(), 0.0);
  EXPECT_EQ(FockOperator::zero(2, 3, 3).anti_hermiticity_residual(), 0.0);
}
