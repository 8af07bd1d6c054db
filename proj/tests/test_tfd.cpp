#include <gtest/gtest.h>

#include <cmath>

#include "squeezekit/errors.hpp"
#include "squeezekit/tfd.hpp"
#include "squeezekit/unitary.hpp"

using namespace squeezekit;

namespace {

const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);

}  // namespace

TEST(TfdAlpha, Examples) {
  EXPECT_NEAR(tfd_alpha(1.0, 2 * kLn2), 0.5, 1e-15);
  EXPECT_NEAR(tfd_alpha(1.0, 2 * kLn3), 1.0 / 3.0, 1e-15);
  EXPECT_LT(tfd_alpha(1.0, 1e4), 1e-300);
  EXPECT_THROW(tfd_alpha(0.0, 1.0), DomainError);
  EXPECT_THROW(tfd_alpha(1.0, -1.0), DomainError);
}

TEST(TfdR, Examples) {
  EXPECT_NEAR(tfd_r(1.0, 2 * kLn2), 0.5 * kLn3, 1e-7);
  EXPECT_NEAR(tfd_r(1.0, 2 * kLn2), std::atanh(0.5), 1e-15);
  EXPECT_NEAR(tfd_r(2.0, kLn3), std::atanh(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(tfd_r(1.0, 2 * kLn3), 0.3465736, 1e-7);
  EXPECT_LT(tfd_r(1.0, 80.0), 1e-17);
  EXPECT_GT(tfd_r(1.0, 80.0), 0.0);
  EXPECT_THROW(tfd_r(-1.0, 1.0), DomainError);
}

TEST(TfdR, RoundTripAcrossScales) {
  for (int i = 0; i < 50; ++i) {
    const double bw = std::exp(std::log(1e-3) + i * (std::log(50.0) - std::log(1e-3)) / 49.0);
    const double a = tfd_alpha(1.0, bw);
    const double r = tfd_r(1.0, bw);
    EXPECT_NEAR(std::tanh(r), a, 1e-12) << "beta omega " << bw;
    // ln coth(x/4) / 2 evaluated directly is accurate enough in the middle of the range.
    if (bw > 0.1 && bw < 10) EXPECT_NEAR(r, 0.5 * std::log(1.0 / std::tanh(bw / 4)), 1e-13);
  }
}

TEST(TfdR, SmallBetaOmegaKeepsRelativeAccuracy) {
  // r ~ ln(4 / (beta omega)) / 2 for beta omega -> 0
  const double bw = 1e-9;
  EXPECT_NEAR(tfd_r(1.0, bw), 0.5 * std::log(4.0 / bw), 1e-9);
}

TEST(TfdAutoCutoff, SmallestAndCapped) {
  const int k = tfd_auto_cutoff(1.0, 2 * kLn2);
  EXPECT_LT(std::pow(0.5, k), 1e-12);
  EXPECT_GE(std::pow(0.5, k - 1), 1e-12);
  EXPECT_EQ(tfd_auto_cutoff(1.0, 1e-4), kMaxTfdCutoff);
}

TEST(ThermalCheck, TwoLnTwo) {
  const ThermalCheck c = thermal_check(1.0, 2 * kLn2, 40);
  EXPECT_LE(c.population_residual, 1e-8);
  EXPECT_LE(c.max_off_diagonal, 1e-10);
  for (int n = 0; n < 10; ++n) EXPECT_NEAR(c.populations[static_cast<std::size_t>(n)], 0.75 * std::pow(0.25, n), 1e-12);
  EXPECT_NEAR(c.mean_occupation, 1.0 / 3.0, 1e-8);
}

TEST(ThermalCheck, TwoLnThree) {
  const ThermalCheck c = thermal_check(1.0, 2 * kLn3, 40);
  EXPECT_NEAR(c.mean_occupation, 0.125, 1e-8);
  EXPECT_LE(c.occupation_deviation, 1e-8);
  EXPECT_LE(c.population_residual, 1e-8);
}

TEST(ThermalCheck, FrozenOutMode) {
  const ThermalCheck c = thermal_check(1.0, 20.0, 10);
  EXPECT_GE(c.populations[0], 1 - 1e-8);
}

TEST(ThermalCheck, CutoffTooSmall) { EXPECT_THROW(thermal_check(1.0, 2 * kLn2, 20), DomainError); }

TEST(Spectrum, FiveLogPointsDecreasing) {
  const auto rows = tfd_spectrum({1.0, 0.1, 10.0, 5, FrequencyGrid::Logarithmic});
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_DOUBLE_EQ(rows.front().omega, 0.1);
  EXPECT_DOUBLE_EQ(rows.back().omega, 10.0);
  EXPECT_NEAR(rows[2].omega, 1.0, 1e-14);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].omega, rows[i - 1].omega);
    EXPECT_LT(rows[i].r, rows[i - 1].r);
    EXPECT_LT(rows[i].alpha, rows[i - 1].alpha);
  }
  for (const auto& row : rows) {
    EXPECT_NEAR(std::tanh(row.r), row.alpha, 1e-12);
    EXPECT_GT(row.r, 0.0);
    EXPECT_GE(row.mean_occupation, 0.0);
  }
}

TEST(Spectrum, RowAtTwoLnTwo) {
  const auto rows = tfd_spectrum({1.0, 2 * kLn2, 4 * kLn2, 2, FrequencyGrid::Linear});
  EXPECT_NEAR(rows[0].mean_occupation, 1.0 / 3.0, 1e-6);
  EXPECT_LE(rows[0].thermal_residual, 1e-6);
  EXPECT_FALSE(rows[0].cutoff_capped);
}

TEST(Spectrum, ThermalityEveryRow) {
  const auto rows = tfd_spectrum({1.0, 0.5, 20.0, 12, FrequencyGrid::Logarithmic});
  for (const auto& row : rows) {
    const ThermalCheck c = thermal_check(1.0, row.omega, row.cutoff);
    EXPECT_LE(c.max_off_diagonal, 1e-10);
    EXPECT_LE(row.thermal_residual, 1e-8);
  }
}

TEST(Spectrum, CappedRowsAreFlagged) {
  const auto rows = tfd_spectrum({1.0, 1e-3, 1e-2, 2, FrequencyGrid::Linear});
  for (const auto& row : rows) {
    EXPECT_TRUE(row.cutoff_capped);
    EXPECT_EQ(row.cutoff, kMaxTfdCutoff);
  }
}

TEST(Spectrum, PerModeUnitarity) {
  for (double omega : {0.5, 2 * kLn2, 3.0, 8.0}) {
    const int k = tfd_auto_cutoff(1.0, omega);
    const FockState tfd = tfd_mode_state(1.0, omega, k);
    const FockState unitary = squeeze_two(SqueezeParamXi(tfd_r(1.0, omega), 0.0), k);
    EXPECT_GE(fidelity(tfd, unitary), 1 - 1e-8) << "omega " << omega;
  }
}

TEST(Spectrum, ConfigValidation) {
  EXPECT_THROW(tfd_spectrum({1.0, 1.0, 1.0, 5, FrequencyGrid::Linear}), InvalidArgument);
  EXPECT_THROW(tfd_spectrum({1.0, 0.1, 1.0, 1, FrequencyGrid::Linear}), InvalidArgument);
  EXPECT_THROW(tfd_spectrum({-1.0, 0.1, 1.0, 5, FrequencyGrid::Linear}), DomainError);
  EXPECT_THROW(tfd_spectrum({1.0, 0.0, 1.0, 5, FrequencyGrid::Logarithmic}), DomainError);
}

TEST(FrequencyGrid, LinearEndpoints) {
  const auto g = frequency_grid({1.0, 1.0, 3.0, 5, FrequencyGrid::Linear});
  ASSERT_EQ(g.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(g[static_cast<std::size_t>(i)], 1.0 + 0.5 * i, 1e-15);
}
