// Exercises the shared library through the C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "squeezekit/squeezekit.h"

namespace {

struct StateDeleter {
  void operator()(sqk_state* s) const { sqk_state_free(s); }
};
using StatePtr = std::unique_ptr<sqk_state, StateDeleter>;

struct StringDeleter {
  void operator()(char* s) const { sqk_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

StatePtr make_smsv(double re, double im, int cutoff) {
  sqk_state* s = nullptr;
  EXPECT_EQ(sqk_state_smsv({re, im}, cutoff, &s), SQK_OK) << sqk_last_error();
  return StatePtr(s);
}

std::vector<sqk_complex> amplitudes(const sqk_state* s) {
  size_t dim = 0;
  EXPECT_EQ(sqk_state_shape(s, nullptr, nullptr, &dim), SQK_OK);
  std::vector<sqk_complex> out(dim);
  EXPECT_EQ(sqk_state_amplitudes(s, out.data(), out.size()), SQK_OK);
  return out;
}

bool contains(const char* text, const char* needle) { return std::strstr(text, needle) != nullptr; }

}  // namespace

TEST(CApi, Versions) {
  EXPECT_STREQ(sqk_version(), "1.0.0");
  EXPECT_STREQ(sqk_schema_version(), "1.0");
}

TEST(CApi, VacuumShape) {
  sqk_state* raw = nullptr;
  ASSERT_EQ(sqk_state_vacuum(2, 3, &raw), SQK_OK);
  StatePtr s(raw);
  int n = 0, k = 0;
  size_t dim = 0;
  ASSERT_EQ(sqk_state_shape(s.get(), &n, &k, &dim), SQK_OK);
  EXPECT_EQ(n, 2);
  EXPECT_EQ(k, 3);
  EXPECT_EQ(dim, 16u);
  const auto a = amplitudes(s.get());
  EXPECT_EQ(a[0].re, 1.0);
  for (size_t i = 1; i < a.size(); ++i) EXPECT_EQ(std::hypot(a[i].re, a[i].im), 0.0);
}

TEST(CApi, SmsvValues) {
  StatePtr s = make_smsv(0.5, 0.0, 60);
  const auto a = amplitudes(s.get());
  EXPECT_NEAR(a[0].re, 0.9306048591020996, 1e-12);
  EXPECT_NEAR(a[2].re, 0.5 * std::sqrt(0.5) * 0.9306048591020996, 1e-12);
  EXPECT_EQ(a[1].re, 0.0);
  double n = 0.0;
  ASSERT_EQ(sqk_mean_occupation(s.get(), 1, &n), SQK_OK);
  EXPECT_NEAR(n, 1.0 / 3.0, 1e-12);
}

TEST(CApi, AutoCutoffWhenNonPositive) {
  StatePtr s = make_smsv(0.5, 0.0, 0);
  int k = 0;
  ASSERT_EQ(sqk_state_shape(s.get(), nullptr, &k, nullptr), SQK_OK);
  int expected = 0;
  ASSERT_EQ(sqk_auto_cutoff(0.5, 1e-12, &expected), SQK_OK);
  EXPECT_EQ(k, expected);
  EXPECT_EQ(k % 2, 0);
}

TEST(CApi, DomainErrorForUnitAlpha) {
  sqk_state* s = nullptr;
  EXPECT_EQ(sqk_state_smsv({1.0, 0.0}, 10, &s), SQK_DOMAIN_ERROR);
  EXPECT_EQ(s, nullptr);
  EXPECT_GT(std::strlen(sqk_last_error()), 0u);
}

TEST(CApi, NullOutputIsInvalidArgument) {
  EXPECT_EQ(sqk_state_vacuum(1, 3, nullptr), SQK_INVALID_ARGUMENT);
  EXPECT_TRUE(contains(sqk_last_error(), "NULL"));
  double x = 0.0;
  EXPECT_EQ(sqk_fidelity(nullptr, nullptr, &x), SQK_INVALID_ARGUMENT);
  sqk_state_free(nullptr);
  sqk_string_free(nullptr);
}

TEST(CApi, LastErrorClearedOnSuccess) {
  EXPECT_NE(sqk_state_vacuum(0, 3, nullptr), SQK_OK);
  sqk_state* raw = nullptr;
  ASSERT_EQ(sqk_state_vacuum(1, 3, &raw), SQK_OK);
  StatePtr s(raw);
  EXPECT_STREQ(sqk_last_error(), "");
}

TEST(CApi, BufferTooSmall) {
  StatePtr s = make_smsv(0.3, 0.0, 10);
  std::vector<sqk_complex> small(3);
  EXPECT_EQ(sqk_state_amplitudes(s.get(), small.data(), small.size()), SQK_INVALID_ARGUMENT);
}

TEST(CApi, FromAmplitudesChecksLength) {
  const std::vector<sqk_complex> amps{{0.6, 0.0}, {0.0, 0.8}};
  sqk_state* raw = nullptr;
  EXPECT_EQ(sqk_state_from_amplitudes(1, 2, amps.data(), amps.size(), &raw), SQK_INVALID_ARGUMENT);
  ASSERT_EQ(sqk_state_from_amplitudes(1, 1, amps.data(), amps.size(), &raw), SQK_OK);
  StatePtr s(raw);
  double norm = 0.0;
  ASSERT_EQ(sqk_state_norm(s.get(), &norm), SQK_OK);
  EXPECT_NEAR(norm, 1.0, 1e-15);
}

TEST(CApi, JsonRoundTripIsExact) {
  sqk_state* raw = nullptr;
  ASSERT_EQ(sqk_state_squeeze_two(0.4, 1.0, 24, &raw), SQK_OK) << sqk_last_error();
  StatePtr s(raw);
  char* text = nullptr;
  ASSERT_EQ(sqk_state_to_json(s.get(), &text), SQK_OK);
  StringPtr json(text);
  EXPECT_TRUE(contains(json.get(), "\"schema_version\""));
  sqk_state* back_raw = nullptr;
  ASSERT_EQ(sqk_state_from_json(json.get(), &back_raw), SQK_OK) << sqk_last_error();
  StatePtr back(back_raw);
  const auto a = amplitudes(s.get());
  const auto b = amplitudes(back.get());
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].re, b[i].re);
    EXPECT_EQ(a[i].im, b[i].im);
  }
  double da = 0.0, db = 0.0;
  ASSERT_EQ(sqk_state_truncation_deficit(s.get(), &da), SQK_OK);
  ASSERT_EQ(sqk_state_truncation_deficit(back.get(), &db), SQK_OK);
  EXPECT_EQ(da, db);
}

TEST(CApi, MalformedJson) {
  sqk_state* s = nullptr;
  EXPECT_EQ(sqk_state_from_json("{not json", &s), SQK_INVALID_ARGUMENT);
  EXPECT_EQ(sqk_state_from_json("{\"kind\": \"fock_state\"}", &s), SQK_INVALID_ARGUMENT);
  EXPECT_EQ(s, nullptr);
}

TEST(CApi, UnitaryMatchesExpForm) {
  sqk_state* u = nullptr;
  ASSERT_EQ(sqk_state_squeeze_single(0.5, 1.0, 0, &u), SQK_OK) << sqk_last_error();
  StatePtr su(u);
  int k = 0;
  ASSERT_EQ(sqk_state_shape(su.get(), nullptr, &k, nullptr), SQK_OK);
  sqk_complex alpha{};
  ASSERT_EQ(sqk_alpha_from_xi(0.5, 1.0, 0, &alpha), SQK_OK);
  EXPECT_NEAR(alpha.re, -std::tanh(0.5) * std::cos(1.0), 1e-15);
  sqk_state* e = nullptr;
  ASSERT_EQ(sqk_state_exp_single(alpha, k, 1, &e), SQK_OK);
  StatePtr se(e);
  double f = 0.0;
  ASSERT_EQ(sqk_fidelity(su.get(), se.get(), &f), SQK_OK);
  EXPECT_GE(f, 1 - 1e-8);
}

TEST(CApi, XiAlphaRoundTrip) {
  double r = 0.0, theta = 0.0;
  ASSERT_EQ(sqk_xi_from_alpha({0.0, 0.5}, 1, &r, &theta), SQK_OK);
  EXPECT_NEAR(std::tanh(r), 0.5, 1e-15);
  EXPECT_NEAR(theta, std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(sqk_xi_from_alpha({1.0, 0.0}, 1, &r, &theta), SQK_DOMAIN_ERROR);
}

TEST(CApi, TmsvEntropy) {
  sqk_state* raw = nullptr;
  ASSERT_EQ(sqk_state_tmsv({0.5, 0.0}, 0, &raw), SQK_OK);
  StatePtr s(raw);
  const int keep = 1;
  double entropy = 0.0;
  ASSERT_EQ(sqk_entanglement_entropy(s.get(), &keep, 1, &entropy), SQK_OK);
  // Thermal entropy with occupation n = 1/3.
  const double n = 1.0 / 3.0;
  EXPECT_NEAR(entropy, (n + 1) * std::log(n + 1) - n * std::log(n), 1e-10);
}

TEST(CApi, IdentityChecks) {
  double x = 0.0;
  ASSERT_EQ(sqk_double_factorial_ratio(4, &x), SQK_OK);
  EXPECT_NEAR(x, 105.0 / 384.0, 1e-15);
  ASSERT_EQ(sqk_gen_fn_partial_sum(0.25, 60, &x), SQK_OK);
  EXPECT_NEAR(x, 1 / std::sqrt(0.75), 1e-7);
  ASSERT_EQ(sqk_commutator_check_single({0.5, 0.0}, 60, 20, &x), SQK_OK);
  EXPECT_LE(x, 1e-9);
  ASSERT_EQ(sqk_bch_residual_two(0.1, 0.0, 24, 10, &x), SQK_OK);
  EXPECT_LE(x, 1e-9);
  EXPECT_EQ(sqk_gen_fn_partial_sum(1.5, 10, &x), SQK_DOMAIN_ERROR);
}

TEST(CApi, ConstraintResiduals) {
  StatePtr s = make_smsv(0.5, 0.0, 40);
  const sqk_complex alpha{0.5, 0.0};
  double res = 1.0;
  ASSERT_EQ(sqk_constraint_residuals(&alpha, 1, s.get(), &res, 1), SQK_OK);
  EXPECT_LE(res, 1e-5);
  const sqk_complex pair[2] = {{0.5, 0.0}, {0.5, 0.0}};
  double two[2];
  EXPECT_EQ(sqk_constraint_residuals(pair, 2, s.get(), two, 2), SQK_INVALID_ARGUMENT);
  EXPECT_EQ(sqk_constraint_residuals(&alpha, 1, s.get(), nullptr, 0), SQK_INVALID_ARGUMENT);
}

TEST(CApi, DiagonalAnsatzVacuumForZeroAlphas) {
  const sqk_complex alphas[3] = {};
  const sqk_complex coeffs[4] = {{1.0, 0.0}};
  double max = 1.0;
  ASSERT_EQ(sqk_diagonal_ansatz_residual(alphas, 3, coeffs, 4, 3, &max), SQK_OK);
  EXPECT_EQ(max, 0.0);
}

TEST(CApi, NogoScanJson) {
  const sqk_complex alphas[3] = {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}};
  const int cutoffs[3] = {4, 5, 6};
  char* text = nullptr;
  ASSERT_EQ(sqk_nogo_scan(alphas, 3, cutoffs, 3, 0.0, 0, &text), SQK_OK) << sqk_last_error();
  StringPtr json(text);
  EXPECT_TRUE(contains(json.get(), "\"NoSolution\""));
  EXPECT_TRUE(contains(json.get(), "\"reports\""));
}

TEST(CApi, NogoScanFromSystemJson) {
  const int cutoffs[3] = {10, 16, 22};
  char* text = nullptr;
  ASSERT_EQ(sqk_nogo_scan_json(R"({"alphas": [[0.5, 0.0], [0.5, 0.0]], "num_modes": 2})", cutoffs, 3, 0.0, 1, &text),
            SQK_OK)
      << sqk_last_error();
  StringPtr json(text);
  EXPECT_TRUE(contains(json.get(), "\"UniqueSqueezedState\""));
  EXPECT_TRUE(contains(json.get(), "\"kernel_basis\""));
}

TEST(CApi, NogoScanRejectsBadInput) {
  const sqk_complex alphas[3] = {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}};
  const int two_cutoffs[2] = {4, 5};
  const int unsorted[3] = {5, 4, 6};
  char* text = nullptr;
  EXPECT_EQ(sqk_nogo_scan(alphas, 3, two_cutoffs, 2, 0.0, 0, &text), SQK_INVALID_ARGUMENT);
  EXPECT_EQ(sqk_nogo_scan(alphas, 3, unsorted, 3, 0.0, 0, &text), SQK_INVALID_ARGUMENT);
  EXPECT_EQ(sqk_nogo_scan_json(R"({"alphas": [[0.5, 0.0]], "num_modes": 1, "extra": 1})", unsorted, 3, 0.0, 0,
                               &text),
            SQK_INVALID_ARGUMENT);
  EXPECT_EQ(text, nullptr);
}

TEST(CApi, PairwiseChain) {
  const sqk_complex alphas[4] = {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}};
  char* text = nullptr;
  ASSERT_EQ(sqk_pairwise_chain(alphas, 4, 16, &text), SQK_OK) << sqk_last_error();
  StringPtr json(text);
  EXPECT_TRUE(contains(json.get(), "\"cyclic_residuals\""));
  EXPECT_EQ(sqk_pairwise_chain(alphas, 3, 16, &text), SQK_INVALID_ARGUMENT);
}

TEST(CApi, TfdValues) {
  double alpha = 0.0, r = 0.0;
  ASSERT_EQ(sqk_tfd_alpha(2 * std::log(2.0), 1.0, &alpha), SQK_OK);
  EXPECT_NEAR(alpha, 0.5, 1e-15);
  ASSERT_EQ(sqk_tfd_r(2 * std::log(2.0), 1.0, &r), SQK_OK);
  EXPECT_NEAR(std::tanh(r), 0.5, 1e-15);
  EXPECT_EQ(sqk_tfd_alpha(-1.0, 1.0, &alpha), SQK_DOMAIN_ERROR);
  sqk_thermal_check check{};
  ASSERT_EQ(sqk_thermal_check_run(2 * std::log(3.0), 1.0, 40, &check), SQK_OK);
  EXPECT_NEAR(check.mean_occupation, 1.0 / 8.0, 1e-12);
  EXPECT_LE(check.population_residual, 1e-8);
}

TEST(CApi, TfdSpectrumCountAndCapacity) {
  size_t count = 0;
  ASSERT_EQ(sqk_tfd_spectrum(1.0, 0.1, 10.0, 12, 1, nullptr, 0, &count), SQK_OK);
  EXPECT_EQ(count, 12u);
  std::vector<sqk_tfd_row> rows(count);
  EXPECT_EQ(sqk_tfd_spectrum(1.0, 0.1, 10.0, 12, 1, rows.data(), 5, &count), SQK_INVALID_ARGUMENT);
  ASSERT_EQ(sqk_tfd_spectrum(1.0, 0.1, 10.0, 12, 1, rows.data(), rows.size(), &count), SQK_OK);
  EXPECT_NEAR(rows.front().omega, 0.1, 1e-15);
  EXPECT_NEAR(rows.back().omega, 10.0, 1e-12);
  for (size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].mean_occupation, rows[i - 1].mean_occupation);
  // beta omega = 0.1 needs more than the 200-level cap.
  EXPECT_EQ(rows.front().cutoff_capped, 1);
  EXPECT_EQ(rows.front().cutoff, 200);
  for (const auto& row : rows) {
    if (row.cutoff_capped) continue;
    EXPECT_NEAR(row.mean_occupation, 1 / std::expm1(row.omega), 1e-10);
    EXPECT_LE(row.thermal_residual, 1e-8);
  }
  EXPECT_EQ(rows.back().cutoff_capped, 0);
  EXPECT_EQ(sqk_tfd_spectrum(1.0, 10.0, 0.1, 12, 1, nullptr, 0, &count), SQK_INVALID_ARGUMENT);
}

TEST(CApi, AutoCutoffs) {
  int k = 0;
  ASSERT_EQ(sqk_auto_cutoff_for_r(0.5, &k), SQK_OK);
  EXPECT_LT(std::pow(std::tanh(0.5), k), 1e-12);
  EXPECT_EQ(sqk_auto_cutoff(1.0, 1e-12, &k), SQK_DOMAIN_ERROR);
}
