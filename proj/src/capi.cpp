#include "squeezekit/squeezekit.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "squeezekit/closed_form.hpp"
#include "squeezekit/constraints.hpp"
#include "squeezekit/errors.hpp"
#include "squeezekit/fock.hpp"
#include "squeezekit/serialize.hpp"
#include "squeezekit/tfd.hpp"
#include "squeezekit/unitary.hpp"

struct sqk_state {
  squeezekit::FockState value;
};

namespace {

using namespace squeezekit;

thread_local std::string last_error;

sqk_status fail(sqk_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
sqk_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return SQK_OK;
  } catch (const InvalidArgument& e) {
    return fail(SQK_INVALID_ARGUMENT, e.what());
  } catch (const DomainError& e) {
    return fail(SQK_DOMAIN_ERROR, e.what());
  } catch (const NumericalError& e) {
    return fail(SQK_NUMERICAL_ERROR, e.what());
  } catch (const BudgetExceeded& e) {
    return fail(SQK_BUDGET_EXCEEDED, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SQK_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SQK_BUDGET_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return fail(SQK_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(SQK_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) throw InvalidArgument(std::string(name) + " must not be NULL");
}

Complex to_cpp(sqk_complex z) { return {z.re, z.im}; }

std::vector<Complex> to_cpp(const sqk_complex* values, std::size_t count) {
  if (count > 0) require(values, "complex array");
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_cpp(values[i]));
  return out;
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void emit(sqk_state** out, FockState state) {
  *out = new sqk_state{std::move(state)};
}

int single_cutoff(Complex alpha, int cutoff) { return cutoff > 0 ? cutoff : auto_cutoff(std::abs(alpha)); }

std::string scan_document(const ConstraintSystem& system, const int* cutoffs, std::size_t num_cutoffs,
                          double relative_tolerance, bool include_basis) {
  if (num_cutoffs > 0) require(cutoffs, "cutoffs");
  const std::vector<int> ks(cutoffs, cutoffs + num_cutoffs);
  KernelOptions options;
  if (relative_tolerance > 0.0) options.relative_tolerance = relative_tolerance;
  const auto reports = cutoff_scan(system, ks, options);
  const Verdict verdict = classify(reports, system);
  nlohmann::json doc;
  nlohmann::json sys = system_to_json(system);
  sys.erase("cutoff");
  doc["system"] = std::move(sys);
  doc["relative_tolerance"] = options.relative_tolerance;
  doc["reports"] = nlohmann::json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_to_json(r, include_basis));
  doc["verdict"] = verdict_to_json(verdict);
  return doc.dump();
}

}  // namespace

extern "C" {

const char* sqk_version(void) { return "1.0.0"; }
const char* sqk_schema_version(void) { return kSchemaVersion; }
const char* sqk_last_error(void) { return last_error.c_str(); }
void sqk_string_free(char* str) { std::free(str); }

sqk_status sqk_state_vacuum(int num_modes, int cutoff, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, new_vacuum(num_modes, cutoff));
  });
}

sqk_status sqk_state_from_amplitudes(int num_modes, int cutoff, const sqk_complex* amplitudes, size_t length,
                                     sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, FockState(num_modes, cutoff, to_cpp(amplitudes, length)));
  });
}

sqk_status sqk_state_smsv(sqk_complex alpha, int cutoff, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    const SqueezeParamAlpha a(to_cpp(alpha), SqueezeContext::SingleMode);
    emit(out, smsv_closed_form(a, single_cutoff(a.value(), cutoff)));
  });
}

sqk_status sqk_state_tmsv(sqk_complex alpha, int cutoff, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    const SqueezeParamAlpha a(to_cpp(alpha), SqueezeContext::TwoMode);
    emit(out, tmsv_closed_form(a, single_cutoff(a.value(), cutoff)));
  });
}

sqk_status sqk_state_exp_single(sqk_complex alpha, int cutoff, int normalize, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    const SqueezeParamAlpha a(to_cpp(alpha), SqueezeContext::SingleMode);
    emit(out, exp_quadratic_single(a, single_cutoff(a.value(), cutoff), normalize != 0));
  });
}

sqk_status sqk_state_exp_pair(sqk_complex alpha, int cutoff, int normalize, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    const SqueezeParamAlpha a(to_cpp(alpha), SqueezeContext::TwoMode);
    emit(out, exp_pair_coupling(a, single_cutoff(a.value(), cutoff), normalize != 0));
  });
}

sqk_status sqk_state_squeeze_single(double r, double theta, int cutoff, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, squeeze_single(SqueezeParamXi(r, theta), cutoff));
  });
}

sqk_status sqk_state_squeeze_two(double r, double theta, int cutoff, sqk_state** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, squeeze_two(SqueezeParamXi(r, theta), cutoff));
  });
}

sqk_status sqk_state_from_json(const char* json, sqk_state** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    emit(out, state_from_json(nlohmann::json::parse(json)));
  });
}

void sqk_state_free(sqk_state* state) { delete state; }

sqk_status sqk_state_shape(const sqk_state* state, int* num_modes, int* cutoff, size_t* dim) {
  return guarded([&] {
    require(state, "state");
    if (num_modes != nullptr) *num_modes = state->value.num_modes();
    if (cutoff != nullptr) *cutoff = state->value.cutoff();
    if (dim != nullptr) *dim = state->value.dim();
  });
}

sqk_status sqk_state_amplitudes(const sqk_state* state, sqk_complex* buffer, size_t length) {
  return guarded([&] {
    require(state, "state");
    require(buffer, "buffer");
    const auto amps = state->value.amplitudes();
    if (length < amps.size()) throw InvalidArgument("buffer holds fewer entries than the state dimension");
    for (std::size_t i = 0; i < amps.size(); ++i) buffer[i] = {amps[i].real(), amps[i].imag()};
  });
}

sqk_status sqk_state_norm(const sqk_state* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->value.norm();
  });
}

sqk_status sqk_state_truncation_deficit(const sqk_state* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->value.truncation_deficit();
  });
}

sqk_status sqk_state_to_json(const sqk_state* state, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = duplicate(state_to_json(state->value).dump());
  });
}

sqk_status sqk_fidelity(const sqk_state* lhs, const sqk_state* rhs, double* out) {
  return guarded([&] {
    require(lhs, "lhs");
    require(rhs, "rhs");
    require(out, "out");
    *out = fidelity(lhs->value, rhs->value);
  });
}

sqk_status sqk_mean_occupation(const sqk_state* state, int mode, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = mean_occupation(state->value, mode);
  });
}

sqk_status sqk_entanglement_entropy(const sqk_state* state, const int* keep_modes, size_t count, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    if (count > 0) require(keep_modes, "keep_modes");
    const std::vector<int> keep(keep_modes, keep_modes + count);
    *out = von_neumann_entropy(reduced_density(state->value, keep));
  });
}

sqk_status sqk_alpha_from_xi(double r, double theta, int two_mode, sqk_complex* out) {
  return guarded([&] {
    require(out, "out");
    const auto context = two_mode != 0 ? SqueezeContext::TwoMode : SqueezeContext::SingleMode;
    const Complex a = alpha_from_xi(SqueezeParamXi(r, theta), context).value();
    *out = {a.real(), a.imag()};
  });
}

sqk_status sqk_xi_from_alpha(sqk_complex alpha, int two_mode, double* r, double* theta) {
  return guarded([&] {
    require(r, "r");
    require(theta, "theta");
    const auto context = two_mode != 0 ? SqueezeContext::TwoMode : SqueezeContext::SingleMode;
    const SqueezeParamXi xi = xi_from_alpha(SqueezeParamAlpha(to_cpp(alpha), context));
    *r = xi.r();
    *theta = xi.theta();
  });
}

sqk_status sqk_auto_cutoff(double alpha_modulus, double epsilon, int* out) {
  return guarded([&] {
    require(out, "out");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    *out = auto_cutoff(alpha_modulus, epsilon);
  });
}

sqk_status sqk_auto_cutoff_for_r(double r, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = auto_cutoff_for_r(r);
  });
}

sqk_status sqk_double_factorial_ratio(int n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = double_factorial_ratio(n);
  });
}

sqk_status sqk_gen_fn_partial_sum(double x, int terms, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gen_fn_partial_sum(x, terms);
  });
}

sqk_status sqk_commutator_check_single(sqk_complex alpha, int cutoff, int window, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = commutator_check_single(SqueezeParamAlpha(to_cpp(alpha), SqueezeContext::SingleMode), cutoff, window);
  });
}

sqk_status sqk_bch_residual_two(double r, double theta, int cutoff, int window, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = bch_residual_two(SqueezeParamXi(r, theta), cutoff, window);
  });
}

sqk_status sqk_constraint_residuals(const sqk_complex* alphas, size_t num_modes, const sqk_state* state,
                                   double* out, size_t length) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    if (length < num_modes) throw InvalidArgument("output buffer shorter than num_modes");
    const ConstraintSystem system(to_cpp(alphas, num_modes), state->value.cutoff());
    const auto residuals = constraint_residuals(system, state->value);
    std::copy(residuals.begin(), residuals.end(), out);
  });
}

sqk_status sqk_diagonal_ansatz_residual(const sqk_complex* alphas, size_t num_modes, const sqk_complex* coeffs,
                                        size_t num_coeffs, int cutoff, double* max_residual) {
  return guarded([&] {
    require(max_residual, "max_residual");
    const auto a = to_cpp(alphas, num_modes);
    const auto c = to_cpp(coeffs, num_coeffs);
    *max_residual = diagonal_ansatz_residual(a, c, cutoff).max;
  });
}

sqk_status sqk_nogo_scan(const sqk_complex* alphas, size_t num_modes, const int* cutoffs, size_t num_cutoffs,
                         double relative_tolerance, int include_basis, char** out) {
  return guarded([&] {
    require(out, "out");
    const ConstraintSystem system(to_cpp(alphas, num_modes), 1);
    *out = duplicate(scan_document(system, cutoffs, num_cutoffs, relative_tolerance, include_basis != 0));
  });
}

sqk_status sqk_nogo_scan_json(const char* system_json, const int* cutoffs, size_t num_cutoffs,
                              double relative_tolerance, int include_basis, char** out) {
  return guarded([&] {
    require(system_json, "system_json");
    require(out, "out");
    const ConstraintSystem system = system_from_json(nlohmann::json::parse(system_json));
    *out = duplicate(scan_document(system, cutoffs, num_cutoffs, relative_tolerance, include_basis != 0));
  });
}

sqk_status sqk_pairwise_chain(const sqk_complex* alphas, size_t num_modes, int cutoff, char** out) {
  return guarded([&] {
    require(out, "out");
    const auto a = to_cpp(alphas, num_modes);
    *out = duplicate(pairwise_to_json(pairwise_chain_check(a, cutoff)).dump());
  });
}

sqk_status sqk_tfd_alpha(double beta, double omega, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = tfd_alpha(beta, omega);
  });
}

sqk_status sqk_tfd_r(double beta, double omega, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = tfd_r(beta, omega);
  });
}

sqk_status sqk_thermal_check_run(double beta, double omega, int cutoff, sqk_thermal_check* out) {
  return guarded([&] {
    require(out, "out");
    const ThermalCheck check = thermal_check(beta, omega, cutoff);
    *out = {check.population_residual, check.max_off_diagonal, check.mean_occupation, check.occupation_deviation};
  });
}

sqk_status sqk_tfd_spectrum(double beta, double omega_min, double omega_max, int num_points, int logarithmic,
                            sqk_tfd_row* rows, size_t capacity, size_t* count) {
  return guarded([&] {
    require(count, "count");
    const TfdConfig config{beta, omega_min, omega_max, num_points,
                           logarithmic != 0 ? FrequencyGrid::Logarithmic : FrequencyGrid::Linear};
    validate(config);
    *count = static_cast<std::size_t>(num_points);
    if (rows == nullptr) return;
    if (capacity < *count) throw InvalidArgument("row buffer holds fewer than num_points rows");
    const auto spectrum = tfd_spectrum(config);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      const auto& s = spectrum[i];
      rows[i] = {s.omega, s.alpha, s.r, s.mean_occupation, s.thermal_residual, s.cutoff, s.cutoff_capped ? 1 : 0};
    }
  });
}

}  // extern "C"
