#include "squeezekit/serialize.hpp"

#include <string>

#include "squeezekit/errors.hpp"

namespace squeezekit {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("JSON document lacks field '") + key + "'");
  return j.at(key);
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidArgument("complex value must be [re, im] or a number, got " + j.dump());
}

json state_to_json(const FockState& state) {
  json amps = json::array();
  for (const Complex& c : state.amplitudes()) amps.push_back(complex_to_json(c));
  return {
      {"schema_version", kSchemaVersion},
      {"kind", "fock_state"},
      {"num_modes", state.num_modes()},
      {"cutoff", state.cutoff()},
      {"shape", std::vector<int>(static_cast<std::size_t>(state.num_modes()), state.cutoff() + 1)},
      {"ordering", "lexicographic, mode 1 slowest"},
      {"norm", state.norm()},
      {"truncation_deficit", state.truncation_deficit()},
      {"amplitudes", std::move(amps)},
  };
}

FockState state_from_json(const json& j) {
  try {
    if (require_field(j, "kind") != "fock_state") throw InvalidArgument("document kind is not fock_state");
    if (require_field(j, "schema_version").get<std::string>().rfind("1.", 0) != 0) {
      throw InvalidArgument("unsupported schema_version " + j.at("schema_version").dump());
    }
    const int num_modes = require_field(j, "num_modes").get<int>();
    const int cutoff = require_field(j, "cutoff").get<int>();
    const auto shape = require_field(j, "shape").get<std::vector<int>>();
    if (shape != std::vector<int>(static_cast<std::size_t>(std::max(num_modes, 0)), cutoff + 1)) {
      throw InvalidArgument("shape does not match num_modes and cutoff");
    }
    std::vector<Complex> amps;
    for (const auto& c : require_field(j, "amplitudes")) amps.push_back(complex_from_json(c));
    FockState state(num_modes, cutoff, std::move(amps));
    if (j.contains("truncation_deficit")) state = state.with_truncation_deficit(j.at("truncation_deficit").get<double>());
    return state;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed state document: ") + e.what());
  }
}

json system_to_json(const ConstraintSystem& system) {
  json alphas = json::array();
  for (const Complex& a : system.alphas()) alphas.push_back(complex_to_json(a));
  return {{"num_modes", system.num_modes()}, {"alphas", std::move(alphas)}, {"cutoff", system.cutoff()}};
}

ConstraintSystem system_from_json(const json& j, int default_cutoff) {
  try {
    static const char* const known[] = {"num_modes", "alphas", "cutoff"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
        throw InvalidArgument("unknown key '" + key + "' in constraint system");
      }
    }
    std::vector<Complex> alphas;
    for (const auto& a : require_field(j, "alphas")) alphas.push_back(complex_from_json(a));
    if (j.contains("num_modes") && j.at("num_modes").get<std::size_t>() != alphas.size()) {
      throw InvalidArgument("num_modes does not match the number of alphas");
    }
    const int cutoff = j.contains("cutoff") ? j.at("cutoff").get<int>() : default_cutoff;
    return {std::move(alphas), cutoff};
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed constraint system: ") + e.what());
  }
}

json report_to_json(const KernelReport& report, bool include_basis) {
  json j = {
      {"cutoff", report.cutoff},
      {"singular_values", report.singular_values},
      {"sigma_max", report.sigma_max},
      {"sigma_min", report.sigma_min},
      {"kernel_dim", report.kernel_dim},
      {"tolerance", report.tolerance},
      {"threshold", report.threshold},
      {"num_blocks", report.num_blocks},
      {"method", report.method},
  };
  if (include_basis) {
    json basis = json::array();
    for (const auto& s : report.kernel_basis) basis.push_back(state_to_json(s));
    j["kernel_basis"] = std::move(basis);
  }
  return j;
}

json verdict_to_json(const Verdict& verdict) {
  return {
      {"kind", to_string(verdict.kind)},
      {"cutoffs", verdict.cutoffs},
      {"sigma_min", verdict.sigma_min},
      {"kernel_dims", verdict.kernel_dims},
      {"log_slope", verdict.log_slope},
      {"plateau_change", verdict.plateau_change},
      {"reason", verdict.reason},
  };
}

json pairwise_to_json(const PairwiseChainReport& report) {
  return {
      {"cutoff", report.cutoff},
      {"pair_residuals", report.pair_residuals},
      {"cyclic_residuals", report.cyclic_residuals},
      {"max_pair_residual", report.max_pair_residual},
      {"max_cyclic_residual", report.max_cyclic_residual},
      {"pair_tail_bound", report.pair_tail_bound},
  };
}

json spectrum_row_to_json(const TfdSpectrumRow& row) {
  return {
      {"omega", row.omega},
      {"alpha", row.alpha},
      {"r", row.r},
      {"mean_occupation", row.mean_occupation},
      {"thermal_residual", row.thermal_residual},
      {"cutoff", row.cutoff},
      {"cutoff_capped", row.cutoff_capped},
  };
}

}  // namespace squeezekit
