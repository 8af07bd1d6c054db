#pragma once

// JSON encodings shared by the C API and the CLI.
//
// Complex numbers are [re, im] pairs. Amplitude tensors are flat arrays in the
// lexicographic basis order (mode 1 slowest) with an explicit "shape" field.

#include <json.hpp>

#include "squeezekit/constraints.hpp"
#include "squeezekit/fock.hpp"
#include "squeezekit/tfd.hpp"

namespace squeezekit {

inline constexpr const char* kSchemaVersion = "1.0";

nlohmann::json complex_to_json(Complex z);
/// Accepts [re, im] or a bare real number.
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const FockState& state);
/// Throws InvalidArgument on a malformed document.
FockState state_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const ConstraintSystem& system);
/// {"alphas": [...], "cutoff": K} with optional "num_modes" that must match.
/// A missing cutoff defaults to `default_cutoff`.
ConstraintSystem system_from_json(const nlohmann::json& j, int default_cutoff = 1);

nlohmann::json report_to_json(const KernelReport& report, bool include_basis);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json pairwise_to_json(const PairwiseChainReport& report);
nlohmann::json spectrum_row_to_json(const TfdSpectrumRow& row);

}  // namespace squeezekit
