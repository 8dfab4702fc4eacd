// Shared JSON state exchange format.
//   operators / densities: {"dim": n, "re": [[...]], "im": [[...]]}
//   pure states:           {"dim": n, "re": [...],   "im": [...]}

#pragma once

#include <string>

#include <json.hpp>

#include "spinqc/quantum_state.hpp"

namespace spinqc {

nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json matrix_to_json(const Mat& m);

PureState pure_state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);
Mat matrix_from_json(const nlohmann::json& j);

// Accepts either form: a pure state is promoted to its projector.
DensityMatrix load_state(const std::string& path);

}  // namespace spinqc
