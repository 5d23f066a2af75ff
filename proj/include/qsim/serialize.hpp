#pragma once

#include <json.hpp>

#include "qsim/state.hpp"

namespace qsim {

/// {"n": int, "re": [...], "im": [...]}
nlohmann::json state_to_json(const StateVector& v);

/// Inverse of state_to_json; validates length and normalisation.
StateVector state_from_json(const nlohmann::json& j);

}  // namespace qsim
