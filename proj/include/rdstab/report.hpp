#pragma once

#include <json.hpp>

#include "rdstab/analysis.hpp"
#include "rdstab/bounds.hpp"
#include "rdstab/lyapunov.hpp"
#include "rdstab/model.hpp"

namespace rdstab {

// JSON projections with stable field names; consumed by the CLI and tests.
nlohmann::json to_json(const ConditionEntry& entry);
nlohmann::json to_json(const HypothesisReport& rep);
nlohmann::json to_json(const EquilibriumReport& rep);
nlohmann::json to_json(const TuringReport& rep);
nlohmann::json to_json(const BoundsReport& rep);

}  // namespace rdstab
