#pragma once

#include "json.hpp"

#include "beetle/bas.hpp"
#include "beetle/swarm.hpp"

namespace beetle {

// Flat key-value JSON for the optimizer configs. Readers start from `base`,
// overwrite the keys present, and reject unknown keys or wrongly typed
// values with std::invalid_argument. Optional fields serialize as null.

nlohmann::json to_json(const BsoConfig& config);
nlohmann::json to_json(const PsoConfig& config);
nlohmann::json to_json(const BasConfig& config);

BsoConfig bso_config_from_json(const nlohmann::json& doc, BsoConfig base = {});
PsoConfig pso_config_from_json(const nlohmann::json& doc, PsoConfig base = {});
BasConfig bas_config_from_json(const nlohmann::json& doc, BasConfig base = {});

}  // namespace beetle
