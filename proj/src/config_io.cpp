#include "beetle/config_io.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace beetle {

namespace {

using nlohmann::json;
using Setter = std::function<void(const json&)>;

// Applies each key of doc through its setter; unknown keys are an error.
void apply(const json& doc, const std::map<std::string, Setter>& setters, const char* what) {
  if (!doc.is_object()) {
    throw std::invalid_argument(std::string(what) + " config must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument(std::string("unknown ") + what + " config key '" + key + "'");
    }
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string(what) + " config key '" + key +
                                  "' has the wrong type: " + e.what());
    }
  }
}

template <typename T>
Setter bind(T& field) {
  return [&field](const json& v) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw std::invalid_argument("expected a boolean, got " + v.dump());
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) {
        throw std::invalid_argument("expected a non-negative integer, got " + v.dump());
      }
    } else {
      if (!v.is_number()) throw std::invalid_argument("expected a number, got " + v.dump());
    }
    field = v.get<T>();
  };
}

Setter bind(std::optional<double>& field) {
  return [&field](const json& v) {
    if (v.is_null()) {
      field.reset();
    } else if (v.is_number()) {
      field = v.get<double>();
    } else {
      throw std::invalid_argument("expected a number or null, got " + v.dump());
    }
  };
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const char* schedule_name(StepSchedule s) {
  return s == StepSchedule::geometric ? "geometric" : "affine";
}

}  // namespace

json to_json(const BsoConfig& c) {
  return {
      {"population", c.population},   {"iterations", c.iterations},
      {"lambda", c.lambda},           {"a1", c.a1},
      {"a2", c.a2},                   {"omega_max", c.omega_max},
      {"omega_min", c.omega_min},     {"eta", c.eta},
      {"delta0", c.delta0},           {"c2_ratio", c.c2_ratio},
      {"velocity_fraction", c.velocity_fraction},
      {"v_max", optional_json(c.v_max)},
      {"v_min", optional_json(c.v_min)},
      {"componentwise_r", c.componentwise_r},
      {"record_positions", c.record_positions},
      {"seed", c.seed},
  };
}

json to_json(const PsoConfig& c) {
  return {
      {"population", c.population},   {"iterations", c.iterations},
      {"a1", c.a1},                   {"a2", c.a2},
      {"omega_max", c.omega_max},     {"omega_min", c.omega_min},
      {"velocity_fraction", c.velocity_fraction},
      {"v_max", optional_json(c.v_max)},
      {"v_min", optional_json(c.v_min)},
      {"componentwise_r", c.componentwise_r},
      {"record_positions", c.record_positions},
      {"seed", c.seed},
  };
}

json to_json(const BasConfig& c) {
  return {
      {"delta0", optional_json(c.delta0)},
      {"eta", c.eta},
      {"c2_ratio", c.c2_ratio},
      {"schedule", schedule_name(c.schedule)},
      {"c1", c.c1},
      {"delta_floor", c.delta_floor},
      {"iterations", c.max_iters},
      {"seed", c.seed},
  };
}

BsoConfig bso_config_from_json(const json& doc, BsoConfig c) {
  apply(doc,
        {
            {"population", bind(c.population)},
            {"iterations", bind(c.iterations)},
            {"lambda", bind(c.lambda)},
            {"a1", bind(c.a1)},
            {"a2", bind(c.a2)},
            {"omega_max", bind(c.omega_max)},
            {"omega_min", bind(c.omega_min)},
            {"eta", bind(c.eta)},
            {"delta0", bind(c.delta0)},
            {"c2_ratio", bind(c.c2_ratio)},
            {"velocity_fraction", bind(c.velocity_fraction)},
            {"v_max", bind(c.v_max)},
            {"v_min", bind(c.v_min)},
            {"componentwise_r", bind(c.componentwise_r)},
            {"record_positions", bind(c.record_positions)},
            {"seed", bind(c.seed)},
        },
        "bso");
  return c;
}

PsoConfig pso_config_from_json(const json& doc, PsoConfig c) {
  apply(doc,
        {
            {"population", bind(c.population)},
            {"iterations", bind(c.iterations)},
            {"a1", bind(c.a1)},
            {"a2", bind(c.a2)},
            {"omega_max", bind(c.omega_max)},
            {"omega_min", bind(c.omega_min)},
            {"velocity_fraction", bind(c.velocity_fraction)},
            {"v_max", bind(c.v_max)},
            {"v_min", bind(c.v_min)},
            {"componentwise_r", bind(c.componentwise_r)},
            {"record_positions", bind(c.record_positions)},
            {"seed", bind(c.seed)},
        },
        "pso");
  return c;
}

BasConfig bas_config_from_json(const json& doc, BasConfig c) {
  apply(doc,
        {
            {"delta0", bind(c.delta0)},
            {"eta", bind(c.eta)},
            {"c2_ratio", bind(c.c2_ratio)},
            {"schedule",
             [&c](const json& v) {
               const std::string name = v.get<std::string>();
               if (name == "geometric") {
                 c.schedule = StepSchedule::geometric;
               } else if (name == "affine") {
                 c.schedule = StepSchedule::affine;
               } else {
                 throw std::invalid_argument("schedule must be 'geometric' or 'affine', got '" +
                                             name + "'");
               }
             }},
            {"c1", bind(c.c1)},
            {"delta_floor", bind(c.delta_floor)},
            {"iterations", bind(c.max_iters)},
            {"seed", bind(c.seed)},
        },
        "bas");
  return c;
}

}  // namespace beetle
