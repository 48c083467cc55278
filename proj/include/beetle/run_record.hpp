#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace beetle {

/// Outcome of one optimizer run.
struct RunRecord {
  std::string algorithm;
  std::string problem;
  std::uint64_t seed = 0;
  /// Best-so-far fitness after iteration k; curve[0] is the initial state, so
  /// the length is iterations + 1.
  std::vector<double> curve;
  std::vector<double> best_x;
  double best_f = 0.0;
  std::size_t evaluations = 0;
  double wall_time_s = 0.0;
  /// Effective configuration, sufficient to reproduce the run.
  nlohmann::json config;
  /// Optional per-iteration snapshot of every agent position, row-major
  /// (agent-major, then coordinate). Empty unless position logging is on.
  std::vector<std::vector<double>> positions;
};

/// Equality on everything except wall-clock time, which is the only field
/// allowed to differ between two runs with the same seed.
bool same_outcome(const RunRecord& a, const RunRecord& b);

nlohmann::json to_json(const RunRecord& record, bool include_curve = false);

}  // namespace beetle
