#include "beetle/run_record.hpp"

#include <algorithm>
#include <bit>

namespace beetle {

namespace {

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) { return bit_equal(x, y); });
}

}  // namespace

bool same_outcome(const RunRecord& a, const RunRecord& b) {
  if (a.algorithm != b.algorithm || a.problem != b.problem || a.seed != b.seed) return false;
  if (!bit_equal(a.curve, b.curve) || !bit_equal(a.best_x, b.best_x)) return false;
  if (!bit_equal(a.best_f, b.best_f) || a.evaluations != b.evaluations) return false;
  if (a.config != b.config || a.positions.size() != b.positions.size()) return false;
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    if (!bit_equal(a.positions[i], b.positions[i])) return false;
  }
  return true;
}

nlohmann::json to_json(const RunRecord& record, bool include_curve) {
  nlohmann::json j = {
      {"algorithm", record.algorithm},
      {"problem", record.problem},
      {"seed", record.seed},
      {"iterations", record.curve.empty() ? 0 : record.curve.size() - 1},
      {"best_f", record.best_f},
      {"best_x", record.best_x},
      {"evaluations", record.evaluations},
      {"wall_time_s", record.wall_time_s},
      {"config", record.config},
  };
  if (include_curve) j["curve"] = record.curve;
  return j;
}

}  // namespace beetle
