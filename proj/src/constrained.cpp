#include "beetle/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace beetle::constrained {

using std::numbers::pi;

double Constraint::violation(double value) const {
  return std::max({0.0, lower - value, value - upper});
}

std::vector<double> ConstrainedProblem::constraint_values(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(constraints.size());
  for (const Constraint& c : constraints) out.push_back(c.g(x));
  return out;
}

double ConstrainedProblem::total_violation(std::span<const double> x) const {
  double total = 0.0;
  for (const Constraint& c : constraints) total += c.violation(c.g(x));
  return total;
}

bool ConstrainedProblem::feasible(std::span<const double> x, double tolerance) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const Constraint& c) { return c.violation(c.g(x)) <= tolerance; });
}

void PenaltyConfig::validate() const {
  if (!(weight > 0.0)) throw std::invalid_argument("penalty weight must be > 0");
  if (!(exponent >= 1.0)) throw std::invalid_argument("penalty exponent must be >= 1");
}

PressureVesselValue pressure_vessel(std::span<const double> x) {
  if (x.size() != 4) throw std::invalid_argument("pressure vessel takes 4 variables");
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  PressureVesselValue r;
  r.cost = 0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 +
           19.84 * x1 * x1 * x3;
  r.g[0] = -x1 + 0.0193 * x3;
  r.g[1] = -x2 + 0.00954 * x3;
  r.g[2] = -pi * x3 * x3 * x4 - 4.0 / 3.0 * pi * x3 * x3 * x3 + 1296000.0;
  r.g[3] = x4 - 240.0;
  return r;
}

HimmelblauValue himmelblau(std::span<const double> x) {
  if (x.size() != 5) throw std::invalid_argument("himmelblau takes 5 variables");
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
  HimmelblauValue r;
  r.value = 5.3578547 * x3 * x3 + 0.8356891 * x1 * x5 + 37.29329 * x1 - 40792.141;
  r.g[0] = 85.334407 + 0.0056858 * x2 * x5 + 0.00026 * x1 * x4 - 0.0022053 * x3 * x5;
  r.g[1] = 80.51249 + 0.0071317 * x2 * x5 + 0.0029955 * x1 * x2 + 0.0021813 * x3 * x3;
  r.g[2] = 9.300961 + 0.0047026 * x3 * x5 + 0.0012547 * x1 * x3 + 0.0019085 * x3 * x4;
  return r;
}

ConstrainedProblem pressure_vessel_problem() {
  constexpr double kPlate = 0.0625;
  ConstrainedProblem p{
      .id = "PV",
      .space = SearchSpace({kPlate, kPlate, 10.0, 10.0}, {99 * kPlate, 99 * kPlate, 200.0, 200.0}),
      .raw_objective = [](std::span<const double> x) { return pressure_vessel(x).cost; },
      .constraints = {},
      .kinds = {VariableKind::multiple_of(kPlate, 1, 99), VariableKind::multiple_of(kPlate, 1, 99),
                VariableKind::continuous(), VariableKind::continuous()},
  };
  for (std::size_t j = 0; j < 4; ++j) {
    p.constraints.push_back(Constraint{
        .name = "g" + std::to_string(j + 1),
        .g = [j](std::span<const double> x) { return pressure_vessel(x).g[j]; },
    });
  }
  return p;
}

ConstrainedProblem himmelblau_problem() {
  ConstrainedProblem p{
      .id = "HB",
      .space = SearchSpace({78.0, 33.0, 27.0, 27.0, 27.0}, {102.0, 45.0, 45.0, 45.0, 45.0}),
      .raw_objective = [](std::span<const double> x) { return himmelblau(x).value; },
      .constraints = {},
      .kinds = std::vector<VariableKind>(5, VariableKind::continuous()),
  };
  const std::array<std::pair<double, double>, 3> ranges = {{{0.0, 92.0}, {90.0, 110.0}, {20.0, 25.0}}};
  for (std::size_t j = 0; j < 3; ++j) {
    p.constraints.push_back(Constraint{
        .name = "g" + std::to_string(j + 1),
        .g = [j](std::span<const double> x) { return himmelblau(x).g[j]; },
        .lower = ranges[j].first,
        .upper = ranges[j].second,
    });
  }
  return p;
}

std::vector<double> snap_discrete(std::span<const double> x, std::span<const VariableKind> kinds) {
  if (x.size() != kinds.size()) throw std::invalid_argument("snap_discrete: length mismatch");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const VariableKind& k = kinds[i];
    if (!k.discrete) continue;
    const double m = std::clamp(std::round(out[i] / k.step), static_cast<double>(k.min_multiple),
                                static_cast<double>(k.max_multiple));
    out[i] = m * k.step;
  }
  return out;
}

double penalized_fitness(const ConstrainedProblem& problem, std::span<const double> x,
                         const PenaltyConfig& config) {
  double penalty = 0.0;
  for (const Constraint& c : problem.constraints) {
    const double v = c.violation(c.g(x));
    if (v > 0.0) penalty += std::pow(v, config.exponent);
  }
  const double raw = problem.raw_objective(x);
  return penalty > 0.0 ? raw + config.weight * penalty : raw;
}

Problem as_problem(const ConstrainedProblem& problem, PenaltyConfig config) {
  config.validate();
  auto shared = std::make_shared<const ConstrainedProblem>(problem);
  return Problem{
      .id = problem.id,
      .space = problem.space,
      .objective =
          [shared, config](std::span<const double> x, RandomStream&) {
            const std::vector<double> snapped = snap_discrete(x, shared->kinds);
            return penalized_fitness(*shared, snapped, config);
          },
      .known_fmin = std::nullopt,
      .stochastic = false,
      .clamp_probes = true,
  };
}

Problem as_tracking_problem(const ConstrainedProblem& problem, PenaltyConfig config,
                            std::shared_ptr<FeasibleBest> sink) {
  if (!sink) throw std::invalid_argument("as_tracking_problem: null sink");
  Problem p = as_problem(problem, config);
  auto shared = std::make_shared<const ConstrainedProblem>(problem);
  p.objective = [shared, config, sink](std::span<const double> x, RandomStream&) {
    std::vector<double> snapped = snap_discrete(x, shared->kinds);
    const double penalized = penalized_fitness(*shared, snapped, config);
    if (shared->feasible(snapped, kFeasibilityTolerance)) {
      const double raw = shared->raw_objective(snapped);
      if (raw < sink->raw) {
        sink->raw = raw;
        sink->x = std::move(snapped);
      }
    }
    return penalized;
  };
  return p;
}

}  // namespace beetle::constrained
