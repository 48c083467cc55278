#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "beetle/problem.hpp"
#include "beetle/run_record.hpp"

namespace beetle {

/// Step-length recurrence for the single-beetle search.
enum class StepSchedule {
  geometric,  ///< delta' = eta * delta
  affine,     ///< delta' = c1 * delta + delta_floor (unbounded if c1 >= 1)
};

struct BasConfig {
  /// Initial step. Unset means 30% of the widest box side.
  std::optional<double> delta0;
  double eta = 0.95;
  /// Antenna spacing d = delta / c2_ratio.
  double c2_ratio = 5.0;
  StepSchedule schedule = StepSchedule::geometric;
  double c1 = 0.0;
  double delta_floor = 0.0;
  std::size_t max_iters = 100;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when a tunable is out of range.
  void validate() const;
  double initial_step(const SearchSpace& space) const;
};

struct BasState {
  std::vector<double> x;
  double delta = 0.0;
  double d = 0.0;
  std::size_t t = 0;
  std::vector<double> best_x;
  double best_f = 0.0;
  /// Set once the step schedule hit its positive floor.
  bool stalled = false;
};

/// Normalizes a raw direction to unit Euclidean length. Throws
/// std::invalid_argument on an all-zero input.
std::vector<double> normalize_direction(std::span<const double> raw);

/// Random unit direction: components i.i.d. uniform in [-1, 1), normalized.
/// An all-zero draw is redrawn.
std::vector<double> sample_direction(RandomStream& rng, std::size_t dim);

struct AntennaProbes {
  std::vector<double> right;
  std::vector<double> left;
};

/// right = x + (d/2) b, left = x - (d/2) b.
AntennaProbes antennae(std::span<const double> x, std::span<const double> b, double d);

/// Sign function with sign(0) = 0.
inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct ScheduleUpdate {
  double delta;
  double d;
  bool stalled;
};

/// Smallest step the schedule will return; anything at or below zero is
/// raised to this and reported as stalled.
inline constexpr double kMinStep = 1e-12;

ScheduleUpdate update_schedules(double delta, const BasConfig& config);

/// Evaluates x0 and builds the state at t = 0.
BasState initial_bas_state(std::vector<double> x0, double delta0, double c2_ratio,
                           const Problem& problem, RandomStream& rng);

/// One detection move along a given unit direction b:
/// x' = clamp(x - delta * b * sign(f(x_right) - f(x_left))).
/// Probe values count toward the best-so-far only when they lie in the box.
/// Schedules are left untouched; t is incremented.
BasState bas_step_along(BasState state, std::span<const double> b, const Problem& problem,
                        RandomStream& rng);

/// bas_step_along with a freshly sampled direction.
BasState bas_step(BasState state, const Problem& problem, RandomStream& rng);

/// Full run of config.max_iters steps from a uniform random start.
RunRecord run_bas(const Problem& problem, const BasConfig& config);
RunRecord run_bas(const Problem& problem, const BasConfig& config, std::uint64_t seed);

}  // namespace beetle
