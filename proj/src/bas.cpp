#include "beetle/bas.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "beetle/config_io.hpp"

namespace beetle {

void BasConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("bas: eta must lie in (0, 1]");
  if (!(c2_ratio > 0.0)) throw std::invalid_argument("bas: c2_ratio must be > 0");
  if (delta0 && !(*delta0 > 0.0)) throw std::invalid_argument("bas: delta0 must be > 0");
  if (schedule == StepSchedule::affine && !(c1 >= 0.0 && delta_floor >= 0.0)) {
    throw std::invalid_argument("bas: affine schedule needs c1 >= 0 and delta_floor >= 0");
  }
}

double BasConfig::initial_step(const SearchSpace& space) const {
  return delta0.value_or(0.3 * space.max_width());
}

std::vector<double> normalize_direction(std::span<const double> raw) {
  double norm_sq = 0.0;
  for (double v : raw) norm_sq += v * v;
  if (!(norm_sq > 0.0)) throw std::invalid_argument("cannot normalize a zero direction");
  const double norm = std::sqrt(norm_sq);
  std::vector<double> b(raw.begin(), raw.end());
  for (double& v : b) v /= norm;
  return b;
}

std::vector<double> sample_direction(RandomStream& rng, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("sample_direction: dim must be >= 1");
  std::vector<double> raw(dim);
  for (;;) {
    bool nonzero = false;
    for (double& v : raw) {
      v = rng.uniform(-1.0, 1.0);
      nonzero = nonzero || v != 0.0;
    }
    if (nonzero) return normalize_direction(raw);
  }
}

AntennaProbes antennae(std::span<const double> x, std::span<const double> b, double d) {
  if (x.size() != b.size()) throw std::invalid_argument("antennae: x and b differ in length");
  AntennaProbes probes{std::vector<double>(x.size()), std::vector<double>(x.size())};
  const double half = d / 2.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probes.right[i] = x[i] + half * b[i];
    probes.left[i] = x[i] - half * b[i];
  }
  return probes;
}

ScheduleUpdate update_schedules(double delta, const BasConfig& config) {
  double next = config.schedule == StepSchedule::geometric
                    ? config.eta * delta
                    : config.c1 * delta + config.delta_floor;
  bool stalled = false;
  if (!(next > kMinStep)) {
    next = kMinStep;
    stalled = true;
  }
  return {next, next / config.c2_ratio, stalled};
}

BasState initial_bas_state(std::vector<double> x0, double delta0, double c2_ratio,
                           const Problem& problem, RandomStream& rng) {
  BasState s;
  s.best_f = problem(x0, rng);
  s.best_x = x0;
  s.x = std::move(x0);
  s.delta = delta0;
  s.d = delta0 / c2_ratio;
  return s;
}

BasState bas_step_along(BasState state, std::span<const double> b, const Problem& problem,
                        RandomStream& rng) {
  AntennaProbes probes = antennae(state.x, b, state.d);
  if (problem.clamp_probes) {
    clamp_in_place(probes.right, problem.space);
    clamp_in_place(probes.left, problem.space);
  }
  const double f_right = problem(probes.right, rng);
  const double f_left = problem(probes.left, rng);
  const double move = state.delta * sign_of(f_right - f_left);
  for (std::size_t i = 0; i < state.x.size(); ++i) state.x[i] -= move * b[i];
  clamp_in_place(state.x, problem.space);
  const double f_x = problem(state.x, rng);

  auto offer = [&](const std::vector<double>& point, double f) {
    if (f < state.best_f && problem.space.contains(point)) {
      state.best_f = f;
      state.best_x = point;
    }
  };
  offer(state.x, f_x);
  offer(probes.right, f_right);
  offer(probes.left, f_left);
  ++state.t;
  return state;
}

BasState bas_step(BasState state, const Problem& problem, RandomStream& rng) {
  const std::vector<double> b = sample_direction(rng, state.x.size());
  return bas_step_along(std::move(state), b, problem, rng);
}

RunRecord run_bas(const Problem& problem, const BasConfig& config, std::uint64_t seed) {
  BasConfig effective = config;
  effective.seed = seed;
  return run_bas(problem, effective);
}

RunRecord run_bas(const Problem& problem, const BasConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  RandomStream rng(config.seed);

  BasConfig effective = config;
  effective.delta0 = config.initial_step(problem.space);

  BasState state = initial_bas_state(uniform_in_space(rng, problem.space), *effective.delta0,
                                     config.c2_ratio, problem, rng);
  RunRecord record;
  record.algorithm = "bas";
  record.problem = problem.id;
  record.seed = config.seed;
  record.curve.reserve(config.max_iters + 1);
  record.curve.push_back(state.best_f);
  record.evaluations = 1;

  for (std::size_t t = 0; t < config.max_iters; ++t) {
    state = bas_step(std::move(state), problem, rng);
    record.evaluations += 3;
    const ScheduleUpdate next = update_schedules(state.delta, config);
    state.delta = next.delta;
    state.d = next.d;
    state.stalled = state.stalled || next.stalled;
    record.curve.push_back(state.best_f);
  }

  record.best_x = state.best_x;
  record.best_f = state.best_f;
  record.config = to_json(effective);
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace beetle
