#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "beetle/problem.hpp"
#include "beetle/run_record.hpp"

namespace beetle {

/// Tunables of the beetle swarm. Only the inertia endpoints, population and
/// iteration budget have published values. The rest were tuned on the 30-D
/// sphere, step and Rastrigin functions.
struct BsoConfig {
  std::size_t population = 50;
  std::size_t iterations = 1000;
  /// Blend between the velocity move (lambda) and the antenna increment
  /// (1 - lambda). lambda = 1 is plain PSO.
  double lambda = 0.45;
  double a1 = 2.85;  ///< cognitive acceleration
  double a2 = 2.95;  ///< social acceleration
  double omega_max = 0.9;
  double omega_min = 0.4;
  /// Geometric contraction of the step factor, delta_k = eta^k * delta0.
  double eta = 0.995;
  /// Initial step factor. It scales the velocity in the antenna increment,
  /// so it is dimensionless. 0 disables the antenna search entirely.
  double delta0 = 5.0;
  /// Antenna spacing d = delta / c2_ratio.
  double c2_ratio = 6.5;
  /// Velocity clamp as a fraction of each box side, used unless v_min/v_max
  /// are given explicitly.
  double velocity_fraction = 0.045;
  std::optional<double> v_max;
  std::optional<double> v_min;
  /// Draw r1, r2 per component instead of once per beetle and iteration.
  bool componentwise_r = true;
  bool record_positions = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Plain global-best PSO settings; a subset of BsoConfig.
struct PsoConfig {
  std::size_t population = 50;
  std::size_t iterations = 1000;
  double a1 = 1.8;
  double a2 = 1.8;
  double omega_max = 0.9;
  double omega_min = 0.4;
  double velocity_fraction = 0.2;
  std::optional<double> v_max;
  std::optional<double> v_min;
  bool componentwise_r = true;
  bool record_positions = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// The swarm configuration that reproduces PSO: lambda = 1, delta0 = 0.
BsoConfig as_bso_config(const PsoConfig& pso);

/// Per-dimension velocity limits.
struct VelocityBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  /// Explicit v_min/v_max when set, otherwise +-fraction * (upper - lower).
  static VelocityBounds for_space(const SearchSpace& space, double fraction,
                                  std::optional<double> v_min, std::optional<double> v_max);
};

/// Swarm matrices are stored row-major, one row of length dim per beetle.
struct SwarmState {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> X;   ///< positions
  std::vector<double> V;   ///< velocities
  std::vector<double> P;   ///< personal-best positions
  std::vector<double> Pf;  ///< personal-best fitness
  std::vector<double> G;   ///< global-best position
  double Gf = 0.0;
  double delta = 0.0;
  double d = 0.0;
  std::size_t k = 0;

  std::span<const double> row(const std::vector<double>& m, std::size_t i) const {
    return std::span<const double>(m).subspan(i * dim, dim);
  }
  std::span<double> row(std::vector<double>& m, std::size_t i) const {
    return std::span<double>(m).subspan(i * dim, dim);
  }
};

/// Linearly decreasing inertia: omega_max - (omega_max - omega_min) * k / K,
/// evaluated in that order. K = 0 gives omega_max.
double inertia_weight(std::size_t k, std::size_t K, double omega_min, double omega_max);

/// V' = omega V + a1 r1 (P - X) + a2 r2 (G - X), then clamped per component.
/// r1 and r2 are either length 1 (one draw per beetle) or length dim.
std::vector<double> update_velocity(std::span<const double> V, std::span<const double> X,
                                    std::span<const double> P, std::span<const double> G,
                                    double omega, double a1, double a2,
                                    std::span<const double> r1, std::span<const double> r2,
                                    const VelocityBounds& bounds);

/// Draws r1 then r2 from rng (scalar unless componentwise) and delegates.
std::vector<double> update_velocity(std::span<const double> V, std::span<const double> X,
                                    std::span<const double> P, std::span<const double> G,
                                    double omega, double a1, double a2, RandomStream& rng,
                                    const VelocityBounds& bounds, bool componentwise = false);

/// Antenna increment: probes X +- V d/2 (the velocity plays the role of the
/// antenna direction) and returns xi = -delta V sign(f(right) - f(left)).
/// Probes are clamped only for problems flagged clamp_probes.
std::vector<double> beetle_increment(std::span<const double> X, std::span<const double> V,
                                     double delta, double d, const Problem& problem,
                                     RandomStream& rng);

/// X' = clamp(X + lambda V' + (1 - lambda) xi).
std::vector<double> update_position(std::span<const double> X, std::span<const double> V_new,
                                    std::span<const double> xi, double lambda,
                                    const SearchSpace& space);

/// Iteration-by-iteration beetle swarm. Construction initializes positions
/// and velocities uniformly (all positions first, then all velocities) and
/// evaluates the initial population.
class BeetleSwarm {
 public:
  BeetleSwarm(const Problem& problem, BsoConfig config);

  /// One iteration: inertia, antenna spacing, per-beetle increment, velocity
  /// and position updates, evaluation, best updates, step contraction.
  void step();

  bool finished() const { return state_.k >= config_.iterations; }
  const SwarmState& state() const { return state_; }
  const BsoConfig& config() const { return config_; }
  const VelocityBounds& velocity_bounds() const { return vbounds_; }
  std::size_t evaluations() const { return evaluations_; }
  /// Inertia weight used by the most recent step (omega_max before any step).
  double last_omega() const { return last_omega_; }

  /// Steps until finished and packages the result.
  RunRecord run();

 private:
  void refresh_global_best();

  const Problem& problem_;
  BsoConfig config_;
  VelocityBounds vbounds_;
  RandomStream rng_;
  SwarmState state_;
  std::size_t evaluations_ = 0;
  double last_omega_;
  std::vector<std::vector<double>> positions_;
};

RunRecord run_bso(const Problem& problem, const BsoConfig& config);

/// Runs the swarm engine with as_bso_config(config); antenna probes are
/// skipped (delta = 0), so the random draw sequence is pure PSO.
RunRecord run_pso(const Problem& problem, const PsoConfig& config);

}  // namespace beetle
