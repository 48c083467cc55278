#include "beetle/swarm.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "beetle/bas.hpp"
#include "beetle/config_io.hpp"

namespace beetle {

namespace {

void check_common(std::size_t population, double omega_min, double omega_max,
                  double velocity_fraction, std::optional<double> v_min,
                  std::optional<double> v_max, const char* who) {
  const std::string prefix = std::string(who) + ": ";
  if (population < 2) throw std::invalid_argument(prefix + "population must be >= 2");
  if (!(omega_min <= omega_max)) throw std::invalid_argument(prefix + "omega_min > omega_max");
  if (v_min.has_value() != v_max.has_value()) {
    throw std::invalid_argument(prefix + "v_min and v_max must be given together");
  }
  if (v_min && !(*v_min < *v_max)) throw std::invalid_argument(prefix + "v_min must be < v_max");
  if (!v_min && !(velocity_fraction > 0.0)) {
    throw std::invalid_argument(prefix + "velocity_fraction must be > 0");
  }
}

}  // namespace

void BsoConfig::validate() const {
  check_common(population, omega_min, omega_max, velocity_fraction, v_min, v_max, "bso");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("bso: lambda must lie in [0, 1]");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("bso: eta must lie in (0, 1]");
  if (!(delta0 >= 0.0)) throw std::invalid_argument("bso: delta0 must be >= 0");
  if (!(c2_ratio > 0.0)) throw std::invalid_argument("bso: c2_ratio must be > 0");
}

void PsoConfig::validate() const {
  check_common(population, omega_min, omega_max, velocity_fraction, v_min, v_max, "pso");
}

BsoConfig as_bso_config(const PsoConfig& pso) {
  BsoConfig c;
  c.population = pso.population;
  c.iterations = pso.iterations;
  c.lambda = 1.0;
  c.a1 = pso.a1;
  c.a2 = pso.a2;
  c.omega_max = pso.omega_max;
  c.omega_min = pso.omega_min;
  c.delta0 = 0.0;
  c.velocity_fraction = pso.velocity_fraction;
  c.v_max = pso.v_max;
  c.v_min = pso.v_min;
  c.componentwise_r = pso.componentwise_r;
  c.record_positions = pso.record_positions;
  c.seed = pso.seed;
  return c;
}

VelocityBounds VelocityBounds::for_space(const SearchSpace& space, double fraction,
                                         std::optional<double> v_min,
                                         std::optional<double> v_max) {
  VelocityBounds b{std::vector<double>(space.dim()), std::vector<double>(space.dim())};
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (v_min && v_max) {
      b.lower[i] = *v_min;
      b.upper[i] = *v_max;
    } else {
      b.upper[i] = fraction * space.width(i);
      b.lower[i] = -b.upper[i];
    }
  }
  return b;
}

double inertia_weight(std::size_t k, std::size_t K, double omega_min, double omega_max) {
  if (K == 0) return omega_max;
  return omega_max - (omega_max - omega_min) * static_cast<double>(k) / static_cast<double>(K);
}

std::vector<double> update_velocity(std::span<const double> V, std::span<const double> X,
                                    std::span<const double> P, std::span<const double> G,
                                    double omega, double a1, double a2,
                                    std::span<const double> r1, std::span<const double> r2,
                                    const VelocityBounds& bounds) {
  const std::size_t n = V.size();
  if (X.size() != n || P.size() != n || G.size() != n || bounds.lower.size() != n) {
    throw std::invalid_argument("update_velocity: length mismatch");
  }
  if ((r1.size() != 1 && r1.size() != n) || r2.size() != r1.size()) {
    throw std::invalid_argument("update_velocity: r1/r2 must have length 1 or dim");
  }
  const bool per_component = r1.size() == n && n != 1;
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u1 = per_component ? r1[s] : r1[0];
    const double u2 = per_component ? r2[s] : r2[0];
    const double v = omega * V[s] + a1 * u1 * (P[s] - X[s]) + a2 * u2 * (G[s] - X[s]);
    out[s] = std::clamp(v, bounds.lower[s], bounds.upper[s]);
  }
  return out;
}

std::vector<double> update_velocity(std::span<const double> V, std::span<const double> X,
                                    std::span<const double> P, std::span<const double> G,
                                    double omega, double a1, double a2, RandomStream& rng,
                                    const VelocityBounds& bounds, bool componentwise) {
  const std::size_t m = componentwise ? V.size() : 1;
  std::vector<double> r1(m);
  std::vector<double> r2(m);
  for (double& r : r1) r = rng.uniform();
  for (double& r : r2) r = rng.uniform();
  return update_velocity(V, X, P, G, omega, a1, a2, r1, r2, bounds);
}

std::vector<double> beetle_increment(std::span<const double> X, std::span<const double> V,
                                     double delta, double d, const Problem& problem,
                                     RandomStream& rng) {
  AntennaProbes probes = antennae(X, V, d);
  if (problem.clamp_probes) {
    clamp_in_place(probes.right, problem.space);
    clamp_in_place(probes.left, problem.space);
  }
  const double f_right = problem(probes.right, rng);
  const double f_left = problem(probes.left, rng);
  const double scale = -delta * sign_of(f_right - f_left);
  std::vector<double> xi(V.size());
  for (std::size_t s = 0; s < V.size(); ++s) xi[s] = scale * V[s];
  return xi;
}

std::vector<double> update_position(std::span<const double> X, std::span<const double> V_new,
                                    std::span<const double> xi, double lambda,
                                    const SearchSpace& space) {
  if (V_new.size() != X.size() || xi.size() != X.size()) {
    throw std::invalid_argument("update_position: length mismatch");
  }
  std::vector<double> out(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) {
    out[s] = X[s] + lambda * V_new[s] + (1.0 - lambda) * xi[s];
  }
  clamp_in_place(out, space);
  return out;
}

BeetleSwarm::BeetleSwarm(const Problem& problem, BsoConfig config)
    : problem_(problem),
      config_(std::move(config)),
      vbounds_(VelocityBounds::for_space(problem.space, config_.velocity_fraction, config_.v_min,
                                         config_.v_max)),
      rng_(config_.seed),
      last_omega_(config_.omega_max) {
  config_.validate();
  const std::size_t n = config_.population;
  const std::size_t dim = problem_.space.dim();
  state_.n = n;
  state_.dim = dim;
  state_.X.resize(n * dim);
  state_.V.resize(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> x = uniform_in_space(rng_, problem_.space);
    std::copy(x.begin(), x.end(), state_.row(state_.X, i).begin());
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto v = state_.row(state_.V, i);
    for (std::size_t s = 0; s < dim; ++s) v[s] = rng_.uniform(vbounds_.lower[s], vbounds_.upper[s]);
  }
  state_.P = state_.X;
  state_.Pf.resize(n);
  for (std::size_t i = 0; i < n; ++i) state_.Pf[i] = problem_(state_.row(state_.X, i), rng_);
  evaluations_ = n;
  state_.delta = config_.delta0;
  state_.d = state_.delta / config_.c2_ratio;
  refresh_global_best();
  if (config_.record_positions) positions_.push_back(state_.X);
}

void BeetleSwarm::refresh_global_best() {
  std::size_t best = 0;
  for (std::size_t i = 1; i < state_.n; ++i) {
    if (state_.Pf[i] < state_.Pf[best]) best = i;
  }
  state_.Gf = state_.Pf[best];
  const auto p = state_.row(state_.P, best);
  state_.G.assign(p.begin(), p.end());
}

void BeetleSwarm::step() {
  if (finished()) return;
  SwarmState& s = state_;
  const double omega = inertia_weight(s.k, config_.iterations, config_.omega_min, config_.omega_max);
  last_omega_ = omega;
  s.d = s.delta / config_.c2_ratio;
  const bool probing = s.delta > 0.0;

  std::vector<double> xi(s.dim, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto x = s.row(s.X, i);
    const auto v = s.row(s.V, i);
    if (probing) {
      xi = beetle_increment(x, v, s.delta, s.d, problem_, rng_);
      evaluations_ += 2;
    }
    const std::vector<double> v_new =
        update_velocity(v, x, s.row(s.P, i), s.G, omega, config_.a1, config_.a2, rng_, vbounds_,
                        config_.componentwise_r);
    const std::vector<double> x_new = update_position(x, v_new, xi, config_.lambda, problem_.space);
    std::copy(v_new.begin(), v_new.end(), v.begin());
    std::copy(x_new.begin(), x_new.end(), x.begin());
  }

  for (std::size_t i = 0; i < s.n; ++i) {
    const auto x = s.row(s.X, i);
    const double f = problem_(x, rng_);
    if (f < s.Pf[i]) {
      s.Pf[i] = f;
      std::copy(x.begin(), x.end(), s.row(s.P, i).begin());
    }
  }
  evaluations_ += s.n;
  refresh_global_best();
  assert(s.Gf == *std::min_element(s.Pf.begin(), s.Pf.end()));

  s.delta *= config_.eta;
  ++s.k;
  if (config_.record_positions) positions_.push_back(s.X);
}

RunRecord BeetleSwarm::run() {
  const auto started = std::chrono::steady_clock::now();
  RunRecord record;
  record.algorithm = "bso";
  record.problem = problem_.id;
  record.seed = config_.seed;
  record.curve.reserve(config_.iterations + 1);
  record.curve.push_back(state_.Gf);
  while (!finished()) {
    step();
    record.curve.push_back(state_.Gf);
  }
  record.best_x = state_.G;
  record.best_f = state_.Gf;
  record.evaluations = evaluations_;
  record.config = to_json(config_);
  record.positions = std::move(positions_);
  positions_.clear();
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

RunRecord run_bso(const Problem& problem, const BsoConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  BeetleSwarm swarm(problem, config);
  RunRecord record = swarm.run();
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

RunRecord run_pso(const Problem& problem, const PsoConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  BeetleSwarm swarm(problem, as_bso_config(config));
  RunRecord record = swarm.run();
  record.algorithm = "pso";
  record.config = to_json(config);
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace beetle
