#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "beetle/problem.hpp"

namespace beetle::constrained {

/// A variable is either continuous or restricted to step * {min_multiple..max_multiple}.
struct VariableKind {
  bool discrete = false;
  double step = 0.0;
  int min_multiple = 0;
  int max_multiple = 0;

  static VariableKind continuous() { return {}; }
  static VariableKind multiple_of(double step, int lo, int hi) { return {true, step, lo, hi}; }
};

/// Satisfied iff lower <= g(x) <= upper. The "g(x) <= 0" form uses
/// lower = -infinity, upper = 0.
struct Constraint {
  std::string name;
  std::function<double(std::span<const double>)> g;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = 0.0;

  /// max(0, lower - g, g - upper).
  double violation(double value) const;
};

struct ConstrainedProblem {
  std::string id;
  SearchSpace space;
  std::function<double(std::span<const double>)> raw_objective;
  std::vector<Constraint> constraints;
  std::vector<VariableKind> kinds;

  std::vector<double> constraint_values(std::span<const double> x) const;
  /// Sum of violations; 0 on the feasible set.
  double total_violation(std::span<const double> x) const;
  bool feasible(std::span<const double> x, double tolerance = 0.0) const;
};

/// Static exterior penalty: raw + weight * sum_j max(0, violation_j)^exponent.
struct PenaltyConfig {
  double weight = 1e6;
  double exponent = 2.0;

  /// weight > 0 and exponent >= 1. Tests may bypass this with weight = 0.
  void validate() const;
};

/// Absolute constraint slack accepted when reporting a point as feasible.
/// The penalty optimum sits a hair outside active constraints.
inline constexpr double kFeasibilityTolerance = 1e-6;

struct PressureVesselValue {
  double cost;
  std::array<double, 4> g;
};

/// Cost and g1..g4 of the pressure vessel design (feasible iff all g <= 0).
/// Evaluated as given; snap x1, x2 first.
PressureVesselValue pressure_vessel(std::span<const double> x);

struct HimmelblauValue {
  double value;
  std::array<double, 3> g;
};

/// Himmelblau's nonlinear problem; feasible iff 0 <= g1 <= 92,
/// 90 <= g2 <= 110, 20 <= g3 <= 25.
HimmelblauValue himmelblau(std::span<const double> x);

ConstrainedProblem pressure_vessel_problem();
ConstrainedProblem himmelblau_problem();

/// Discrete components rounded to the nearest allowed multiple (clamped to
/// the allowed range); continuous components untouched.
std::vector<double> snap_discrete(std::span<const double> x, std::span<const VariableKind> kinds);

/// raw(x) + weight * sum max(0, violation_j(x))^exponent, evaluated at x as
/// given (no snapping).
double penalized_fitness(const ConstrainedProblem& problem, std::span<const double> x,
                         const PenaltyConfig& config);

/// Optimizer-facing wrapper: snap, then penalized fitness. Antenna probes are
/// clamped to the box.
Problem as_problem(const ConstrainedProblem& problem, PenaltyConfig config = {});

/// Lowest raw objective among evaluated points that were feasible within
/// kFeasibilityTolerance. x is the snapped point.
struct FeasibleBest {
  std::vector<double> x;
  double raw = std::numeric_limits<double>::infinity();

  bool found() const { return !x.empty(); }
};

/// as_problem, plus every evaluation updates `sink`. The penalty optimum
/// usually sits just outside an active constraint, so the final best of a
/// run is often infeasible while nearby feasible points were visited. One
/// sink per run; it is not synchronized.
Problem as_tracking_problem(const ConstrainedProblem& problem, PenaltyConfig config,
                            std::shared_ptr<FeasibleBest> sink);

}  // namespace beetle::constrained
