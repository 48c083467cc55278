#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "beetle/random_stream.hpp"

namespace beetle {

/// Raised when a catalog lookup (problem, benchmark, algorithm) has no match.
class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Axis-aligned box [lower, upper] in R^dim. Immutable once built.
class SearchSpace {
 public:
  /// Throws std::invalid_argument unless dim >= 1 and lower[i] < upper[i].
  SearchSpace(std::vector<double> lower, std::vector<double> upper);

  /// Same interval on every axis.
  static SearchSpace cube(std::size_t dim, double lower, double upper);

  std::size_t dim() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double width(std::size_t i) const { return upper_[i] - lower_[i]; }
  double max_width() const;

  bool contains(std::span<const double> x) const;

  bool operator==(const SearchSpace&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Projects x onto the box. Components already inside are returned unchanged.
/// Throws std::invalid_argument on a dimension mismatch.
std::vector<double> clamp_to_bounds(std::span<const double> x, const SearchSpace& space);

/// In-place variant of clamp_to_bounds used on hot paths.
void clamp_in_place(std::span<double> x, const SearchSpace& space);

/// One point drawn uniformly from the box; consumes exactly space.dim() draws,
/// mapped as lower + u * (upper - lower).
std::vector<double> uniform_in_space(RandomStream& rng, const SearchSpace& space);

/// Fitness f(x). The stream argument is only consumed by stochastic problems.
using Objective = std::function<double(std::span<const double>, RandomStream&)>;

/// A minimization problem over a box.
struct Problem {
  std::string id;
  SearchSpace space;
  Objective objective;
  std::optional<double> known_fmin;
  /// Evaluation consumes the run's random stream (F7).
  bool stochastic = false;
  /// Antenna probes are projected into the box before evaluation. Set for
  /// problems whose objective is only meaningful in-box.
  bool clamp_probes = false;

  /// Checks the dimension, then evaluates.
  double operator()(std::span<const double> x, RandomStream& rng) const;
};

}  // namespace beetle
