#include "beetle/problem.hpp"

#include <algorithm>

namespace beetle {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) {
    throw std::invalid_argument("search space must have dim >= 1");
  }
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("search space bounds differ in length: " +
                                std::to_string(lower_.size()) + " vs " +
                                std::to_string(upper_.size()));
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw std::invalid_argument("search space needs lower < upper on axis " +
                                  std::to_string(i));
    }
  }
}

SearchSpace SearchSpace::cube(std::size_t dim, double lower, double upper) {
  return SearchSpace(std::vector<double>(dim, lower), std::vector<double>(dim, upper));
}

double SearchSpace::max_width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) w = std::max(w, width(i));
  return w;
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

void clamp_in_place(std::span<double> x, const SearchSpace& space) {
  if (x.size() != space.dim()) {
    throw std::invalid_argument("clamp: point has dim " + std::to_string(x.size()) +
                                ", space has dim " + std::to_string(space.dim()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], space.lower(i), space.upper(i));
  }
}

std::vector<double> clamp_to_bounds(std::span<const double> x, const SearchSpace& space) {
  std::vector<double> out(x.begin(), x.end());
  clamp_in_place(out, space);
  return out;
}

std::vector<double> uniform_in_space(RandomStream& rng, const SearchSpace& space) {
  std::vector<double> out(space.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rng.uniform() * space.width(i) + space.lower(i);
  }
  return out;
}

double Problem::operator()(std::span<const double> x, RandomStream& rng) const {
  if (x.size() != space.dim()) {
    throw std::invalid_argument("problem " + id + " expects dim " +
                                std::to_string(space.dim()) + ", got " +
                                std::to_string(x.size()));
  }
  return objective(x, rng);
}

}  // namespace beetle
