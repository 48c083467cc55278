#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "beetle/problem.hpp"

namespace beetle::bench {

/// The 23 classical test functions: F1-F7 unimodal, F8-F13 multimodal,
/// F14-F23 fixed-dimension multimodal.
enum class BenchmarkId {
  F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12,
  F13, F14, F15, F16, F17, F18, F19, F20, F21, F22, F23
};

inline constexpr std::size_t kBenchmarkCount = 23;

enum class Family { unimodal, multimodal, fixed_dimension };

struct BenchmarkSpec {
  BenchmarkId id;
  std::string_view name;
  Family family;
  std::size_t dim;
  double lower;
  double upper;
  /// Tabulated minimum at the default dimension.
  double fmin;
  /// F1-F13 accept a dimension override.
  bool scalable;
  bool stochastic;
};

const BenchmarkSpec& spec(BenchmarkId id);
std::span<const BenchmarkSpec> catalog();

/// Tabulated minimum at an arbitrary dimension; only F8 depends on it
/// (-418.9829 * dim).
double fmin_at(BenchmarkId id, std::size_t dim);

std::string to_string(BenchmarkId id);
/// Accepts "F7" or "f7". Throws NotFound otherwise.
BenchmarkId parse_id(std::string_view text);
std::optional<BenchmarkId> try_parse_id(std::string_view text);

/// f(x) at the tabulated dimension. Throws std::invalid_argument on a
/// dimension mismatch, or when id == F7 and no stream is supplied.
double evaluate(BenchmarkId id, std::span<const double> x, RandomStream* rng = nullptr);

/// Same formulas without the dimension check (scalable ids at any dim >= 1).
double evaluate_unchecked(BenchmarkId id, std::span<const double> x, RandomStream* rng);

/// Penalty term u(x_i, a, k, m) shared by F12 and F13.
double penalty_u(double x, double a, double k, double m);

/// F7 without its random[0,1) term.
double quartic_noise_free(std::span<const double> x);

/// Problem wrapper. dim overrides the tabulated dimension for F1-F13 only;
/// throws std::invalid_argument for fixed-dimension ids.
Problem make_problem(BenchmarkId id, std::optional<std::size_t> dim = std::nullopt);

namespace constants {
extern const std::array<std::array<double, 25>, 2> kFoxholesA;
extern const std::array<double, 11> kKowalikA;
extern const std::array<double, 11> kKowalikB;
extern const std::array<double, 4> kHartmannC;
extern const std::array<std::array<double, 3>, 4> kHartmann3A;
extern const std::array<std::array<double, 3>, 4> kHartmann3P;
extern const std::array<std::array<double, 6>, 4> kHartmann6A;
extern const std::array<std::array<double, 6>, 4> kHartmann6P;
extern const std::array<std::array<double, 4>, 10> kShekelA;
extern const std::array<double, 10> kShekelC;
}  // namespace constants

}  // namespace beetle::bench
