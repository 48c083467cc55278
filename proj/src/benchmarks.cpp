#include "beetle/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beetle::bench {

namespace constants {

const std::array<std::array<double, 25>, 2> kFoxholesA = {{
    {-32, -16, 0, 16, 32, -32, -16, 0, 16, 32, -32, -16, 0,
     16,  32,  -32, -16, 0, 16, 32, -32, -16, 0, 16, 32},
    {-32, -32, -32, -32, -32, -16, -16, -16, -16, -16, 0,  0, 0,
     0,   0,   16,  16,  16,  16,  16,  32,  32,  32,  32, 32},
}};

const std::array<double, 11> kKowalikA = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                          0.0456, 0.0342, 0.0323, 0.0235, 0.0246};

// Reciprocals of {0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16}.
const std::array<double, 11> kKowalikB = {4.0,       2.0,       1.0,       0.5,
                                          0.25,      1.0 / 6.0, 0.125,     0.1,
                                          1.0 / 12,  1.0 / 14,  0.0625};

const std::array<double, 4> kHartmannC = {1.0, 1.2, 3.0, 3.2};

const std::array<std::array<double, 3>, 4> kHartmann3A = {{
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
    {3.0, 10.0, 30.0},
    {0.1, 10.0, 35.0},
}};

const std::array<std::array<double, 3>, 4> kHartmann3P = {{
    {0.3689, 0.1170, 0.2673},
    {0.4699, 0.4387, 0.7470},
    {0.1091, 0.8732, 0.5547},
    {0.03815, 0.5743, 0.8828},
}};

const std::array<std::array<double, 6>, 4> kHartmann6A = {{
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
}};

const std::array<std::array<double, 6>, 4> kHartmann6P = {{
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
}};

const std::array<std::array<double, 4>, 10> kShekelA = {{
    {4, 4, 4, 4},
    {1, 1, 1, 1},
    {8, 8, 8, 8},
    {6, 6, 6, 6},
    {3, 7, 3, 7},
    {2, 9, 2, 9},
    {5, 5, 3, 3},
    {8, 1, 8, 1},
    {6, 2, 6, 2},
    {7, 3.6, 7, 3.6},
}};

const std::array<double, 10> kShekelC = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

}  // namespace constants

namespace {

using std::numbers::pi;

constexpr std::array<BenchmarkSpec, kBenchmarkCount> kCatalog = {{
    {BenchmarkId::F1, "sphere", Family::unimodal, 30, -100, 100, 0.0, true, false},
    {BenchmarkId::F2, "schwefel_2_22", Family::unimodal, 30, -10, 10, 0.0, true, false},
    {BenchmarkId::F3, "schwefel_1_2", Family::unimodal, 30, -100, 100, 0.0, true, false},
    {BenchmarkId::F4, "schwefel_2_21", Family::unimodal, 30, -100, 100, 0.0, true, false},
    {BenchmarkId::F5, "rosenbrock", Family::unimodal, 30, -30, 30, 0.0, true, false},
    {BenchmarkId::F6, "step", Family::unimodal, 30, -100, 100, 0.0, true, false},
    {BenchmarkId::F7, "quartic_noise", Family::unimodal, 30, -1.28, 1.28, 0.0, true, true},
    {BenchmarkId::F8, "schwefel_2_26", Family::multimodal, 30, -500, 500, -418.9829 * 30, true,
     false},
    {BenchmarkId::F9, "rastrigin", Family::multimodal, 30, -5.12, 5.12, 0.0, true, false},
    {BenchmarkId::F10, "ackley", Family::multimodal, 30, -32, 32, 0.0, true, false},
    {BenchmarkId::F11, "griewank", Family::multimodal, 30, -600, 600, 0.0, true, false},
    {BenchmarkId::F12, "penalized_1", Family::multimodal, 30, -50, 50, 0.0, true, false},
    {BenchmarkId::F13, "penalized_2", Family::multimodal, 30, -50, 50, 0.0, true, false},
    {BenchmarkId::F14, "shekel_foxholes", Family::fixed_dimension, 2, -65, 65, 0.9980, false,
     false},
    {BenchmarkId::F15, "kowalik", Family::fixed_dimension, 4, -5, 5, 0.00030, false, false},
    {BenchmarkId::F16, "six_hump_camel", Family::fixed_dimension, 2, -5, 5, -1.0316, false,
     false},
    {BenchmarkId::F17, "branin", Family::fixed_dimension, 2, -5, 5, 0.398, false, false},
    {BenchmarkId::F18, "goldstein_price", Family::fixed_dimension, 2, -2, 2, 3.0, false, false},
    {BenchmarkId::F19, "hartmann_3", Family::fixed_dimension, 3, 1, 3, -3.86, false, false},
    {BenchmarkId::F20, "hartmann_6", Family::fixed_dimension, 6, 0, 1, -3.32, false, false},
    {BenchmarkId::F21, "shekel_5", Family::fixed_dimension, 4, 0, 10, -10.1532, false, false},
    {BenchmarkId::F22, "shekel_7", Family::fixed_dimension, 4, 0, 10, -10.4028, false, false},
    {BenchmarkId::F23, "shekel_10", Family::fixed_dimension, 4, 0, 10, -10.5363, false, false},
}};

double sq(double v) { return v * v; }

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double schwefel_2_22(std::span<const double> x) {
  double s = 0.0;
  double p = 1.0;
  for (double v : x) {
    s += std::abs(v);
    p *= std::abs(v);
  }
  return s + p;
}

double schwefel_1_2(std::span<const double> x) {
  double s = 0.0;
  double prefix = 0.0;
  for (double v : x) {
    prefix += v;
    s += prefix * prefix;
  }
  return s;
}

double schwefel_2_21(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
  }
  return s;
}

double step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += sq(std::floor(v + 0.5));
  return s;
}

double schwefel_2_26(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sum_sq = 0.0;
  double sum_cos = 0.0;
  for (double v : x) {
    sum_sq += v * v;
    sum_cos += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) - std::exp(sum_cos / n) + 20.0 +
         std::numbers::e;
}

double griewank(std::span<const double> x) {
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s / 4000.0 - p + 1.0;
}

double penalized_1(std::span<const double> x) {
  const std::size_t n = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  double s = 10.0 * sq(std::sin(pi * y(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s += sq(y(i) - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * y(i + 1))));
  }
  s += sq(y(n - 1) - 1.0);
  double u = 0.0;
  for (double v : x) u += penalty_u(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * s + u;
}

double penalized_2(std::span<const double> x) {
  const std::size_t n = x.size();
  double s = sq(std::sin(3.0 * pi * x[0]));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i + 1])));
  }
  s += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
  double u = 0.0;
  for (double v : x) u += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * s + u;
}

double shekel_foxholes(std::span<const double> x) {
  double s = 1.0 / 500.0;
  for (std::size_t j = 0; j < 25; ++j) {
    double inner = static_cast<double>(j + 1);
    for (std::size_t i = 0; i < 2; ++i) inner += std::pow(x[i] - constants::kFoxholesA[i][j], 6);
    s += 1.0 / inner;
  }
  return 1.0 / s;
}

double kowalik(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < 11; ++i) {
    const double b = constants::kKowalikB[i];
    const double model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
    s += sq(constants::kKowalikA[i] - model);
  }
  return s;
}

double six_hump_camel(std::span<const double> x) {
  const double a = x[0];
  const double b = x[1];
  return 4.0 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4.0 * b * b +
         4.0 * std::pow(b, 4);
}

double branin(std::span<const double> x) {
  const double a = x[0];
  const double b = x[1];
  return sq(b - 5.1 / (4.0 * pi * pi) * a * a + 5.0 / pi * a - 6.0) +
         10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(a) + 10.0;
}

double goldstein_price(std::span<const double> x) {
  const double a = x[0];
  const double b = x[1];
  const double t1 =
      1.0 + sq(a + b + 1.0) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
  const double t2 = 30.0 + sq(2.0 * a - 3.0 * b) *
                               (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b +
                                27.0 * b * b);
  return t1 * t2;
}

template <std::size_t D>
double hartmann(std::span<const double> x, const std::array<std::array<double, D>, 4>& a,
                const std::array<std::array<double, D>, 4>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < D; ++j) inner += a[i][j] * sq(x[j] - p[i][j]);
    s -= constants::kHartmannC[i] * std::exp(-inner);
  }
  return s;
}

double shekel(std::span<const double> x, std::size_t terms) {
  double s = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    double dist = 0.0;
    for (std::size_t j = 0; j < 4; ++j) dist += sq(x[j] - constants::kShekelA[i][j]);
    s -= 1.0 / (dist + constants::kShekelC[i]);
  }
  return s;
}

}  // namespace

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double quartic_noise_free(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * std::pow(x[i], 4);
  return s;
}

const BenchmarkSpec& spec(BenchmarkId id) {
  const auto index = static_cast<std::size_t>(id);
  if (index < 1 || index > kBenchmarkCount) {
    throw NotFound("unknown benchmark id " + std::to_string(index));
  }
  return kCatalog[index - 1];
}

std::span<const BenchmarkSpec> catalog() { return kCatalog; }

double fmin_at(BenchmarkId id, std::size_t dim) {
  if (id == BenchmarkId::F8) return -418.9829 * static_cast<double>(dim);
  return spec(id).fmin;
}

std::string to_string(BenchmarkId id) { return "F" + std::to_string(static_cast<int>(id)); }

std::optional<BenchmarkId> try_parse_id(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'F' && text[0] != 'f')) return std::nullopt;
  int value = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 99) return std::nullopt;
  }
  if (text[1] == '0' || value < 1 || value > static_cast<int>(kBenchmarkCount)) {
    return std::nullopt;
  }
  return static_cast<BenchmarkId>(value);
}

BenchmarkId parse_id(std::string_view text) {
  if (auto id = try_parse_id(text)) return *id;
  throw NotFound("unknown benchmark " + std::string(text));
}

double evaluate_unchecked(BenchmarkId id, std::span<const double> x, RandomStream* rng) {
  switch (id) {
    case BenchmarkId::F1: return sphere(x);
    case BenchmarkId::F2: return schwefel_2_22(x);
    case BenchmarkId::F3: return schwefel_1_2(x);
    case BenchmarkId::F4: return schwefel_2_21(x);
    case BenchmarkId::F5: return rosenbrock(x);
    case BenchmarkId::F6: return step(x);
    case BenchmarkId::F7:
      if (rng == nullptr) throw std::invalid_argument("F7 needs a random stream for its noise term");
      return quartic_noise_free(x) + rng->uniform();
    case BenchmarkId::F8: return schwefel_2_26(x);
    case BenchmarkId::F9: return rastrigin(x);
    case BenchmarkId::F10: return ackley(x);
    case BenchmarkId::F11: return griewank(x);
    case BenchmarkId::F12: return penalized_1(x);
    case BenchmarkId::F13: return penalized_2(x);
    case BenchmarkId::F14: return shekel_foxholes(x);
    case BenchmarkId::F15: return kowalik(x);
    case BenchmarkId::F16: return six_hump_camel(x);
    case BenchmarkId::F17: return branin(x);
    case BenchmarkId::F18: return goldstein_price(x);
    case BenchmarkId::F19: return hartmann(x, constants::kHartmann3A, constants::kHartmann3P);
    case BenchmarkId::F20: return hartmann(x, constants::kHartmann6A, constants::kHartmann6P);
    case BenchmarkId::F21: return shekel(x, 5);
    case BenchmarkId::F22: return shekel(x, 7);
    case BenchmarkId::F23: return shekel(x, 10);
  }
  throw NotFound("unknown benchmark id " + std::to_string(static_cast<int>(id)));
}

double evaluate(BenchmarkId id, std::span<const double> x, RandomStream* rng) {
  const BenchmarkSpec& s = spec(id);
  if (x.size() != s.dim) {
    throw std::invalid_argument(to_string(id) + " expects dim " + std::to_string(s.dim) +
                                ", got " + std::to_string(x.size()));
  }
  return evaluate_unchecked(id, x, rng);
}

Problem make_problem(BenchmarkId id, std::optional<std::size_t> dim) {
  const BenchmarkSpec& s = spec(id);
  const std::size_t n = dim.value_or(s.dim);
  if (n != s.dim && !s.scalable) {
    throw std::invalid_argument(to_string(id) + " has fixed dimension " + std::to_string(s.dim));
  }
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
  Problem p{
      .id = to_string(id),
      .space = SearchSpace::cube(n, s.lower, s.upper),
      .objective = [id](std::span<const double> x, RandomStream& rng) {
        return evaluate_unchecked(id, x, &rng);
      },
      .known_fmin = fmin_at(id, n),
      .stochastic = s.stochastic,
      .clamp_probes = false,
  };
  return p;
}

}  // namespace beetle::bench
