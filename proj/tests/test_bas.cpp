#include <gtest/gtest.h>

#include <cmath>

#include "beetle/bas.hpp"
#include "beetle/config_io.hpp"

using namespace beetle;

namespace {

Problem one_d(std::string id, double (*f)(double), double lo = -10, double hi = 10) {
  return Problem{std::move(id), SearchSpace::cube(1, lo, hi),
                 [f](std::span<const double> x, RandomStream&) { return f(x[0]); }};
}

Problem sphere(std::size_t dim, double lo, double hi) {
  return Problem{"sphere", SearchSpace::cube(dim, lo, hi), [](std::span<const double> x, RandomStream&) {
                   double s = 0;
                   for (double v : x) s += v * v;
                   return s;
                 }};
}

BasState state_at(std::vector<double> x, double delta, double d, double f) {
  BasState s;
  s.best_x = x;
  s.x = std::move(x);
  s.delta = delta;
  s.d = d;
  s.best_f = f;
  return s;
}

}  // namespace

TEST(Direction, Normalization) {
  EXPECT_EQ(normalize_direction(std::vector<double>{-0.3}), (std::vector<double>{-1.0}));
  const auto b = normalize_direction(std::vector<double>{3, 4});
  EXPECT_DOUBLE_EQ(b[0], 0.6);
  EXPECT_DOUBLE_EQ(b[1], 0.8);
  EXPECT_THROW(normalize_direction(std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(Direction, UnitNormForAnySeed) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomStream rng(seed);
    const std::size_t dim = 1 + seed % 40;
    const auto b = sample_direction(rng, dim);
    double n = 0;
    for (double v : b) n += v * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-12);
  }
  RandomStream rng(1);
  EXPECT_THROW(sample_direction(rng, 0), std::invalid_argument);
}

TEST(Direction, ComponentsSymmetric) {
  RandomStream rng(77);
  double mean = 0;
  int positive = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = sample_direction(rng, 3)[0];
    mean += v;
    positive += v > 0;
  }
  EXPECT_NEAR(mean / n, 0.0, 0.02);
  EXPECT_NEAR(double(positive) / n, 0.5, 0.02);
}

TEST(Antennae, Examples) {
  auto p = antennae(std::vector<double>{0, 0}, std::vector<double>{1, 0}, 2);
  EXPECT_EQ(p.right, (std::vector<double>{1, 0}));
  EXPECT_EQ(p.left, (std::vector<double>{-1, 0}));
  p = antennae(std::vector<double>{1, 1}, std::vector<double>{0, 1}, 0.5);
  EXPECT_EQ(p.right, (std::vector<double>{1, 1.25}));
  EXPECT_EQ(p.left, (std::vector<double>{1, 0.75}));
}

TEST(Antennae, MidpointIsX) {
  RandomStream rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const auto b = sample_direction(rng, 2);
    const auto p = antennae(x, b, rng.uniform(0.01, 3));
    for (int i = 0; i < 2; ++i) EXPECT_NEAR((p.right[i] + p.left[i]) / 2, x[i], 1e-14);
  }
}

TEST(BasStep, DescendsTowardLowerAntenna) {
  const Problem sq = one_d("sq", [](double x) { return x * x; });
  RandomStream rng(0);
  const BasState s = bas_step_along(state_at({1.0}, 0.1, 0.2, 1.0), std::vector<double>{1.0}, sq, rng);
  EXPECT_DOUBLE_EQ(s.x[0], 0.9);
  EXPECT_EQ(s.t, 1u);
  // left probe at 0.9 scored 0.81, the new position 0.9 the same
  EXPECT_DOUBLE_EQ(s.best_f, 0.81);
}

TEST(BasStep, FlatFunctionStaysPut) {
  const Problem flat = one_d("flat", [](double) { return 3.0; });
  RandomStream rng(0);
  const BasState s = bas_step_along(state_at({2.5}, 0.7, 0.1, 3.0), std::vector<double>{1.0}, flat, rng);
  EXPECT_EQ(s.x[0], 2.5);
}

TEST(BasStep, MovesDownhillOnLinearSlope) {
  const Problem slope = one_d("slope", [](double x) { return -x; });
  RandomStream rng(0);
  for (double d : {0.01, 0.5, 2.0}) {
    const BasState s = bas_step_along(state_at({0.0}, 0.3, d, 0.0), std::vector<double>{1.0}, slope, rng);
    EXPECT_DOUBLE_EQ(s.x[0], 0.3);
  }
}

TEST(BasStep, OutOfBoxProbesDoNotBecomeBest) {
  const Problem slope = one_d("slope", [](double x) { return x; }, 0, 1);
  RandomStream rng(0);
  // x on the lower edge: the left probe at -0.5 is lower but outside.
  const BasState s = bas_step_along(state_at({0.0}, 0.2, 1.0, 0.0), std::vector<double>{1.0}, slope, rng);
  EXPECT_EQ(s.x[0], 0.0);
  EXPECT_EQ(s.best_f, 0.0);
  EXPECT_TRUE(slope.space.contains(s.best_x));
}

TEST(BasStep, MoveParallelToDirectionAndBounded) {
  const Problem sq = sphere(3, -100, 100);
  RandomStream rng(12);
  BasState s = state_at({10, -20, 5}, 0.5, 0.1, 525);
  for (int t = 0; t < 200; ++t) {
    const auto b = sample_direction(rng, 3);
    const BasState next = bas_step_along(s, b, sq, rng);
    double dot = 0, norm = 0;
    for (int i = 0; i < 3; ++i) {
      const double m = next.x[i] - s.x[i];
      dot += m * b[i];
      norm += m * m;
    }
    norm = std::sqrt(norm);
    EXPECT_LE(norm, s.delta * (1 + 1e-12));
    EXPECT_NEAR(std::fabs(dot), norm, 1e-9);
    EXPECT_LE(next.best_f, s.best_f);
    s = next;
  }
}

TEST(Schedules, GeometricAndAffine) {
  BasConfig c;
  c.eta = 0.95;
  c.c2_ratio = 5;
  auto u = update_schedules(1.0, c);
  EXPECT_DOUBLE_EQ(u.delta, 0.95);
  EXPECT_DOUBLE_EQ(u.d, 0.19);
  EXPECT_FALSE(u.stalled);
  c.eta = 1.0;
  EXPECT_EQ(update_schedules(2.5, c).delta, 2.5);

  c.schedule = StepSchedule::affine;
  c.c1 = 0.5;
  c.delta_floor = 0.1;
  EXPECT_DOUBLE_EQ(update_schedules(1.0, c).delta, 0.6);
  c.delta_floor = 0.0;
  c.c1 = 0.0;
  u = update_schedules(1.0, c);
  EXPECT_EQ(u.delta, kMinStep);
  EXPECT_TRUE(u.stalled);
}

TEST(Schedules, GeometricDecayIsExact) {
  BasConfig c;
  c.eta = 0.9;
  double delta = 3.0;
  for (int t = 1; t <= 200; ++t) {
    delta = update_schedules(delta, c).delta;
    EXPECT_NEAR(delta, std::pow(0.9, t) * 3.0, 1e-12 * std::pow(0.9, t) * 3.0);
  }
}

TEST(BasConfig, ValidationAndDefaults) {
  BasConfig c;
  EXPECT_DOUBLE_EQ(c.initial_step(SearchSpace({0, 0}, {10, 40})), 12.0);
  c.eta = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.c2_ratio = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.delta0 = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RunBas, ZeroIterationsReportsStart) {
  const Problem sq = sphere(2, -10, 10);
  BasConfig c;
  c.max_iters = 0;
  const RunRecord r = run_bas(sq, c, 5);
  RandomStream rng(5);
  const auto x0 = uniform_in_space(rng, sq.space);
  ASSERT_EQ(r.curve.size(), 1u);
  EXPECT_EQ(r.best_x, x0);
  EXPECT_EQ(r.best_f, x0[0] * x0[0] + x0[1] * x0[1]);
  EXPECT_EQ(r.evaluations, 1u);
}

TEST(RunBas, ConvergesOnOneDimensionalSquare) {
  const Problem sq = sphere(1, -10, 10);
  BasConfig c;
  c.delta0 = 1.0;
  c.max_iters = 200;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RunRecord r = run_bas(sq, c, seed);
    EXPECT_LE(r.best_f, 1e-2) << "seed " << seed;
    EXPECT_EQ(r.curve.size(), 201u);
    EXPECT_EQ(r.evaluations, 1u + 3u * 200u);
    for (std::size_t k = 1; k < r.curve.size(); ++k) EXPECT_LE(r.curve[k], r.curve[k - 1]);
  }
}

TEST(RunBas, DeterministicAndConfigEchoed) {
  const Problem sq = sphere(4, -3, 3);
  BasConfig c;
  c.max_iters = 50;
  const RunRecord a = run_bas(sq, c, 9);
  const RunRecord b = run_bas(sq, c, 9);
  EXPECT_TRUE(same_outcome(a, b));
  EXPECT_EQ(a.config["seed"], 9);
  EXPECT_DOUBLE_EQ(a.config["delta0"].get<double>(), 0.3 * 6);
  EXPECT_FALSE(same_outcome(a, run_bas(sq, c, 10)));
}
