#include "qbal/nelder_mead.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace qbal;

TEST(NelderMead, Rosenbrock) {
  auto rosen = [](std::span<const double> x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); };
  const std::vector<double> start{-1.2, 1.0};
  NelderMeadOptions opt;
  opt.max_evaluations = 4000;
  const auto r = nelder_mead(rosen, start, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  EXPECT_LT(r.value, 1e-8);
}

TEST(NelderMead, HighDimensionalQuadratic) {
  auto bowl = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * (x[i] - 0.5) * (x[i] - 0.5);
    return s;
  };
  const std::vector<double> start(12, 0.0);
  NelderMeadOptions opt;
  opt.max_evaluations = 20000;
  const auto r = nelder_mead(bowl, start, opt);
  EXPECT_LT(r.value, 1e-6);
}

TEST(NelderMead, RespectsBudgetAndRecordsMonotoneHistory) {
  int calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return std::sin(3 * x[0]) + std::cos(2 * x[1]) + 0.1 * x[2] * x[2];
  };
  const std::vector<double> start{0.3, -0.2, 1.0};
  NelderMeadOptions opt;
  opt.max_evaluations = 57;
  const auto r = nelder_mead(f, start, opt);
  EXPECT_EQ(r.evaluations, 57U);
  EXPECT_EQ(calls, 57);
  ASSERT_EQ(r.best_history.size(), 57U);
  for (std::size_t i = 1; i < r.best_history.size(); ++i) EXPECT_LE(r.best_history[i], r.best_history[i - 1]);
  EXPECT_DOUBLE_EQ(r.best_history.back(), r.value);
  EXPECT_DOUBLE_EQ(f(r.x), r.value);
}

TEST(NelderMead, ErrorPaths) {
  auto f = [](std::span<const double>) { return 0.0; };
  const std::vector<double> none;
  EXPECT_THROW(nelder_mead(f, none), std::invalid_argument);
  const std::vector<double> one{1.0};
  NelderMeadOptions opt;
  opt.max_evaluations = 0;
  EXPECT_THROW(nelder_mead(f, one, opt), std::invalid_argument);
}

TEST(NelderMead, StopsEarlyOnFlatObjective) {
  auto flat = [](std::span<const double>) { return 1.0; };
  const std::vector<double> start{0.0, 0.0};
  NelderMeadOptions opt;
  opt.max_evaluations = 100000;
  const auto r = nelder_mead(flat, start, opt);
  EXPECT_LT(r.evaluations, 100000U);
}
