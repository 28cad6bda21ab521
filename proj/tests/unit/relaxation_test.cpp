#include "qcluster/relaxation.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qcluster {
namespace {

QuboProgram single_edge_qubo() {
  Eigen::MatrixXd w(2, 2);
  w << 0, 7, 7, 0;
  return maxcut_to_qubo(WeightMatrix(w));
}

TEST(RelaxQuboTest, ConvexInteriorMinimum) {
  // f(c) = (c - 0.3)^2 = c^2 - 0.6 c + 0.09
  QuboProgram q{Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Constant(1, -0.6), 0.09};
  for (double eps : {0.1, 0.25, 0.3}) {
    RelaxationConfig cfg;
    cfg.epsilon = eps;
    const auto sol = relax_qubo(q, cfg);
    EXPECT_NEAR(sol.c_star(0), 0.3, 1e-6);
    EXPECT_NEAR(sol.value, 0.0, 1e-9);
    EXPECT_TRUE(sol.converged);
  }
}

TEST(RelaxQuboTest, SingleEdgeLandsOnClippedCorner) {
  const auto q = single_edge_qubo();
  // Grid oracle over [0,1]^2 at 0.01.
  double grid_best = 1e300;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      grid_best = std::min(grid_best, testing::oracle_qubo(q, {i / 100.0, j / 100.0}));
    }
  }
  EXPECT_DOUBLE_EQ(grid_best, -7.0);

  RelaxationConfig cfg;
  const auto sol = relax_qubo(q, cfg);
  EXPECT_DOUBLE_EQ(sol.box_value, -7.0);
  const double e = cfg.epsilon;
  const bool corner_a = sol.c_star(0) == e && sol.c_star(1) == 1 - e;
  const bool corner_b = sol.c_star(0) == 1 - e && sol.c_star(1) == e;
  EXPECT_TRUE(corner_a || corner_b);
  EXPECT_NEAR(sol.value, testing::oracle_qubo(q, {sol.c_star(0), sol.c_star(1)}), 1e-12);

  const auto rounded = round_relaxed(sol);
  EXPECT_TRUE(rounded.to_string() == "01" || rounded.to_string() == "10");
}

TEST(RelaxQuboTest, ZeroQubo) {
  QuboProgram q{Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3), 0.0};
  const auto sol = relax_qubo(q);
  EXPECT_EQ(sol.value, 0.0);
  EXPECT_EQ(sol.box_value, 0.0);
}

TEST(RelaxQuboTest, NonFiniteQuboIsAnError) {
  QuboProgram q{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2), std::numeric_limits<double>::infinity()};
  EXPECT_THROW(relax_qubo(q), std::runtime_error);
}

TEST(RelaxQuboTest, InvalidConfig) {
  const auto q = single_edge_qubo();
  RelaxationConfig cfg;
  cfg.epsilon = 0.5;
  EXPECT_THROW(relax_qubo(q, cfg), std::invalid_argument);
  cfg.epsilon = 0.0;
  EXPECT_THROW(relax_qubo(q, cfg), std::invalid_argument);
  cfg = {};
  cfg.num_starts = 0;
  EXPECT_THROW(relax_qubo(q, cfg), std::invalid_argument);
}

TEST(RelaxQuboTest, FeasibilityAndValueConsistency) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto q = testing::random_qubo(n, rng);
    RelaxationConfig cfg;
    cfg.epsilon = 0.05 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    cfg.seed = rng();
    const auto sol = relax_qubo(q, cfg);
    for (Eigen::Index i = 0; i < sol.c_star.size(); ++i) {
      EXPECT_GE(sol.c_star(i), cfg.epsilon);
      EXPECT_LE(sol.c_star(i), 1.0 - cfg.epsilon);
      EXPECT_GE(sol.box_point(i), 0.0);
      EXPECT_LE(sol.box_point(i), 1.0);
    }
    std::vector<double> c(sol.c_star.data(), sol.c_star.data() + n);
    EXPECT_NEAR(sol.value, testing::oracle_qubo(q, c), 1e-9);
  }
}

TEST(ProjectedDescentTest, BacktrackingIsMonotone) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const auto q = testing::random_qubo(n, rng);
    RelaxationConfig cfg;
    for (auto rule : {StepRule::backtracking, StepRule::fixed}) {
      cfg.step_rule = rule;
      const auto run = projected_descent(q, relaxation_start(n, rng(), 0), cfg);
      for (std::size_t k = 1; k < run.history.size(); ++k) EXPECT_LE(run.history[k], run.history[k - 1]);
    }
  }
}

TEST(RelaxQuboTest, DeterministicAndThreadIndependent) {
  std::mt19937_64 rng(2);
  const auto q = testing::random_qubo(6, rng);
  RelaxationConfig cfg;
  cfg.seed = 1234;
  const auto a = relax_qubo(q, cfg);
  const auto b = relax_qubo(q, cfg);
  cfg.threads = 4;
  const auto c = relax_qubo(q, cfg);
  for (Eigen::Index i = 0; i < a.c_star.size(); ++i) {
    EXPECT_EQ(a.c_star(i), b.c_star(i));
    EXPECT_EQ(a.c_star(i), c.c_star(i));
  }
  EXPECT_EQ(a.best_start, c.best_start);
}

TEST(RoundRelaxedTest, Threshold) {
  RelaxedSolution sol;
  sol.c_star = Eigen::Vector2d(0.25, 0.75);
  EXPECT_EQ(round_relaxed(sol).to_string(), "01");
  sol.c_star = Eigen::Vector2d(0.5, 0.5);
  EXPECT_EQ(round_relaxed(sol).to_string(), "00");
}

TEST(RelaxedSolutionTest, JsonRoundTrip) {
  const auto sol = relax_qubo(single_edge_qubo());
  const auto back = relaxed_solution_from_json(to_json(sol));
  EXPECT_EQ(back.c_star, sol.c_star);
  EXPECT_EQ(back.value, sol.value);
  EXPECT_EQ(back.starts_used, sol.starts_used);
}

}  // namespace
}  // namespace qcluster
