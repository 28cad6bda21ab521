#pragma once

#include "qcluster/bitstring.hpp"
#include "qcluster/transform.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

namespace qcluster {

enum class StepRule { fixed, backtracking };

struct RelaxationConfig {
  double epsilon = 0.25;
  std::size_t num_starts = 32;
  std::size_t max_iters = 1000;
  StepRule step_rule = StepRule::backtracking;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

/// Best local solution of the box relaxation, regularized into [ε, 1−ε]^n.
struct RelaxedSolution {
  Eigen::VectorXd c_star;     // clipped into [ε, 1−ε]
  double value = 0.0;         // objective at c_star
  Eigen::VectorXd box_point;  // best iterate before clipping, in [0,1]^n
  double box_value = 0.0;     // objective at box_point
  double epsilon = 0.25;
  std::size_t starts_used = 0;
  std::size_t best_start = 0;
  bool converged = false;     // the winning run met the gradient tolerance
};

/// One projected-gradient run on [0,1]^n.
struct DescentRun {
  Eigen::VectorXd point;
  double value = 0.0;
  std::vector<double> history;  // objective after every accepted step, starting at x0
  std::size_t iterations = 0;
  bool converged = false;
};

DescentRun projected_descent(const QuboProgram& qubo, const Eigen::VectorXd& x0, const RelaxationConfig& cfg);

/// Start point for start index `k` (uniform on [0,1]^n, counter-based).
Eigen::VectorXd relaxation_start(std::size_t n, std::uint64_t seed, std::size_t k);

RelaxedSolution relax_qubo(const QuboProgram& qubo, const RelaxationConfig& cfg = {});

/// bit i = 1 iff c_star[i] > 0.5.
Bitstring round_relaxed(const RelaxedSolution& sol);

nlohmann::json to_json(const RelaxedSolution& sol);
RelaxedSolution relaxed_solution_from_json(const nlohmann::json& j);

}  // namespace qcluster
