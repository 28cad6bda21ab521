#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qcluster {

/// Gain sequences a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma_exp.
struct SpsaConfig {
  std::size_t max_iters = 300;
  double a = 0.2;
  double c = 0.1;
  double A = 30.0;
  double alpha = 0.602;
  double gamma_exp = 0.101;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SpsaStep {
  std::size_t iteration = 0;
  double objective = 0.0;
};

struct SpsaResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  std::vector<SpsaStep> trace;  // entry 0 is x0; entry k is the iterate after step k
  std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Simultaneous-perturbation stochastic approximation with Rademacher
/// directions. Returns the best iterate seen, not the last one.
///
/// A non-finite value inside an iteration triggers one retry of that
/// iteration with both gains halved; a second failure throws
/// std::runtime_error.
SpsaResult spsa_minimize(const Objective& objective, std::vector<double> x0, const SpsaConfig& cfg = {});

}  // namespace qcluster
