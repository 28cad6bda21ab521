#include "qcluster/relaxation.hpp"

#include "qcluster/seeding.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qcluster {

namespace {

constexpr double kInitialStep = 1.0;
constexpr double kShrink = 0.5;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

Eigen::VectorXd project_box(const Eigen::VectorXd& x, double lo, double hi) { return x.cwiseMax(lo).cwiseMin(hi); }

double checked(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("relaxation produced a non-finite objective; QUBO is malformed");
  return v;
}

}  // namespace

void RelaxationConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("relaxation epsilon must lie in (0, 0.5)");
  if (num_starts < 1) throw std::invalid_argument("relaxation needs at least one start");
  if (!(tol >= 0.0)) throw std::invalid_argument("relaxation tolerance must be nonnegative");
}

Eigen::VectorXd relaxation_start(std::size_t n, std::uint64_t seed, std::size_t k) {
  const CounterRng rng(seed, k);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = rng.uniform(i);
  return x;
}

DescentRun projected_descent(const QuboProgram& qubo, const Eigen::VectorXd& x0, const RelaxationConfig& cfg) {
  DescentRun run;
  run.point = project_box(x0, 0.0, 1.0);
  run.value = checked(qubo.objective(run.point));
  run.history.push_back(run.value);

  const double fixed_step = 1.0 / (2.0 * qubo.quadratic.norm() + 1.0);

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    const Eigen::VectorXd grad = qubo.gradient(run.point);
    // Projected-gradient residual with unit step: zero exactly at KKT points of the box.
    const double residual = (project_box(run.point - grad, 0.0, 1.0) - run.point).norm();
    if (!std::isfinite(residual)) checked(residual);
    if (residual <= cfg.tol) {
      run.converged = true;
      break;
    }

    Eigen::VectorXd next;
    double next_value = 0.0;
    if (cfg.step_rule == StepRule::fixed) {
      next = project_box(run.point - fixed_step * grad, 0.0, 1.0);
      next_value = checked(qubo.objective(next));
    } else {
      double step = kInitialStep;
      bool accepted = false;
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        next = project_box(run.point - step * grad, 0.0, 1.0);
        next_value = checked(qubo.objective(next));
        if (next_value <= run.value + kArmijo * grad.dot(next - run.point)) {
          accepted = true;
          break;
        }
        step *= kShrink;
      }
      if (!accepted) {
        // Step underflow: the point is stationary to machine precision.
        run.converged = true;
        break;
      }
    }
    run.point = std::move(next);
    run.value = next_value;
    run.history.push_back(run.value);
    run.iterations = it + 1;
  }
  return run;
}

RelaxedSolution relax_qubo(const QuboProgram& qubo, const RelaxationConfig& cfg) {
  qubo.validate();
  cfg.validate();
  const std::size_t n = qubo.size();
  checked(qubo.objective(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))));

  std::vector<DescentRun> runs(cfg.num_starts);
  auto work = [&](std::size_t k) { runs[k] = projected_descent(qubo, relaxation_start(n, cfg.seed, k), cfg); };

  const std::size_t threads = std::min(std::max<std::size_t>(1, cfg.threads), cfg.num_starts);
  if (threads == 1) {
    for (std::size_t k = 0; k < cfg.num_starts; ++k) work(k);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t k = t; k < cfg.num_starts; k += threads) work(k);
      });
    }
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].value < runs[best].value) best = k;
  }

  RelaxedSolution sol;
  sol.epsilon = cfg.epsilon;
  sol.box_point = runs[best].point;
  sol.box_value = runs[best].value;
  sol.c_star = project_box(sol.box_point, cfg.epsilon, 1.0 - cfg.epsilon);
  sol.value = checked(qubo.objective(sol.c_star));
  sol.starts_used = cfg.num_starts;
  sol.best_start = best;
  sol.converged = runs[best].converged;
  return sol;
}

Bitstring round_relaxed(const RelaxedSolution& sol) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(sol.c_star.size()));
  for (Eigen::Index i = 0; i < sol.c_star.size(); ++i) bits[static_cast<std::size_t>(i)] = sol.c_star(i) > 0.5 ? 1 : 0;
  return Bitstring(std::move(bits));
}

nlohmann::json to_json(const RelaxedSolution& sol) {
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return {
      {"c_star", vec(sol.c_star)},
      {"value", sol.value},
      {"box_point", vec(sol.box_point)},
      {"box_value", sol.box_value},
      {"epsilon", sol.epsilon},
      {"starts_used", sol.starts_used},
      {"best_start", sol.best_start},
      {"converged", sol.converged},
      {"rounded", round_relaxed(sol).to_string()},
  };
}

RelaxedSolution relaxed_solution_from_json(const nlohmann::json& j) {
  auto vec = [](const nlohmann::json& a) {
    const auto v = a.get<std::vector<double>>();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  RelaxedSolution sol;
  sol.c_star = vec(j.at("c_star"));
  sol.value = j.at("value").get<double>();
  sol.box_point = j.contains("box_point") ? vec(j.at("box_point")) : sol.c_star;
  sol.box_value = j.value("box_value", sol.value);
  sol.epsilon = j.value("epsilon", 0.25);
  sol.starts_used = j.value("starts_used", std::size_t{0});
  sol.best_start = j.value("best_start", std::size_t{0});
  sol.converged = j.value("converged", false);
  return sol;
}

}  // namespace qcluster
