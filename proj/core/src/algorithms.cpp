#include "qcluster/algorithms.hpp"

#include "qcluster/seeding.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcluster {

void QaoaParameters::validate() const {
  if (gammas.size() != betas.size()) throw std::invalid_argument("QAOA gammas and betas must have the same length");
}

QaoaParameters QaoaParameters::from_flat(std::span<const double> flat) {
  if (flat.size() % 2 != 0) throw std::invalid_argument("flat QAOA parameter vector must have even length");
  const std::size_t p = flat.size() / 2;
  return {{flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)},
          {flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end()}};
}

std::vector<double> QaoaParameters::flat() const {
  std::vector<double> out(gammas);
  out.insert(out.end(), betas.begin(), betas.end());
  return out;
}

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::qaoa:
      return "qaoa";
    case AlgorithmKind::ws_qaoa:
      return "ws_qaoa";
    case AlgorithmKind::vqe:
      return "vqe";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view text) {
  if (text == "qaoa") return AlgorithmKind::qaoa;
  if (text == "ws_qaoa" || text == "ws-qaoa" || text == "wsqaoa") return AlgorithmKind::ws_qaoa;
  if (text == "vqe") return AlgorithmKind::vqe;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

std::string_view to_string(Entangler entangler) {
  return entangler == Entangler::full_cz ? "full_cz" : "linear_cz";
}

Entangler parse_entangler(std::string_view text) {
  if (text == "linear_cz" || text == "linear") return Entangler::linear_cz;
  if (text == "full_cz" || text == "full") return Entangler::full_cz;
  throw std::invalid_argument("unknown entangler '" + std::string(text) + "'");
}

Statevector qaoa_state(std::span<const double> energies, std::size_t n, const QaoaParameters& params) {
  params.validate();
  auto state = Statevector::init_zero(n);
  if (energies.size() != state.dimension()) throw std::invalid_argument("energy table does not match qubit count");
  for (std::size_t q = 0; q < n; ++q) state.apply_h(q);
  for (std::size_t k = 0; k < params.depth(); ++k) {
    state.apply_phase(energies, params.gammas[k]);
    for (std::size_t q = 0; q < n; ++q) state.apply_rx(q, 2.0 * params.betas[k]);
  }
  return state;
}

Statevector qaoa_state(const IsingHamiltonian& ham, const QaoaParameters& params) {
  const auto diag = ham.diagonal();
  return qaoa_state(diag, ham.size(), params);
}

Statevector ws_qaoa_state(std::span<const double> energies, std::span<const double> c_star, const QaoaParameters& params) {
  params.validate();
  const std::size_t n = c_star.size();
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = c_star[i];
    if (!(c > 0.0 && c < 1.0)) {
      throw std::invalid_argument("warm-start value c*[" + std::to_string(i) + "] = " + std::to_string(c) +
                                  " is outside (0, 1); regularize the relaxation with epsilon > 0");
    }
    theta[i] = 2.0 * std::asin(std::sqrt(c));
  }
  auto state = Statevector::init_zero(n);
  if (energies.size() != state.dimension()) throw std::invalid_argument("energy table does not match qubit count");
  for (std::size_t q = 0; q < n; ++q) state.apply_ry(q, theta[q]);
  for (std::size_t k = 0; k < params.depth(); ++k) {
    state.apply_phase(energies, params.gammas[k]);
    for (std::size_t q = 0; q < n; ++q) {
      state.apply_ry(q, -theta[q]).apply_rz(q, -2.0 * params.betas[k]).apply_ry(q, theta[q]);
    }
  }
  return state;
}

Statevector ws_qaoa_state(const IsingHamiltonian& ham, const RelaxedSolution& relaxed, const QaoaParameters& params) {
  if (static_cast<std::size_t>(relaxed.c_star.size()) != ham.size()) {
    throw std::invalid_argument("relaxed solution length does not match Hamiltonian size");
  }
  const auto diag = ham.diagonal();
  return ws_qaoa_state(diag, std::span<const double>(relaxed.c_star.data(), static_cast<std::size_t>(relaxed.c_star.size())),
                       params);
}

Statevector vqe_state(const VqeLayout& layout, std::span<const double> params) {
  if (layout.reps < 1) throw std::invalid_argument("VQE layout needs at least one entangling layer");
  if (params.size() != layout.parameter_count()) {
    throw std::invalid_argument("VQE expects " + std::to_string(layout.parameter_count()) + " parameters, got " +
                                std::to_string(params.size()));
  }
  const std::size_t n = layout.qubits;
  auto state = Statevector::init_zero(n);
  for (std::size_t r = 0; r <= layout.reps; ++r) {
    for (std::size_t q = 0; q < n; ++q) state.apply_ry(q, params[r * n + q]);
    if (r == layout.reps) break;
    if (layout.entangler == Entangler::linear_cz) {
      for (std::size_t q = 0; q + 1 < n; ++q) state.apply_cz(q, q + 1);
    } else {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) state.apply_cz(a, b);
      }
    }
  }
  return state;
}

std::size_t AlgorithmResult::qubits() const {
  return probabilities.empty() ? 0 : static_cast<std::size_t>(std::countr_zero(probabilities.size()));
}

double AlgorithmResult::max_probability() const {
  return probabilities.empty() ? 0.0 : *std::max_element(probabilities.begin(), probabilities.end());
}

std::vector<ProbabilityEntry> AlgorithmResult::probability_table() const {
  return qcluster::probability_table(probabilities, qubits());
}

Bitstring most_probable(std::span<const double> probabilities, std::size_t n) {
  if (probabilities.size() != (std::size_t{1} << n)) throw std::invalid_argument("probability vector must have 2^n entries");
  const double pmax = *std::max_element(probabilities.begin(), probabilities.end());
  const double cutoff = pmax * (1.0 - 1e-12);
  std::optional<Bitstring> best;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] < cutoff) continue;
    auto candidate = Bitstring::from_basis_index(k, n);
    if (!best || candidate < *best) best = std::move(candidate);
  }
  return *best;
}

Bitstring most_frequent(const SampleCounts& counts) {
  if (counts.counts.empty()) throw std::invalid_argument("no samples to choose from");
  // std::map iterates in binary-value order, so the first maximum is the lowest value.
  auto best = counts.counts.begin();
  for (auto it = counts.counts.begin(); it != counts.counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

AlgorithmResult run_algorithm(AlgorithmKind kind, const IsingHamiltonian& ham, const WeightMatrix& w,
                              const AlgorithmConfig& cfg) {
  const std::size_t n = ham.size();
  if (w.size() != n) throw std::invalid_argument("weight matrix and Hamiltonian sizes differ");
  if (n < 1 || n > kMaxQubits) throw std::out_of_range("qubit count outside simulator range");

  const auto start = std::chrono::steady_clock::now();

  AlgorithmResult result;
  result.kind = kind;
  result.seed = cfg.seed;
  result.shots = cfg.shots;

  const auto energies = ham.diagonal();
  double scale = 0.0;
  for (double e : energies) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = 1.0;

  SplitMix64 init_rng(derive_seed(cfg.seed, "initial-point"));
  std::vector<double> x0;
  std::function<Statevector(std::span<const double>)> prepare;

  std::vector<double> c_star;
  switch (kind) {
    case AlgorithmKind::qaoa:
    case AlgorithmKind::ws_qaoa: {
      if (cfg.qaoa_reps < 1) throw std::invalid_argument("QAOA depth must be at least 1");
      result.depth = cfg.qaoa_reps;
      x0.resize(2 * cfg.qaoa_reps);
      for (auto& v : x0) v = init_rng.uniform(-0.1, 0.1);
      if (kind == AlgorithmKind::qaoa) {
        prepare = [&](std::span<const double> x) { return qaoa_state(energies, n, QaoaParameters::from_flat(x)); };
      } else {
        result.relaxed = cfg.relaxed ? *cfg.relaxed : relax_qubo(maxcut_to_qubo(w), cfg.relaxation);
        if (static_cast<std::size_t>(result.relaxed->c_star.size()) != n) {
          throw std::invalid_argument("relaxed solution length does not match Hamiltonian size");
        }
        c_star.assign(result.relaxed->c_star.data(), result.relaxed->c_star.data() + n);
        prepare = [&](std::span<const double> x) { return ws_qaoa_state(energies, c_star, QaoaParameters::from_flat(x)); };
      }
      break;
    }
    case AlgorithmKind::vqe: {
      const VqeLayout layout{n, cfg.vqe_reps, cfg.entangler};
      if (layout.reps < 1) throw std::invalid_argument("VQE reps must be at least 1");
      result.depth = layout.reps;
      x0.resize(layout.parameter_count());
      for (auto& v : x0) v = init_rng.uniform(-std::numbers::pi, std::numbers::pi);
      prepare = [layout](std::span<const double> x) { return vqe_state(layout, x); };
      break;
    }
  }

  const Objective objective = [&](std::span<const double> x) { return prepare(x).expectation(energies) / scale; };
  const SpsaResult opt = spsa_minimize(objective, x0, cfg.spsa);

  const Statevector final_state = prepare(opt.x_best);
  result.parameters = opt.x_best;
  result.energy = final_state.expectation(energies);
  result.probabilities = final_state.probabilities();
  result.optimizer_trace.reserve(opt.trace.size());
  for (const auto& step : opt.trace) result.optimizer_trace.push_back({step.iteration, step.objective * scale});

  if (cfg.shots > 0) {
    result.best_bitstring = most_frequent(final_state.sample(cfg.shots, derive_seed(cfg.seed, "sampling")));
  } else {
    result.best_bitstring = most_probable(result.probabilities, n);
  }
  result.cut_value = cut_value(w, result.best_bitstring);

  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

nlohmann::json to_json(const AlgorithmResult& result) {
  auto trace = nlohmann::json::array();
  for (const auto& s : result.optimizer_trace) trace.push_back({s.iteration, s.objective});
  nlohmann::json j = {
      {"algorithm", to_string(result.kind)},
      {"qubits", result.qubits()},
      {"best_bitstring", result.best_bitstring.to_string()},
      {"energy", result.energy},
      {"cut_value", result.cut_value},
      {"depth", result.depth},
      {"seed", result.seed},
      {"shots", result.shots},
      {"parameters", result.parameters},
      {"probability_table", probability_json(result.probability_table())},
      {"optimizer_trace", trace},
      {"wall_time", result.wall_time},
  };
  if (result.relaxed) j["relaxed"] = to_json(*result.relaxed);
  return j;
}

AlgorithmResult algorithm_result_from_json(const nlohmann::json& j) {
  AlgorithmResult r;
  r.kind = parse_algorithm(j.at("algorithm").get<std::string>());
  r.best_bitstring = Bitstring::parse(j.at("best_bitstring").get<std::string>());
  r.energy = j.at("energy").get<double>();
  r.cut_value = j.at("cut_value").get<double>();
  r.depth = j.value("depth", std::size_t{0});
  r.seed = j.value("seed", std::uint64_t{0});
  r.shots = j.value("shots", std::size_t{0});
  r.parameters = j.value("parameters", std::vector<double>{});
  r.wall_time = j.value("wall_time", 0.0);

  const auto& table = j.at("probability_table");
  const std::size_t dim = table.size();
  if (dim < 2 || !std::has_single_bit(dim)) throw std::invalid_argument("probability_table must have 2^n rows");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  r.probabilities.assign(dim, 0.0);
  for (const auto& row : table) {
    const auto bits = Bitstring::parse(row.at("bitstring").get<std::string>());
    if (bits.size() != n) throw std::invalid_argument("probability_table bitstring has the wrong width");
    r.probabilities[bits.basis_index()] = row.at("probability").get<double>();
  }
  if (j.contains("optimizer_trace")) {
    for (const auto& s : j.at("optimizer_trace")) r.optimizer_trace.push_back({s.at(0).get<std::size_t>(), s.at(1).get<double>()});
  }
  if (j.contains("relaxed")) r.relaxed = relaxed_solution_from_json(j.at("relaxed"));
  return r;
}

}  // namespace qcluster
