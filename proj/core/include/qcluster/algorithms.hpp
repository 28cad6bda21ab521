#pragma once

#include "qcluster/bitstring.hpp"
#include "qcluster/datagraph.hpp"
#include "qcluster/relaxation.hpp"
#include "qcluster/simulator.hpp"
#include "qcluster/spsa.hpp"
#include "qcluster/transform.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qcluster {

/// Layer angles: layer k applies the cost phase with gammas[k], then the
/// mixer with betas[k]. Zero layers is a valid state-preparation input.
struct QaoaParameters {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const noexcept { return gammas.size(); }
  void validate() const;

  // Flat layout used by the optimizer: [γ_1 … γ_p, β_1 … β_p].
  static QaoaParameters from_flat(std::span<const double> flat);
  std::vector<double> flat() const;
};

enum class Entangler { linear_cz, full_cz };

/// Hardware-efficient layout: reps × (RY on every qubit, CZ entangler), then
/// a final RY layer. Parameters are ordered layer by layer, qubit 0 first.
struct VqeLayout {
  std::size_t qubits = 0;
  std::size_t reps = 2;
  Entangler entangler = Entangler::linear_cz;

  std::size_t parameter_count() const noexcept { return qubits * (reps + 1); }
};

enum class AlgorithmKind { qaoa, ws_qaoa, vqe };

std::string_view to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(std::string_view text);
std::string_view to_string(Entangler entangler);
Entangler parse_entangler(std::string_view text);

/// H on every qubit, then p layers of cost phase e^{−iγH} and mixer RX(2β).
Statevector qaoa_state(const IsingHamiltonian& ham, const QaoaParameters& params);
Statevector qaoa_state(std::span<const double> energies, std::size_t n, const QaoaParameters& params);

/// Warm start from c*: initial product state ⊗ RY(θ_i)|0⟩ with
/// θ_i = 2·asin(√c*_i), mixer per qubit RY(θ_i)·RZ(−2β)·RY(−θ_i).
/// Throws if any c*_i lies outside the open interval (0, 1).
Statevector ws_qaoa_state(const IsingHamiltonian& ham, const RelaxedSolution& relaxed, const QaoaParameters& params);
Statevector ws_qaoa_state(std::span<const double> energies, std::span<const double> c_star, const QaoaParameters& params);

Statevector vqe_state(const VqeLayout& layout, std::span<const double> params);

struct AlgorithmConfig {
  std::size_t qaoa_reps = 3;
  std::size_t vqe_reps = 2;
  Entangler entangler = Entangler::linear_cz;
  SpsaConfig spsa;
  RelaxationConfig relaxation;
  // Used by ws_qaoa when present; otherwise the relaxation is solved in-run.
  std::optional<RelaxedSolution> relaxed;
  // 0 extracts the solution from the exact statevector; otherwise by sampling.
  std::size_t shots = 0;
  // Seeds the initial angles and the sampler.
  std::uint64_t seed = 0;
};

struct AlgorithmResult {
  AlgorithmKind kind = AlgorithmKind::qaoa;
  Bitstring best_bitstring;
  double energy = 0.0;
  double cut_value = 0.0;
  std::vector<double> probabilities;  // final state, basis-index order
  std::vector<SpsaStep> optimizer_trace;
  std::vector<double> parameters;
  std::size_t depth = 0;  // QAOA layers or VQE reps
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  std::optional<RelaxedSolution> relaxed;
  double wall_time = 0.0;  // seconds

  std::size_t qubits() const;
  double max_probability() const;
  std::vector<ProbabilityEntry> probability_table() const;
};

/// Argmax of a probability vector; entries within a relative 1e-12 of the
/// maximum count as tied and the lowest binary value wins.
Bitstring most_probable(std::span<const double> probabilities, std::size_t n);
Bitstring most_frequent(const SampleCounts& counts);

/// Minimizes ⟨H⟩ with SPSA and extracts the solution. The optimizer sees the
/// energy divided by max_b |E_b| so that its default gains are scale-free;
/// all reported energies are unscaled.
AlgorithmResult run_algorithm(AlgorithmKind kind, const IsingHamiltonian& ham, const WeightMatrix& w,
                              const AlgorithmConfig& cfg);

nlohmann::json to_json(const AlgorithmResult& result);
AlgorithmResult algorithm_result_from_json(const nlohmann::json& j);

}  // namespace qcluster
