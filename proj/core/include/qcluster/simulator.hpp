#pragma once

#include "qcluster/bitstring.hpp"
#include "qcluster/transform.hpp"

#include <nlohmann/json.hpp>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace qcluster {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;

struct SampleCounts {
  std::size_t shots = 0;
  std::map<Bitstring, std::size_t> counts;
};

/// Dense n-qubit pure state. Basis index b holds qubit i in bit i of b
/// (little-endian); use Bitstring::from_basis_index to name a basis state.
///
/// Gates use the standard 2x2 matrices:
///   RX(θ) = [[cos θ/2, −i sin θ/2], [−i sin θ/2, cos θ/2]]
///   RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]
///   RZ(φ) = diag(e^{−iφ/2}, e^{iφ/2})
/// so global phases follow from these definitions.
class Statevector {
 public:
  static Statevector init_zero(std::size_t n, std::size_t max_qubits = kMaxQubits);
  // Takes ownership of amplitudes; size must be a power of two. Not renormalized.
  static Statevector from_amplitudes(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t index) const { return amps_[index]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

  Statevector& apply_h(std::size_t qubit);
  Statevector& apply_rx(std::size_t qubit, double theta);
  Statevector& apply_ry(std::size_t qubit, double theta);
  Statevector& apply_rz(std::size_t qubit, double phi);
  Statevector& apply_cz(std::size_t control, std::size_t target);

  /// amplitude_b ← amplitude_b · exp(−i·gamma·energies[b]).
  Statevector& apply_phase(std::span<const double> energies, double gamma);
  Statevector& apply_cost_phase(const IsingHamiltonian& ham, double gamma);

  double expectation(std::span<const double> energies) const;
  double expectation(const IsingHamiltonian& ham) const;

  /// Multinomial draw from |amplitude|², deterministic for a given seed.
  SampleCounts sample(std::size_t shots, std::uint64_t seed) const;

 private:
  Statevector(std::size_t n, std::vector<Amplitude> amps) : n_(n), amps_(std::move(amps)) {}

  void check_qubit(std::size_t qubit) const;
  void apply_single(std::size_t qubit, const Amplitude (&m)[2][2]);

  std::size_t n_ = 0;
  std::vector<Amplitude> amps_;
};

struct ProbabilityEntry {
  Bitstring bits;
  double probability = 0.0;
};

/// One entry per basis state, in basis-index order.
std::vector<ProbabilityEntry> probability_table(const Statevector& state);
std::vector<ProbabilityEntry> probability_table(std::span<const double> probabilities, std::size_t n);

/// "bitstring,probability" rows, basis-index order. Bitstrings list qubit 0 first.
void write_probability_csv(std::ostream& out, std::span<const ProbabilityEntry> table);
nlohmann::json probability_json(std::span<const ProbabilityEntry> table);

}  // namespace qcluster
