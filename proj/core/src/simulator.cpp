#include "qcluster/simulator.hpp"

#include "qcluster/seeding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace qcluster {

Statevector Statevector::init_zero(std::size_t n, std::size_t max_qubits) {
  if (n < 1 || n > max_qubits) {
    throw std::out_of_range("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(max_qubits) + "]");
  }
  std::vector<Amplitude> amps(std::size_t{1} << n, Amplitude{0.0, 0.0});
  amps[0] = 1.0;
  return Statevector(n, std::move(amps));
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) throw std::invalid_argument("amplitude count must be a power of two >= 2");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  return Statevector(n, std::move(amplitudes));
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
  return p;
}

void Statevector::check_qubit(std::size_t qubit) const {
  if (qubit >= n_) throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(n_) + " qubits");
}

void Statevector::apply_single(std::size_t qubit, const Amplitude (&m)[2][2]) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Amplitude a0 = amps_[k];
      const Amplitude a1 = amps_[k + stride];
      amps_[k] = m[0][0] * a0 + m[0][1] * a1;
      amps_[k + stride] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

Statevector& Statevector::apply_h(std::size_t qubit) {
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude m[2][2] = {{r, r}, {r, -r}};
  apply_single(qubit, m);
  return *this;
}

Statevector& Statevector::apply_rx(std::size_t qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Amplitude m[2][2] = {{c, Amplitude{0.0, -s}}, {Amplitude{0.0, -s}, c}};
  apply_single(qubit, m);
  return *this;
}

Statevector& Statevector::apply_ry(std::size_t qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Amplitude m[2][2] = {{c, -s}, {s, c}};
  apply_single(qubit, m);
  return *this;
}

Statevector& Statevector::apply_rz(std::size_t qubit, double phi) {
  check_qubit(qubit);
  const Amplitude lo = std::polar(1.0, -phi / 2.0);
  const Amplitude hi = std::polar(1.0, phi / 2.0);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] *= (k & mask) ? hi : lo;
  return *this;
}

Statevector& Statevector::apply_cz(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("CZ needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & mask) == mask) amps_[k] = -amps_[k];
  }
  return *this;
}

Statevector& Statevector::apply_phase(std::span<const double> energies, double gamma) {
  if (energies.size() != amps_.size()) throw std::invalid_argument("energy table size does not match statevector dimension");
  for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] *= std::polar(1.0, -gamma * energies[k]);
  return *this;
}

Statevector& Statevector::apply_cost_phase(const IsingHamiltonian& ham, double gamma) {
  if (ham.size() != n_) throw std::invalid_argument("Hamiltonian size does not match qubit count");
  const auto diag = ham.diagonal();
  return apply_phase(diag, gamma);
}

double Statevector::expectation(std::span<const double> energies) const {
  if (energies.size() != amps_.size()) throw std::invalid_argument("energy table size does not match statevector dimension");
  double e = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k) e += std::norm(amps_[k]) * energies[k];
  return e;
}

double Statevector::expectation(const IsingHamiltonian& ham) const {
  if (ham.size() != n_) throw std::invalid_argument("Hamiltonian size does not match qubit count");
  const auto diag = ham.diagonal();
  return expectation(diag);
}

SampleCounts Statevector::sample(std::size_t shots, std::uint64_t seed) const {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> cdf(amps_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    acc += std::norm(amps_[k]);
    cdf[k] = acc;
  }
  std::vector<std::size_t> hits(amps_.size(), 0);
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip zero-probability tail entries that share the final cdf value.
    std::size_t k = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    while (k > 0 && std::norm(amps_[k]) == 0.0) --k;
    ++hits[k];
  }
  SampleCounts out;
  out.shots = shots;
  for (std::size_t k = 0; k < hits.size(); ++k) {
    if (hits[k] != 0) out.counts.emplace(Bitstring::from_basis_index(k, n_), hits[k]);
  }
  return out;
}

std::vector<ProbabilityEntry> probability_table(std::span<const double> probabilities, std::size_t n) {
  if (probabilities.size() != (std::size_t{1} << n)) throw std::invalid_argument("probability table must have 2^n entries");
  std::vector<ProbabilityEntry> table;
  table.reserve(probabilities.size());
  for (std::size_t k = 0; k < probabilities.size(); ++k) table.push_back({Bitstring::from_basis_index(k, n), probabilities[k]});
  return table;
}

std::vector<ProbabilityEntry> probability_table(const Statevector& state) {
  const auto p = state.probabilities();
  return probability_table(p, state.num_qubits());
}

void write_probability_csv(std::ostream& out, std::span<const ProbabilityEntry> table) {
  const auto old_precision = out.precision();
  out << "bitstring,probability\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& row : table) out << row.bits.to_string() << ',' << row.probability << '\n';
  out.precision(old_precision);
}

nlohmann::json probability_json(std::span<const ProbabilityEntry> table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table) rows.push_back({{"bitstring", row.bits.to_string()}, {"probability", row.probability}});
  return rows;
}

}  // namespace qcluster
