#pragma once

#include "qcluster/bitstring.hpp"
#include "qcluster/datagraph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace qcluster {

/// minimize  xᵀ·Q·x + linearᵀ·x + offset   over x ∈ {0,1}^n.
///
/// Q is symmetric. Programs built from MaxCut keep Q's diagonal at zero and
/// carry single-variable terms in `linear`; hand-built programs may use the
/// diagonal, which matters for the continuous extension (c_i² vs c_i).
struct QuboProgram {
  Eigen::MatrixXd quadratic;
  Eigen::VectorXd linear;
  double offset = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(linear.size()); }
  void validate() const;

  double objective(const Bitstring& x) const;
  // Continuous extension on [0,1]^n.
  double objective(const Eigen::VectorXd& c) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& c) const;
};

/// Diagonal spin Hamiltonian
///   E(z) = Σ_{i<j} J_ij z_i z_j + Σ_i h_i z_i + offset,   z_i ∈ {−1,+1}.
/// Spin/bit link: x_i = (1 − z_i)/2, so bit 0 ↔ z = +1.
class IsingHamiltonian {
 public:
  IsingHamiltonian() = default;
  explicit IsingHamiltonian(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(fields_.size()); }

  double coupling(std::size_t i, std::size_t j) const;
  void set_coupling(std::size_t i, std::size_t j, double value);
  double field(std::size_t i) const { return fields_(static_cast<Eigen::Index>(i)); }
  void set_field(std::size_t i, double value) { fields_(static_cast<Eigen::Index>(i)) = value; }
  double offset() const noexcept { return offset_; }
  void set_offset(double value) noexcept { offset_ = value; }

  const Eigen::VectorXd& fields() const noexcept { return fields_; }

  double energy(std::span<const int> spins) const;
  double energy(const Bitstring& x) const;
  // Energy of the statevector basis state with little-endian index `index`.
  double basis_energy(std::uint64_t index) const;
  // basis_energy for every index 0 .. 2^n − 1.
  std::vector<double> diagonal() const;

 private:
  struct Term {
    std::size_t i;
    std::size_t j;
    double value;
  };
  // Dense upper triangle is the source of truth; terms_ is the sparse view
  // used by the energy loops.
  Eigen::MatrixXd couplings_;
  Eigen::VectorXd fields_;
  double offset_ = 0.0;
  std::vector<Term> terms_;

  void rebuild_terms();
};

/// Σ_{i<j} w_ij·[x_i ≠ x_j].
double cut_value(const WeightMatrix& w, const Bitstring& x);

/// QUBO whose objective is −cut_value(w, x) for every x.
QuboProgram maxcut_to_qubo(const WeightMatrix& w);

/// Exact rewrite under x = (1 − z)/2. Binary-exact, so Q's diagonal is
/// treated as linear (x_i² = x_i).
IsingHamiltonian qubo_to_ising(const QuboProgram& qubo);

struct GroundState {
  Bitstring bits;
  double energy = 0.0;
};

struct BruteForceOptions {
  std::size_t max_qubits = 24;
  // Enumeration may be split across threads; the result does not depend on it.
  std::size_t threads = 1;
};

/// Exhaustive minimum over all 2^n bitstrings, ties to the lowest binary value.
GroundState brute_force_solve(const IsingHamiltonian& ham, const BruteForceOptions& options = {});

}  // namespace qcluster
