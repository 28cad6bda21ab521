#include "qcluster/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qcluster {

void QuboProgram::validate() const {
  const auto n = linear.size();
  if (quadratic.rows() != n || quadratic.cols() != n) throw std::invalid_argument("QUBO matrix shape does not match linear vector");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (quadratic(i, j) != quadratic(j, i)) throw std::invalid_argument("QUBO matrix must be symmetric");
    }
  }
}

double QuboProgram::objective(const Bitstring& x) const {
  const auto n = linear.size();
  if (static_cast<Eigen::Index>(x.size()) != n) throw std::invalid_argument("bitstring length does not match QUBO size");
  double total = offset;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    total += linear(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x[static_cast<std::size_t>(j)] != 0) total += quadratic(i, j);
    }
  }
  return total;
}

double QuboProgram::objective(const Eigen::VectorXd& c) const {
  if (c.size() != linear.size()) throw std::invalid_argument("point dimension does not match QUBO size");
  return c.dot(quadratic * c) + linear.dot(c) + offset;
}

Eigen::VectorXd QuboProgram::gradient(const Eigen::VectorXd& c) const {
  if (c.size() != linear.size()) throw std::invalid_argument("point dimension does not match QUBO size");
  return 2.0 * (quadratic * c) + linear;
}

IsingHamiltonian::IsingHamiltonian(std::size_t n)
    : couplings_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
      fields_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))) {}

double IsingHamiltonian::coupling(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return couplings_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

void IsingHamiltonian::set_coupling(std::size_t i, std::size_t j, double value) {
  if (i == j || i >= size() || j >= size()) throw std::out_of_range("coupling indices must be distinct and < n");
  if (i > j) std::swap(i, j);
  couplings_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
  rebuild_terms();
}

void IsingHamiltonian::rebuild_terms() {
  terms_.clear();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      const double v = couplings_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v != 0.0) terms_.push_back({i, j, v});
    }
  }
}

double IsingHamiltonian::energy(std::span<const int> spins) const {
  if (spins.size() != size()) throw std::invalid_argument("spin vector length does not match Hamiltonian size");
  double e = offset_;
  for (const auto& t : terms_) e += t.value * spins[t.i] * spins[t.j];
  for (std::size_t i = 0; i < size(); ++i) e += fields_(static_cast<Eigen::Index>(i)) * spins[i];
  return e;
}

double IsingHamiltonian::energy(const Bitstring& x) const {
  if (x.size() != size()) throw std::invalid_argument("bitstring length does not match Hamiltonian size");
  std::vector<int> spins(size());
  for (std::size_t i = 0; i < size(); ++i) spins[i] = 1 - 2 * x[i];
  return energy(spins);
}

double IsingHamiltonian::basis_energy(std::uint64_t index) const {
  auto spin = [index](std::size_t q) { return ((index >> q) & 1u) != 0 ? -1.0 : 1.0; };
  double e = offset_;
  for (const auto& t : terms_) e += t.value * spin(t.i) * spin(t.j);
  for (std::size_t i = 0; i < size(); ++i) e += fields_(static_cast<Eigen::Index>(i)) * spin(i);
  return e;
}

std::vector<double> IsingHamiltonian::diagonal() const {
  if (size() > 30) throw std::out_of_range("Hamiltonian too large for a dense diagonal");
  const std::uint64_t dim = std::uint64_t{1} << size();
  std::vector<double> out(dim);
  for (std::uint64_t b = 0; b < dim; ++b) out[b] = basis_energy(b);
  return out;
}

double cut_value(const WeightMatrix& w, const Bitstring& x) {
  if (x.size() != w.size()) throw std::invalid_argument("bitstring length does not match graph size");
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (x[i] != x[j]) total += w(i, j);
    }
  }
  return total;
}

QuboProgram maxcut_to_qubo(const WeightMatrix& w) {
  // −cut(x) = Σ_{i<j} w_ij (2 x_i x_j − x_i − x_j); symmetric Q = w gives
  // xᵀQx = 2 Σ_{i<j} w_ij x_i x_j, and linear_i = −Σ_j w_ij.
  const auto n = static_cast<Eigen::Index>(w.size());
  QuboProgram q;
  q.quadratic = w.matrix();
  q.linear = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double degree = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) degree += w.matrix()(i, j);
    q.linear(i) = -degree;
  }
  q.offset = 0.0;
  return q;
}

IsingHamiltonian qubo_to_ising(const QuboProgram& qubo) {
  qubo.validate();
  const std::size_t n = qubo.size();
  IsingHamiltonian ham(n);
  const auto& Q = qubo.quadratic;
  double offset = qubo.offset;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    // Pair (i,j) appears twice in xᵀQx: 2 Q_ij x_i x_j = Q_ij (1 − z_i − z_j + z_i z_j)/2.
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row += Q(ii, static_cast<Eigen::Index>(j));
    }
    // Single-variable terms: (Q_ii + l_i) x_i = (Q_ii + l_i)(1 − z_i)/2.
    // Summed as ((row + Q_ii) + l_i) so MaxCut fields cancel to exactly 0.
    const double inner = (row + Q(ii, ii)) + qubo.linear(ii);
    ham.set_field(i, -0.5 * inner);
    offset += 0.5 * (Q(ii, ii) + qubo.linear(ii));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double qij = Q(ii, static_cast<Eigen::Index>(j));
      if (qij != 0.0) ham.set_coupling(i, j, 0.5 * qij);
      offset += 0.5 * qij;
    }
  }
  ham.set_offset(offset);
  return ham;
}

GroundState brute_force_solve(const IsingHamiltonian& ham, const BruteForceOptions& options) {
  const std::size_t n = ham.size();
  if (n > options.max_qubits) {
    throw std::out_of_range("brute-force solver capped at " + std::to_string(options.max_qubits) + " variables, got " +
                            std::to_string(n));
  }
  if (n == 0) return {Bitstring{}, ham.offset()};

  const std::uint64_t count = std::uint64_t{1} << n;
  // Enumerate in binary-value order; bit for vertex i is bit (n-1-i).
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t best_value = begin;
    double best_energy = INFINITY;
    for (std::uint64_t v = begin; v < end; ++v) {
      std::uint64_t index = 0;
      for (std::size_t i = 0; i < n; ++i) index |= ((v >> (n - 1 - i)) & 1u) << i;
      const double e = ham.basis_energy(index);
      if (e < best_energy) {
        best_energy = e;
        best_value = v;
      }
    }
    return std::pair{best_value, best_energy};
  };

  std::size_t threads = std::max<std::size_t>(1, options.threads);
  if (count < 4096) threads = 1;
  std::vector<std::pair<std::uint64_t, double>> partial(threads);
  if (threads == 1) {
    partial[0] = scan(0, count);
  } else {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(count, t * chunk);
      const std::uint64_t end = std::min(count, begin + chunk);
      workers.emplace_back([&, t, begin, end] { partial[t] = begin < end ? scan(begin, end) : std::pair{begin, double(INFINITY)}; });
    }
  }
  // Chunks are in ascending binary order, so strict < keeps the lowest value on ties.
  auto best = partial[0];
  for (std::size_t t = 1; t < partial.size(); ++t) {
    if (partial[t].second < best.second) best = partial[t];
  }
  return {Bitstring::from_binary_value(best.first, n), best.second};
}

}  // namespace qcluster
