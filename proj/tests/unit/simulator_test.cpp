#include "qcluster/simulator.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qcluster {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

void expect_amplitudes(const Statevector& s, const std::vector<cd>& expected, double tol = 1e-12) {
  ASSERT_EQ(s.dimension(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(s[k].real(), expected[k].real(), tol) << "index " << k;
    EXPECT_NEAR(s[k].imag(), expected[k].imag(), tol) << "index " << k;
  }
}

Statevector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cd> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return Statevector::from_amplitudes(std::move(amps));
}

// Full 2^n x 2^n operator for a single-qubit gate, built by Kronecker
// products. Qubit n-1 is the leftmost factor under little-endian indexing.
Eigen::MatrixXcd embed(const Eigen::Matrix2cd& gate, std::size_t qubit, std::size_t n) {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = n; q-- > 0;) {
    const Eigen::MatrixXcd factor = q == qubit ? Eigen::MatrixXcd(gate) : Eigen::MatrixXcd::Identity(2, 2);
    op = Eigen::kroneckerProduct(op, factor).eval();
  }
  return op;
}

TEST(StatevectorTest, InitZero) {
  expect_amplitudes(Statevector::init_zero(1), {1, 0});
  expect_amplitudes(Statevector::init_zero(2), {1, 0, 0, 0});
  EXPECT_THROW(Statevector::init_zero(25), std::out_of_range);
  EXPECT_THROW(Statevector::init_zero(0), std::out_of_range);
}

TEST(StatevectorTest, SingleQubitGateExamples) {
  expect_amplitudes(Statevector::init_zero(1).apply_ry(0, kPi / 2), {kHalfRoot2, kHalfRoot2});
  expect_amplitudes(Statevector::init_zero(1).apply_h(0), {kHalfRoot2, kHalfRoot2});
  expect_amplitudes(Statevector::init_zero(1).apply_rx(0, kPi), {0, cd(0, -1)});
  expect_amplitudes(Statevector::init_zero(1).apply_ry(0, 0.0), {1, 0});
}

TEST(StatevectorTest, CzFlipsOnlyOneOne) {
  auto s = Statevector::init_zero(2).apply_rx(0, kPi).apply_rx(1, kPi);  // (-i)(-i)|11> = -|11>
  expect_amplitudes(s, {0, 0, 0, -1});
  s.apply_cz(0, 1);
  expect_amplitudes(s, {0, 0, 0, 1});
  EXPECT_THROW(s.apply_cz(1, 1), std::invalid_argument);
  EXPECT_THROW(s.apply_cz(0, 2), std::out_of_range);
}

TEST(StatevectorTest, GateInversesAndAlgebra) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s0 = random_state(4, rng);
    const std::size_t q = rng() % 4;
    const double a = angle(rng), b = angle(rng);

    auto s = s0;
    s.apply_ry(q, a).apply_ry(q, -a);
    expect_amplitudes(s, {s0.amplitudes().begin(), s0.amplitudes().end()});

    s = s0;
    s.apply_h(q).apply_h(q);
    expect_amplitudes(s, {s0.amplitudes().begin(), s0.amplitudes().end()});

    auto s1 = s0;
    s1.apply_rz(q, a).apply_rz(q, b);
    auto s2 = s0;
    s2.apply_rz(q, a + b);
    expect_amplitudes(s1, {s2.amplitudes().begin(), s2.amplitudes().end()});

    const std::size_t r = (q + 1 + rng() % 3) % 4;
    s1 = s0;
    s1.apply_cz(q, r);
    s2 = s0;
    s2.apply_cz(r, q);
    expect_amplitudes(s1, {s2.amplitudes().begin(), s2.amplitudes().end()});
  }
}

TEST(StatevectorTest, GatesMatchKroneckerOperators) {
  std::mt19937_64 rng(9);
  const std::size_t n = 3;
  const double t = 0.7;
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  Eigen::Matrix2cd ry, rx, rz;
  ry << c, -s, s, c;
  rx << c, cd(0, -s), cd(0, -s), c;
  rz << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2);
  for (std::size_t q = 0; q < n; ++q) {
    const auto psi = random_state(n, rng);
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(psi.amplitudes().data(), 8);
    for (auto [gate, which] : {std::pair{ry, 0}, std::pair{rx, 1}, std::pair{rz, 2}}) {
      const Eigen::VectorXcd expected = embed(gate, q, n) * v;
      auto out = psi;
      if (which == 0) out.apply_ry(q, t);
      if (which == 1) out.apply_rx(q, t);
      if (which == 2) out.apply_rz(q, t);
      expect_amplitudes(out, {expected.data(), expected.data() + 8});
    }
  }
}

TEST(StatevectorTest, NormPreservedOverRandomCircuits) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (std::size_t n : {1u, 3u, 8u}) {
    auto s = Statevector::init_zero(n);
    for (int g = 0; g < 1000; ++g) {
      const std::size_t q = rng() % n;
      switch (rng() % 5) {
        case 0: s.apply_h(q); break;
        case 1: s.apply_rx(q, angle(rng)); break;
        case 2: s.apply_ry(q, angle(rng)); break;
        case 3: s.apply_rz(q, angle(rng)); break;
        default:
          if (n > 1) s.apply_cz(q, (q + 1) % n);
      }
      ASSERT_LT(std::abs(s.norm_squared() - 1.0), 1e-9);
    }
  }
}

TEST(CostPhaseTest, IdentityInverseAndProbabilities) {
  std::mt19937_64 rng(6);
  const auto ham = qubo_to_ising(testing::random_qubo(3, rng));
  const auto s0 = random_state(3, rng);
  auto s = s0;
  s.apply_cost_phase(ham, 0.0);
  expect_amplitudes(s, {s0.amplitudes().begin(), s0.amplitudes().end()});
  s.apply_cost_phase(ham, 0.37);
  const auto p0 = s0.probabilities();
  const auto p1 = s.probabilities();
  for (std::size_t k = 0; k < p0.size(); ++k) EXPECT_NEAR(p0[k], p1[k], 1e-14);
  s.apply_cost_phase(ham, -0.37);
  expect_amplitudes(s, {s0.amplitudes().begin(), s0.amplitudes().end()});
  EXPECT_THROW(Statevector::init_zero(2).apply_cost_phase(ham, 0.1), std::invalid_argument);
}

TEST(CostPhaseTest, PerStatePhaseOnSingleEdge) {
  Eigen::MatrixXd w(2, 2);
  w << 0, 7, 7, 0;
  const auto ham = qubo_to_ising(maxcut_to_qubo(WeightMatrix(w)));
  auto s = Statevector::init_zero(2).apply_h(0).apply_h(1);
  const double gamma = 0.3;
  s.apply_cost_phase(ham, gamma);
  const double energies[] = {0, -7, -7, 0};
  for (std::size_t k = 0; k < 4; ++k) {
    const cd expected = 0.5 * std::polar(1.0, -gamma * energies[k]);
    EXPECT_NEAR(std::abs(s[k] - expected), 0.0, 1e-14);
  }
}

TEST(ExpectationTest, Examples) {
  Eigen::MatrixXd w(2, 2);
  w << 0, 7, 7, 0;
  const auto ham = qubo_to_ising(maxcut_to_qubo(WeightMatrix(w)));
  auto uniform = Statevector::init_zero(2).apply_h(0).apply_h(1);
  EXPECT_NEAR(uniform.expectation(ham), -3.5, 1e-12);

  auto basis = Statevector::init_zero(2).apply_rx(1, kPi);  // |x0=0, x1=1>
  EXPECT_NEAR(basis.expectation(ham), ham.energy(Bitstring::parse("01")), 1e-12);
}

TEST(ExpectationTest, VariationalBound) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto ham = qubo_to_ising(testing::random_qubo(n, rng));
    const double emin = testing::oracle_ising_minimum(ham).energy;
    EXPECT_GE(random_state(n, rng).expectation(ham), emin - 1e-9);
  }
}

TEST(SampleTest, BasisStateGetsAllShots) {
  const auto s = Statevector::init_zero(3).apply_rx(2, kPi);
  const auto counts = s.sample(1000, 5);
  ASSERT_EQ(counts.counts.size(), 1u);
  EXPECT_EQ(counts.counts.begin()->first.to_string(), "001");
  EXPECT_EQ(counts.counts.begin()->second, 1000u);
}

TEST(SampleTest, UniformQubitWithinFiveSigma) {
  const auto s = Statevector::init_zero(1).apply_h(0);
  const std::size_t shots = 100000;
  const auto counts = s.sample(shots, 2024);
  const double ones = static_cast<double>(counts.counts.at(Bitstring::parse("1")));
  const double sigma = std::sqrt(shots * 0.25);
  EXPECT_LT(std::abs(ones - shots / 2.0), 5 * sigma);
  std::size_t total = 0;
  for (const auto& [bits, c] : counts.counts) total += c;
  EXPECT_EQ(total, shots);
}

TEST(SampleTest, DeterministicForSeed) {
  std::mt19937_64 rng(3);
  const auto s = random_state(4, rng);
  EXPECT_EQ(s.sample(5000, 77).counts, s.sample(5000, 77).counts);
  EXPECT_NE(s.sample(5000, 77).counts, s.sample(5000, 78).counts);
  EXPECT_THROW(s.sample(0, 1), std::invalid_argument);
}

TEST(SampleTest, ShotEstimateMatchesExpectation) {
  std::mt19937_64 rng(8);
  const std::size_t n = 4;
  const auto ham = qubo_to_ising(testing::random_qubo(n, rng));
  const auto s = random_state(n, rng);
  const std::size_t shots = 100000;
  const auto counts = s.sample(shots, 99);
  double mean = 0.0, sq = 0.0;
  for (const auto& [bits, c] : counts.counts) {
    const double e = ham.energy(bits);
    mean += e * static_cast<double>(c);
    sq += e * e * static_cast<double>(c);
  }
  mean /= shots;
  const double var = sq / shots - mean * mean;
  const double se = std::sqrt(var / shots);
  EXPECT_LT(std::abs(mean - s.expectation(ham)), 4 * se);
}

TEST(ProbabilityExportTest, CsvFormat) {
  const auto s = Statevector::init_zero(2).apply_h(0).apply_h(1);
  std::ostringstream out;
  write_probability_csv(out, probability_table(s));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "bitstring,probability");
  const char* expected_bits[] = {"00", "10", "01", "11"};
  for (const char* bits : expected_bits) {
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line.substr(0, 3), std::string(bits) + ",");
    EXPECT_NEAR(std::stod(line.substr(3)), 0.25, 1e-15);
  }
}

}  // namespace
}  // namespace qcluster
