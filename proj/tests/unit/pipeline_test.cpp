#include "qcluster/pipeline.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace qcluster {
namespace {

namespace fs = std::filesystem;

const fs::path kData = QCLUSTER_TEST_DATA_DIR;
const fs::path kTmp = QCLUSTER_TEST_TMP_DIR;

RunConfig quick_run(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.reps = 1;
  cfg.vqe_reps = 1;
  cfg.spsa.max_iters = 60;
  return cfg;
}

TEST(AgreementTest, Examples) {
  const std::vector<std::string> truth = {"e", "e", "s", "s", "s"};
  EXPECT_DOUBLE_EQ(agreement(Bitstring::parse("00111"), truth), 1.0);
  EXPECT_DOUBLE_EQ(agreement(Bitstring::parse("11000"), truth), 1.0);
  EXPECT_DOUBLE_EQ(agreement(Bitstring::parse("01011"), truth), 0.6);
  const std::vector<std::string> single = {"a", "a", "a"};
  EXPECT_DOUBLE_EQ(agreement(Bitstring::parse("010"), single), 2.0 / 3.0);
}

TEST(AgreementTest, Errors) {
  const std::vector<std::string> three = {"a", "b", "c"};
  EXPECT_THROW(agreement(Bitstring::parse("010"), three), std::invalid_argument);
  const std::vector<std::string> two = {"a", "b"};
  EXPECT_THROW(agreement(Bitstring::parse("010"), two), std::invalid_argument);
}

TEST(AgreementTest, InvariantUnderComplement) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    std::vector<std::string> truth(n);
    for (auto& t : truth) t = (rng() & 1u) ? "x" : "y";
    const auto bits = Bitstring::from_binary_value(rng() % (1u << n), n);
    const double a = agreement(bits, truth);
    EXPECT_DOUBLE_EQ(a, agreement(bits.complement(), truth));
    EXPECT_GE(a, 0.5);
    EXPECT_LE(a, 1.0);
  }
}

TEST(PipelineTest, ClassicalOnlyMatchesOracle) {
  std::mt19937_64 rng(8);
  const auto w = testing::random_weights(7, rng);
  auto cfg = quick_run(1);
  cfg.algorithms = {"classical"};
  const auto report = run_benchmark(w, cfg);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.results.empty());
  const auto oracle = testing::oracle_ising_minimum(qubo_to_ising(maxcut_to_qubo(w)));
  EXPECT_NEAR(report.brute_force.energy, oracle.energy, 1e-9);
  const auto& row = report.rows.front();
  EXPECT_EQ(row.name, "classical");
  EXPECT_EQ(row.assignment[0], 0);
  EXPECT_NEAR(row.solution_objective, -oracle.energy, 1e-9);
  EXPECT_EQ(report.row_labels.front(), "v0");
  EXPECT_FALSE(row.agreement.has_value());
}

TEST(PipelineTest, DeterministicAcrossRunsAndParallelism) {
  std::mt19937_64 rng(19);
  const auto w = testing::random_weights(8, rng);
  auto cfg = quick_run(4);
  const auto a = to_json(run_benchmark(w, cfg), false);
  const auto b = to_json(run_benchmark(w, cfg), false);
  EXPECT_EQ(a, b);
  cfg.parallel = true;
  EXPECT_EQ(to_json(run_benchmark(w, cfg), false), a);
}

TEST(PipelineTest, ReportsRespectVariationalBound) {
  std::mt19937_64 rng(23);
  const auto w = testing::random_weights(6, rng);
  const auto report = run_benchmark(w, quick_run(2));
  ASSERT_EQ(report.results.size(), 3u);
  for (const auto& r : report.results) {
    EXPECT_GE(r.energy, report.brute_force.energy - 1e-9) << to_string(r.kind);
    EXPECT_LE(r.cut_value, report.brute_force_cut + 1e-9);
  }
  EXPECT_EQ(report.rows.front().name, "classical");
}

TEST(PipelineTest, BundledDatasetWarmStartMatchesClassical) {
  RunConfig cfg;
  cfg.dataset = kData / "mtcars5.csv";
  cfg.class_column = "type";
  cfg.algorithms = {"classical", "ws_qaoa"};
  const auto report = run_benchmark(cfg);
  const auto* classical = report.row("classical");
  const auto* ws = report.row("ws_qaoa");
  ASSERT_NE(classical, nullptr);
  ASSERT_NE(ws, nullptr);
  EXPECT_EQ(classical->assignment.to_string(), "00111");
  EXPECT_NEAR(ws->solution_objective, classical->solution_objective, 1e-9);
  EXPECT_DOUBLE_EQ(ws->agreement.value(), 1.0);
  EXPECT_EQ(report.row_labels.front(), "Honda Civic");
}

TEST(PipelineTest, StageTaggedErrors) {
  RunConfig cfg;
  cfg.dataset = kTmp / "does-not-exist.csv";
  try {
    run_benchmark(cfg);
    FAIL() << "expected a load failure";
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(std::string(e.what()).rfind("[load] ", 0), 0u);
  }

  cfg = quick_run(1);
  cfg.algorithms = {"classical", "classical"};
  try {
    std::mt19937_64 rng(1);
    run_benchmark(testing::random_weights(3, rng), cfg);
    FAIL() << "expected a config failure";
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "config");
  }
}

TEST(RunConfigTest, JsonRoundTripAndOverrides) {
  RunConfig cfg;
  cfg.dataset = "cars.csv";
  cfg.class_column = "type";
  cfg.metric = Metric::euclidean;
  cfg.algorithms = {"classical", "qaoa"};
  cfg.reps = 2;
  cfg.shots = 512;
  cfg.seed = 11;
  cfg.relaxation.epsilon = 0.1;
  cfg.relaxation.num_starts = 8;
  const auto back = run_config_from_json(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));

  const auto partial = run_config_from_json(nlohmann::json{{"seed", 99}}, cfg);
  EXPECT_EQ(partial.seed, 99u);
  EXPECT_EQ(partial.reps, 2u);
  EXPECT_EQ(partial.metric, Metric::euclidean);
}

TEST(RunConfigTest, DerivedSeedsDifferPerAlgorithm) {
  RunConfig cfg;
  const auto q = cfg.algorithm_config(AlgorithmKind::qaoa);
  const auto v = cfg.algorithm_config(AlgorithmKind::vqe);
  EXPECT_NE(q.seed, v.seed);
  EXPECT_NE(q.spsa.seed, v.spsa.seed);
  EXPECT_EQ(q.relaxation.seed, v.relaxation.seed);
}

std::vector<std::pair<std::string, double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "bitstring,probability");
  std::vector<std::pair<std::string, double>> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(line.substr(0, comma), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

TEST(HistogramTest, UniformTwoQubits) {
  AlgorithmResult r;
  r.kind = AlgorithmKind::qaoa;
  r.probabilities = {0.25, 0.25, 0.25, 0.25};
  r.best_bitstring = Bitstring::parse("00");
  fs::create_directories(kTmp);
  const auto path = kTmp / "uniform_histogram.csv";
  export_histogram(r, path);
  const auto rows = read_csv(path);
  ASSERT_EQ(rows.size(), 4u);
  double total = 0.0;
  for (const auto& [bits, p] : rows) {
    EXPECT_DOUBLE_EQ(p, 0.25);
    total += p;
  }
  EXPECT_DOUBLE_EQ(total, 1.0);
  std::ifstream meta(kTmp / "uniform_histogram.json");
  const auto j = nlohmann::json::parse(meta);
  EXPECT_EQ(j.at("algorithm"), "qaoa");
  EXPECT_EQ(j.at("qubits"), 2);
}

TEST(HistogramTest, MaximumRowIsBestBitstring) {
  std::mt19937_64 rng(31);
  const auto w = testing::random_weights(4, rng);
  const auto ham = qubo_to_ising(maxcut_to_qubo(w));
  AlgorithmConfig cfg;
  cfg.qaoa_reps = 1;
  cfg.spsa.max_iters = 40;
  const auto r = run_algorithm(AlgorithmKind::ws_qaoa, ham, w, cfg);
  fs::create_directories(kTmp);
  const auto path = kTmp / "ws_histogram.csv";
  export_histogram(r, path);
  const auto rows = read_csv(path);
  ASSERT_EQ(rows.size(), 16u);
  auto best = rows.front();
  double total = 0.0;
  for (const auto& row : rows) {
    total += row.second;
    if (row.second > best.second || (row.second == best.second && row.first < best.first)) best = row;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(best.first, r.best_bitstring.to_string());
  EXPECT_DOUBLE_EQ(best.second, r.max_probability());
}

TEST(ReportTest, PrintsAllRows) {
  std::mt19937_64 rng(41);
  const auto report = run_benchmark(testing::random_weights(4, rng), quick_run(3));
  std::ostringstream out;
  print_report(out, report);
  for (const char* name : {"classical", "vqe", "qaoa", "ws_qaoa", "Energy", "Solution Objective"}) {
    EXPECT_NE(out.str().find(name), std::string::npos) << name;
  }
}

}  // namespace
}  // namespace qcluster
