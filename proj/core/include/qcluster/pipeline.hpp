#pragma once

#include "qcluster/algorithms.hpp"
#include "qcluster/datagraph.hpp"
#include "qcluster/transform.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcluster {

/// Error raised by the pipeline, tagged with the stage that failed
/// ("load", "weights", "brute-force", "ws_qaoa", ...).
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

inline constexpr std::string_view kClassical = "classical";

/// Everything a benchmark run needs. Per-component seeds are not read from
/// `spsa.seed`/`relaxation.seed`; they are derived from `seed` with
/// derive_seed(seed, "<algorithm>/spsa"), derive_seed(seed, "<algorithm>")
/// and derive_seed(seed, "relaxation").
struct RunConfig {
  std::filesystem::path dataset;
  std::string label_column = "model";
  std::optional<std::string> class_column;
  Metric metric = Metric::squared_euclidean;
  std::vector<std::string> algorithms = {"classical", "vqe", "qaoa", "ws_qaoa"};
  std::size_t reps = 3;
  std::size_t vqe_reps = 2;
  Entangler entangler = Entangler::linear_cz;
  SpsaConfig spsa;
  RelaxationConfig relaxation;
  std::size_t shots = 0;
  std::uint64_t seed = 7;
  std::optional<std::filesystem::path> output_dir;
  bool parallel = false;

  void validate() const;
  // Configuration for one algorithm with its derived seeds filled in.
  AlgorithmConfig algorithm_config(AlgorithmKind kind) const;
};

nlohmann::json to_json(const RunConfig& cfg);
// Keys present in `j` override the corresponding fields of `base`.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

struct AlgorithmRow {
  std::string name;
  Bitstring assignment;  // canonical: vertex 0 in cluster 0
  double energy = 0.0;
  double solution_objective = 0.0;
  double process_time = 0.0;  // seconds
  std::optional<double> agreement;
  double max_probability = 1.0;
};

struct BenchmarkReport {
  std::string dataset;
  std::uint64_t seed = 0;
  Metric metric = Metric::squared_euclidean;
  std::vector<std::string> row_labels;
  std::optional<std::vector<std::string>> class_labels;
  std::vector<std::string> features;
  std::vector<std::string> dropped_columns;
  GroundState brute_force;
  double brute_force_cut = 0.0;
  std::vector<AlgorithmRow> rows;        // classical first, then selection order
  std::vector<AlgorithmResult> results;  // one per quantum row, same order
  bool timings_contended = false;

  const AlgorithmRow* row(std::string_view name) const;
  const AlgorithmResult* result(AlgorithmKind kind) const;
};

/// Loads the dataset, standardizes, builds weights, and benchmarks.
BenchmarkReport run_benchmark(const RunConfig& cfg);

/// Benchmarks a prepared instance. Labels default to "v0", "v1", ...
BenchmarkReport run_benchmark(const WeightMatrix& w, const RunConfig& cfg, std::vector<std::string> row_labels = {},
                              std::optional<std::vector<std::string>> class_labels = std::nullopt);

/// Fraction of rows whose cluster matches the class, maximized over the two
/// cluster↔class mappings. `truth` must contain at most two distinct values.
double agreement(const Bitstring& assignment, std::span<const std::string> truth);

/// Writes the probability table CSV to `csv_path` and a metadata JSON next to
/// it (same stem, ".json").
void export_histogram(const AlgorithmResult& result, const std::filesystem::path& csv_path);

/// include_timing = false drops process_time and timings_contended.
nlohmann::json to_json(const BenchmarkReport& report, bool include_timing = true);
void print_report(std::ostream& out, const BenchmarkReport& report);

}  // namespace qcluster
