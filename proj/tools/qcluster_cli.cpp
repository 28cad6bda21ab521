// qcluster: MaxCut clustering with QAOA, warm-start QAOA and VQE on a
// statevector simulator, checked against exhaustive search.

#include <CLI11.hpp>

#include "qcluster/algorithms.hpp"
#include "qcluster/pipeline.hpp"
#include "qcluster/relaxation.hpp"
#include "qcluster/transform.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using qcluster::PipelineError;
using qcluster::RunConfig;

#ifndef QCLUSTER_DEFAULT_DATASET
#define QCLUSTER_DEFAULT_DATASET "data/mtcars5.csv"
#endif

// Flags shared by every data-driven subcommand. Values stay unset unless the
// user passes them so that they can override a --config file.
struct CommonFlags {
  std::string config;
  std::string dataset;
  std::string label_column;
  std::string class_column;
  std::string metric;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t reps = 0;
  std::size_t vqe_reps = 0;
  std::string entangler;
  std::size_t shots = 0;
  double relax_epsilon = 0.0;
  std::size_t relax_starts = 0;
  std::size_t relax_iters = 0;
  std::size_t spsa_iters = 0;
  std::vector<std::string> algos;

  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app, bool with_algo_list) {
    opts["config"] = app->add_option("--config", config, "JSON run configuration; flags override its values");
    opts["dataset"] = app->add_option("--dataset", dataset, "CSV dataset (default: bundled 5-car extract)");
    opts["label"] = app->add_option("--label-column", label_column, "row-label column (default: model)");
    opts["class"] = app->add_option("--class-column", class_column, "ground-truth class column");
    opts["metric"] = app->add_option("--metric", metric, "squared_euclidean | euclidean");
    opts["seed"] = app->add_option("--seed", seed, "master seed (default: 7)");
    opts["out"] = app->add_option("--out", out, "output directory");
    opts["reps"] = app->add_option("--reps", reps, "QAOA depth p (default: 3)");
    opts["vqe_reps"] = app->add_option("--vqe-reps", vqe_reps, "VQE entangling layers (default: 2)");
    opts["entangler"] = app->add_option("--entangler", entangler, "linear_cz | full_cz");
    opts["shots"] = app->add_option("--shots", shots, "sample this many shots instead of exact argmax");
    opts["eps"] = app->add_option("--relax-epsilon", relax_epsilon, "warm-start regularization epsilon (default: 0.25)");
    opts["starts"] = app->add_option("--relax-starts", relax_starts, "relaxation multi-start count (default: 32)");
    opts["riters"] = app->add_option("--relax-iters", relax_iters, "relaxation iterations per start (default: 1000)");
    opts["siters"] = app->add_option("--spsa-iters", spsa_iters, "SPSA iterations (default: 300)");
    if (with_algo_list) {
      opts["algo"] = app->add_option("--algo", algos, "algorithms: classical, qaoa, ws_qaoa, vqe")->delimiter(',');
    } else {
      opts["algo"] = app->add_option("--algo", algos, "qaoa | ws_qaoa | vqe")->expected(1);
    }
  }

  bool given(const std::string& key) const { return opts.at(key)->count() > 0; }

  RunConfig resolve() const {
    RunConfig cfg;
    bool dataset_set = false;
    if (given("config")) {
      std::ifstream in(config);
      if (!in) throw PipelineError("config", "cannot open config file '" + config + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        throw PipelineError("config", std::string("invalid JSON: ") + e.what());
      }
      cfg = qcluster::run_config_from_json(j, cfg);
      dataset_set = j.contains("dataset");
    }
    try {
      if (given("dataset")) {
        cfg.dataset = dataset;
        dataset_set = true;
      }
      if (!dataset_set) {
        cfg.dataset = QCLUSTER_DEFAULT_DATASET;
        if (!cfg.class_column) cfg.class_column = "type";
      }
      if (given("label")) cfg.label_column = label_column;
      if (given("class")) cfg.class_column = class_column;
      if (given("metric")) cfg.metric = qcluster::parse_metric(metric);
      if (given("seed")) cfg.seed = seed;
      if (given("out")) cfg.output_dir = out;
      if (given("reps")) cfg.reps = reps;
      if (given("vqe_reps")) cfg.vqe_reps = vqe_reps;
      if (given("entangler")) cfg.entangler = qcluster::parse_entangler(entangler);
      if (given("shots")) cfg.shots = shots;
      if (given("eps")) cfg.relaxation.epsilon = relax_epsilon;
      if (given("starts")) cfg.relaxation.num_starts = relax_starts;
      if (given("riters")) cfg.relaxation.max_iters = relax_iters;
      if (given("siters")) cfg.spsa.max_iters = spsa_iters;
      if (given("algo")) cfg.algorithms = algos;
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError("config", e.what());
    }
    return cfg;
  }
};

struct Instance {
  qcluster::FeatureTable table;
  qcluster::WeightMatrix weights;
  qcluster::IsingHamiltonian ham;
};

Instance load_instance(const RunConfig& cfg) {
  auto stage = [](const char* name, auto&& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      throw PipelineError(name, e.what());
    }
  };
  std::optional<std::string_view> cls;
  if (cfg.class_column) cls = *cfg.class_column;
  auto raw = stage("load", [&] { return qcluster::load_csv(cfg.dataset, cfg.label_column, cls); });
  std::vector<std::string> dropped;
  auto table = stage("standardize", [&] { return qcluster::standardize(raw, dropped); });
  for (const auto& c : dropped) std::cerr << "warning: dropped constant feature column '" << c << "'\n";
  auto w = stage("weights", [&] { return qcluster::build_weights(table, cfg.metric); });
  auto ham = stage("transform", [&] { return qcluster::qubo_to_ising(qcluster::maxcut_to_qubo(w)); });
  return {std::move(table), std::move(w), std::move(ham)};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw PipelineError("output", "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

void print_assignment(const Instance& inst, const qcluster::Bitstring& bits) {
  for (std::size_t i = 0; i < inst.table.row_labels.size(); ++i) {
    std::cout << "  " << std::left << std::setw(24) << inst.table.row_labels[i];
    if (inst.table.class_labels) std::cout << std::setw(10) << (*inst.table.class_labels)[i];
    std::cout << static_cast<int>(bits[i]) << '\n';
  }
}

int cmd_cluster(const CommonFlags& flags) {
  RunConfig cfg = flags.resolve();
  const auto name = flags.given("algo") ? cfg.algorithms.front() : std::string("ws_qaoa");
  const auto kind = [&] {
    try {
      return qcluster::parse_algorithm(name);
    } catch (const std::exception& e) {
      throw PipelineError("config", e.what());
    }
  }();
  cfg.algorithms = {name};
  const auto inst = load_instance(cfg);
  qcluster::AlgorithmResult result;
  try {
    result = qcluster::run_algorithm(kind, inst.ham, inst.weights, cfg.algorithm_config(kind));
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
  const auto canonical = result.best_bitstring.canonical();
  std::cout << name << " on " << cfg.dataset.string() << " (seed " << cfg.seed << ")\n";
  print_assignment(inst, canonical);
  std::cout << "energy:             " << result.energy << '\n'
            << "solution objective: " << result.cut_value << '\n'
            << "max probability:    " << result.max_probability() << '\n'
            << "process time (s):   " << result.wall_time << '\n';
  if (inst.table.class_labels) std::cout << "agreement:          " << qcluster::agreement(canonical, *inst.table.class_labels) << '\n';
  if (cfg.output_dir) {
    write_json(*cfg.output_dir / (name + "_result.json"), qcluster::to_json(result));
    qcluster::export_histogram(result, *cfg.output_dir / (name + "_histogram.csv"));
  }
  return 0;
}

int cmd_benchmark(const CommonFlags& flags, bool parallel) {
  RunConfig cfg = flags.resolve();
  cfg.parallel = cfg.parallel || parallel;
  const auto report = qcluster::run_benchmark(cfg);
  qcluster::print_report(std::cout, report);
  if (cfg.output_dir) {
    try {
      write_json(*cfg.output_dir / "report.json", qcluster::to_json(report));
      write_json(*cfg.output_dir / "config.json", qcluster::to_json(cfg));
      for (const auto& res : report.results) {
        const std::string name(qcluster::to_string(res.kind));
        write_json(*cfg.output_dir / (name + "_result.json"), qcluster::to_json(res));
        qcluster::export_histogram(res, *cfg.output_dir / (name + "_histogram.csv"));
      }
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError("output", e.what());
    }
  }
  return 0;
}

int cmd_relax(const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const auto inst = load_instance(cfg);
  auto rcfg = cfg.algorithm_config(qcluster::AlgorithmKind::ws_qaoa).relaxation;
  qcluster::RelaxedSolution sol;
  try {
    sol = qcluster::relax_qubo(qcluster::maxcut_to_qubo(inst.weights), rcfg);
  } catch (const std::exception& e) {
    throw PipelineError("relaxation", e.what());
  }
  std::cout << "c* (epsilon " << sol.epsilon << "):\n";
  for (std::size_t i = 0; i < inst.table.row_labels.size(); ++i) {
    std::cout << "  " << std::left << std::setw(24) << inst.table.row_labels[i] << sol.c_star(static_cast<Eigen::Index>(i)) << '\n';
  }
  std::cout << "value (clipped):    " << sol.value << '\n'
            << "value (box):        " << sol.box_value << '\n'
            << "rounded:            " << qcluster::round_relaxed(sol).to_string() << '\n'
            << "starts used:        " << sol.starts_used << " (best " << sol.best_start << ", "
            << (sol.converged ? "converged" : "iteration limit") << ")\n";
  if (cfg.output_dir) write_json(*cfg.output_dir / "relaxation.json", qcluster::to_json(sol));
  return 0;
}

int cmd_brute_force(const CommonFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const auto inst = load_instance(cfg);
  qcluster::GroundState gs;
  try {
    gs = qcluster::brute_force_solve(inst.ham);
  } catch (const std::exception& e) {
    throw PipelineError("brute-force", e.what());
  }
  const double cut = qcluster::cut_value(inst.weights, gs.bits);
  std::cout << "brute-force minimum on " << cfg.dataset.string() << '\n';
  print_assignment(inst, gs.bits.canonical());
  std::cout << "bitstring:          " << gs.bits.to_string() << '\n'
            << "energy:             " << gs.energy << '\n'
            << "solution objective: " << cut << '\n';
  if (cfg.output_dir) {
    write_json(*cfg.output_dir / "brute_force.json",
               {{"bitstring", gs.bits.to_string()}, {"energy", gs.energy}, {"cut_value", cut}});
  }
  return 0;
}

int cmd_histogram(const std::string& result_path, const std::string& out) {
  std::ifstream in(result_path);
  if (!in) throw PipelineError("histogram", "cannot open result file '" + result_path + "'");
  qcluster::AlgorithmResult result;
  try {
    nlohmann::json j;
    in >> j;
    result = qcluster::algorithm_result_from_json(j);
  } catch (const std::exception& e) {
    throw PipelineError("histogram", e.what());
  }
  std::filesystem::path target = out;
  if (target.empty() || std::filesystem::is_directory(target) || !target.has_extension()) {
    target /= std::string(qcluster::to_string(result.kind)) + "_histogram.csv";
  }
  try {
    qcluster::export_histogram(result, target);
  } catch (const std::exception& e) {
    throw PipelineError("histogram", e.what());
  }
  std::cout << "wrote " << target.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MaxCut clustering with QAOA, warm-start QAOA and VQE on a statevector simulator"};
  app.require_subcommand(1);

  CommonFlags cluster_flags, bench_flags, relax_flags, brute_flags;
  auto* cluster = app.add_subcommand("cluster", "run one algorithm on one dataset");
  cluster_flags.attach(cluster, false);
  auto* bench = app.add_subcommand("benchmark", "compare algorithms against the brute-force baseline");
  bench_flags.attach(bench, true);
  bool parallel = false;
  bench->add_flag("--parallel", parallel, "run algorithms concurrently (timings become contended)");
  auto* relax = app.add_subcommand("relax", "solve the continuous relaxation and print c*");
  relax_flags.attach(relax, false);
  auto* brute = app.add_subcommand("brute-force", "exhaustive classical baseline");
  brute_flags.attach(brute, false);
  auto* hist = app.add_subcommand("histogram", "re-export the probability table of a saved result");
  std::string result_path, hist_out;
  hist->add_option("--result", result_path, "result JSON written by cluster/benchmark")->required();
  hist->add_option("--out", hist_out, "output CSV path or directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cluster) return cmd_cluster(cluster_flags);
    if (*bench) return cmd_benchmark(bench_flags, parallel);
    if (*relax) return cmd_relax(relax_flags);
    if (*brute) return cmd_brute_force(brute_flags);
    if (*hist) return cmd_histogram(result_path, hist_out);
  } catch (const PipelineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: [internal] " << e.what() << '\n';
    return 1;
  }
  return 0;
}
