#include "qcluster/pipeline.hpp"

#include "qcluster/seeding.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <set>

namespace qcluster {

namespace {

template <typename F>
auto staged(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

std::string_view to_string(StepRule rule) { return rule == StepRule::fixed ? "fixed" : "backtracking"; }

StepRule parse_step_rule(std::string_view text) {
  if (text == "fixed") return StepRule::fixed;
  if (text == "backtracking") return StepRule::backtracking;
  throw std::invalid_argument("unknown step rule '" + std::string(text) + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("at least one algorithm must be selected");
  std::set<std::string> seen;
  for (const auto& name : algorithms) {
    if (name != kClassical) parse_algorithm(name);
    if (!seen.insert(name).second) throw std::invalid_argument("algorithm '" + name + "' selected twice");
  }
  if (reps < 1) throw std::invalid_argument("QAOA depth (--reps) must be at least 1");
  if (vqe_reps < 1) throw std::invalid_argument("VQE reps must be at least 1");
  spsa.validate();
  relaxation.validate();
}

AlgorithmConfig RunConfig::algorithm_config(AlgorithmKind kind) const {
  const std::string name(to_string(kind));
  AlgorithmConfig cfg;
  cfg.qaoa_reps = reps;
  cfg.vqe_reps = vqe_reps;
  cfg.entangler = entangler;
  cfg.spsa = spsa;
  cfg.spsa.seed = derive_seed(seed, name + "/spsa");
  cfg.relaxation = relaxation;
  cfg.relaxation.seed = derive_seed(seed, "relaxation");
  cfg.shots = shots;
  cfg.seed = derive_seed(seed, name);
  return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j = {
      {"dataset", cfg.dataset.string()},
      {"label_column", cfg.label_column},
      {"class_column", cfg.class_column ? nlohmann::json(*cfg.class_column) : nlohmann::json(nullptr)},
      {"metric", to_string(cfg.metric)},
      {"algorithms", cfg.algorithms},
      {"reps", cfg.reps},
      {"vqe_reps", cfg.vqe_reps},
      {"entangler", to_string(cfg.entangler)},
      {"shots", cfg.shots},
      {"seed", cfg.seed},
      {"parallel", cfg.parallel},
      {"spsa",
       {{"max_iters", cfg.spsa.max_iters},
        {"a", cfg.spsa.a},
        {"c", cfg.spsa.c},
        {"A", cfg.spsa.A},
        {"alpha", cfg.spsa.alpha},
        {"gamma_exp", cfg.spsa.gamma_exp}}},
      {"relaxation",
       {{"epsilon", cfg.relaxation.epsilon},
        {"num_starts", cfg.relaxation.num_starts},
        {"max_iters", cfg.relaxation.max_iters},
        {"step_rule", to_string(cfg.relaxation.step_rule)},
        {"tol", cfg.relaxation.tol},
        {"threads", cfg.relaxation.threads}}},
  };
  if (cfg.output_dir) j["output_dir"] = cfg.output_dir->string();
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base) {
  RunConfig cfg = std::move(base);
  if (j.contains("dataset")) cfg.dataset = j.at("dataset").get<std::string>();
  if (j.contains("label_column")) cfg.label_column = j.at("label_column").get<std::string>();
  if (j.contains("class_column")) {
    cfg.class_column = j.at("class_column").is_null() ? std::nullopt
                                                      : std::optional<std::string>(j.at("class_column").get<std::string>());
  }
  if (j.contains("metric")) cfg.metric = parse_metric(j.at("metric").get<std::string>());
  if (j.contains("algorithms")) cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  if (j.contains("reps")) cfg.reps = j.at("reps").get<std::size_t>();
  if (j.contains("vqe_reps")) cfg.vqe_reps = j.at("vqe_reps").get<std::size_t>();
  if (j.contains("entangler")) cfg.entangler = parse_entangler(j.at("entangler").get<std::string>());
  if (j.contains("shots")) cfg.shots = j.at("shots").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("parallel")) cfg.parallel = j.at("parallel").get<bool>();
  if (j.contains("output_dir") && !j.at("output_dir").is_null()) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("spsa")) {
    const auto& s = j.at("spsa");
    cfg.spsa.max_iters = s.value("max_iters", cfg.spsa.max_iters);
    cfg.spsa.a = s.value("a", cfg.spsa.a);
    cfg.spsa.c = s.value("c", cfg.spsa.c);
    cfg.spsa.A = s.value("A", cfg.spsa.A);
    cfg.spsa.alpha = s.value("alpha", cfg.spsa.alpha);
    cfg.spsa.gamma_exp = s.value("gamma_exp", cfg.spsa.gamma_exp);
  }
  if (j.contains("relaxation")) {
    const auto& r = j.at("relaxation");
    cfg.relaxation.epsilon = r.value("epsilon", cfg.relaxation.epsilon);
    cfg.relaxation.num_starts = r.value("num_starts", cfg.relaxation.num_starts);
    cfg.relaxation.max_iters = r.value("max_iters", cfg.relaxation.max_iters);
    if (r.contains("step_rule")) cfg.relaxation.step_rule = parse_step_rule(r.at("step_rule").get<std::string>());
    cfg.relaxation.tol = r.value("tol", cfg.relaxation.tol);
    cfg.relaxation.threads = r.value("threads", cfg.relaxation.threads);
  }
  return cfg;
}

const AlgorithmRow* BenchmarkReport::row(std::string_view name) const {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const AlgorithmRow& r) { return r.name == name; });
  return it == rows.end() ? nullptr : &*it;
}

const AlgorithmResult* BenchmarkReport::result(AlgorithmKind kind) const {
  auto it = std::find_if(results.begin(), results.end(), [&](const AlgorithmResult& r) { return r.kind == kind; });
  return it == results.end() ? nullptr : &*it;
}

double agreement(const Bitstring& assignment, std::span<const std::string> truth) {
  if (assignment.size() != truth.size()) throw std::invalid_argument("assignment and ground truth lengths differ");
  if (truth.empty()) throw std::invalid_argument("ground truth is empty");
  std::map<std::string, std::uint8_t> classes;
  for (const auto& t : truth) {
    if (!classes.count(t)) {
      if (classes.size() == 2) throw std::invalid_argument("ground truth has more than two classes");
      classes.emplace(t, static_cast<std::uint8_t>(classes.size()));
    }
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) same += assignment[i] == classes.at(truth[i]) ? 1 : 0;
  const std::size_t best = std::max(same, truth.size() - same);
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

BenchmarkReport run_benchmark(const WeightMatrix& w, const RunConfig& cfg, std::vector<std::string> row_labels,
                              std::optional<std::vector<std::string>> class_labels) {
  staged("config", [&] { cfg.validate(); });
  const std::size_t n = w.size();
  if (row_labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) row_labels.push_back("v" + std::to_string(i));
  }
  if (row_labels.size() != n) throw PipelineError("config", "row label count does not match graph size");

  BenchmarkReport report;
  report.dataset = cfg.dataset.string();
  report.seed = cfg.seed;
  report.metric = cfg.metric;
  report.row_labels = std::move(row_labels);
  report.class_labels = std::move(class_labels);
  report.timings_contended = cfg.parallel;

  const IsingHamiltonian ham = staged("transform", [&] { return qubo_to_ising(maxcut_to_qubo(w)); });

  auto score = [&](const Bitstring& bits) -> std::optional<double> {
    if (!report.class_labels) return std::nullopt;
    return staged("metrics", [&] { return agreement(bits, *report.class_labels); });
  };

  {
    const auto t0 = std::chrono::steady_clock::now();
    report.brute_force = staged("brute-force", [&] { return brute_force_solve(ham); });
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.brute_force_cut = cut_value(w, report.brute_force.bits);
    AlgorithmRow row;
    row.name = std::string(kClassical);
    row.assignment = report.brute_force.bits.canonical();
    row.energy = report.brute_force.energy;
    row.solution_objective = report.brute_force_cut;
    row.process_time = elapsed;
    row.agreement = score(row.assignment);
    row.max_probability = 1.0;
    report.rows.push_back(std::move(row));
  }

  std::vector<AlgorithmKind> kinds;
  for (const auto& name : cfg.algorithms) {
    if (name != kClassical) kinds.push_back(parse_algorithm(name));
  }

  auto run_one = [&](AlgorithmKind kind) {
    return staged(std::string(to_string(kind)), [&] { return run_algorithm(kind, ham, w, cfg.algorithm_config(kind)); });
  };

  if (cfg.parallel && kinds.size() > 1) {
    std::vector<std::future<AlgorithmResult>> pending;
    for (auto kind : kinds) pending.push_back(std::async(std::launch::async, run_one, kind));
    for (auto& f : pending) report.results.push_back(f.get());
  } else {
    for (auto kind : kinds) report.results.push_back(run_one(kind));
  }

  for (const auto& res : report.results) {
    AlgorithmRow row;
    row.name = std::string(to_string(res.kind));
    row.assignment = res.best_bitstring.canonical();
    row.energy = res.energy;
    row.solution_objective = res.cut_value;
    row.process_time = res.wall_time;
    row.agreement = score(row.assignment);
    row.max_probability = res.max_probability();
    report.rows.push_back(std::move(row));
  }
  return report;
}

BenchmarkReport run_benchmark(const RunConfig& cfg) {
  staged("config", [&] { cfg.validate(); });
  std::optional<std::string_view> class_col;
  if (cfg.class_column) class_col = *cfg.class_column;
  const FeatureTable raw = staged("load", [&] { return load_csv(cfg.dataset, cfg.label_column, class_col); });
  std::vector<std::string> dropped;
  const FeatureTable table = staged("standardize", [&] { return standardize(raw, dropped); });
  const WeightMatrix w = staged("weights", [&] { return build_weights(table, cfg.metric); });

  auto report = run_benchmark(w, cfg, table.row_labels, table.class_labels);
  report.features = table.feature_names;
  report.dropped_columns = std::move(dropped);
  return report;
}

}  // namespace qcluster
