#include "qcluster/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qcluster {

nlohmann::json to_json(const BenchmarkReport& report, bool include_timing) {
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json by_label = nlohmann::json::object();
    for (std::size_t i = 0; i < report.row_labels.size(); ++i) by_label[report.row_labels[i]] = r.assignment[i];
    nlohmann::json row = {
        {"name", r.name},
        {"assignment", r.assignment.to_string()},
        {"clusters", by_label},
        {"energy", r.energy},
        {"solution_objective", r.solution_objective},
        {"agreement", r.agreement ? nlohmann::json(*r.agreement) : nlohmann::json(nullptr)},
        {"max_probability", r.max_probability},
    };
    if (include_timing) row["process_time"] = r.process_time;
    rows.push_back(std::move(row));
  }
  nlohmann::json out = {
      {"dataset", report.dataset},
      {"seed", report.seed},
      {"metric", to_string(report.metric)},
      {"rows", report.row_labels},
      {"classes", report.class_labels ? nlohmann::json(*report.class_labels) : nlohmann::json(nullptr)},
      {"features", report.features},
      {"dropped_columns", report.dropped_columns},
      {"brute_force",
       {{"bitstring", report.brute_force.bits.to_string()},
        {"energy", report.brute_force.energy},
        {"cut_value", report.brute_force_cut}}},
      {"algorithms", rows},
  };
  if (include_timing) out["timings_contended"] = report.timings_contended;
  return out;
}

void print_report(std::ostream& out, const BenchmarkReport& report) {
  std::size_t label_width = 20;
  for (const auto& l : report.row_labels) label_width = std::max(label_width, l.size() + 2);
  constexpr int kCol = 14;

  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::left << std::setw(static_cast<int>(label_width)) << "" << std::setw(10) << "Type";
  for (const auto& r : report.rows) out << std::setw(kCol) << r.name;
  out << '\n';
  for (std::size_t i = 0; i < report.row_labels.size(); ++i) {
    out << std::setw(static_cast<int>(label_width)) << report.row_labels[i] << std::setw(10)
        << (report.class_labels ? (*report.class_labels)[i] : std::string("-"));
    for (const auto& r : report.rows) out << std::setw(kCol) << static_cast<int>(r.assignment[i]);
    out << '\n';
  }
  out << std::fixed << std::setprecision(3);
  auto metric_line = [&](const char* name, auto getter) {
    out << std::setw(static_cast<int>(label_width)) << name << std::setw(10) << "";
    for (const auto& r : report.rows) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << getter(r);
      out << std::setw(kCol) << cell.str();
    }
    out << '\n';
  };
  metric_line("Energy", [](const AlgorithmRow& r) { return r.energy; });
  metric_line("Solution Objective", [](const AlgorithmRow& r) { return r.solution_objective; });
  metric_line("process time:", [](const AlgorithmRow& r) { return r.process_time; });
  metric_line("max probability", [](const AlgorithmRow& r) { return r.max_probability; });
  if (report.class_labels) metric_line("agreement", [](const AlgorithmRow& r) { return r.agreement.value_or(0.0); });
  if (report.timings_contended) out << "(timings measured with algorithms running concurrently)\n";
  out.flags(flags);
  out.precision(precision);
}

void export_histogram(const AlgorithmResult& result, const std::filesystem::path& csv_path) {
  if (result.probabilities.empty()) throw std::invalid_argument("result carries no probability table");
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());

  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write histogram '" + csv_path.string() + "'");
  const auto table = result.probability_table();
  write_probability_csv(csv, table);
  if (!csv) throw std::runtime_error("failed while writing histogram '" + csv_path.string() + "'");

  auto meta_path = csv_path;
  meta_path.replace_extension(".json");
  std::ofstream meta(meta_path);
  if (!meta) throw std::runtime_error("cannot write histogram metadata '" + meta_path.string() + "'");
  const nlohmann::json j = {
      {"algorithm", to_string(result.kind)},
      {"seed", result.seed},
      {"depth", result.depth},
      {"shots", result.shots},
      {"qubits", result.qubits()},
      {"best_bitstring", result.best_bitstring.to_string()},
      {"max_probability", result.max_probability()},
      {"csv", csv_path.filename().string()},
      {"bit_order", "character i is qubit/vertex i"},
  };
  meta << j.dump(2) << '\n';
  if (!meta) throw std::runtime_error("failed while writing histogram metadata '" + meta_path.string() + "'");
}

}  // namespace qcluster
