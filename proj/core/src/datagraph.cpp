#include "qcluster/datagraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcluster {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// One CSV record; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field in CSV record: " + line);
  fields.push_back(trim(field));
  return fields;
}

double parse_number(const std::string& cell, std::size_t line_no, const std::string& column) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (cell.empty() || consumed != cell.size() || !std::isfinite(value)) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": column '" + column +
                                "' has non-numeric value '" + cell + "'");
  }
  return value;
}

}  // namespace

void FeatureTable::validate() const {
  const auto n = rows();
  if (n < 2) throw std::invalid_argument("feature table needs at least 2 rows");
  if (features() < 1) throw std::invalid_argument("feature table needs at least 1 feature column");
  if (row_labels.size() != n) throw std::invalid_argument("row label count does not match row count");
  if (feature_names.size() != features()) throw std::invalid_argument("feature name count does not match column count");
  if (class_labels && class_labels->size() != n) throw std::invalid_argument("class label count does not match row count");
}

WeightMatrix::WeightMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) throw std::invalid_argument("weight matrix must be square");
  for (Eigen::Index i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) throw std::invalid_argument("weight matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < w_.cols(); ++j) {
      const double v = w_(i, j);
      if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("weights must be finite and nonnegative");
      if (v != w_(j, i)) throw std::invalid_argument("weight matrix must be symmetric");
    }
  }
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::squared_euclidean:
      return "squared_euclidean";
    case Metric::euclidean:
      return "euclidean";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  if (text == "squared_euclidean" || text == "sqeuclidean") return Metric::squared_euclidean;
  if (text == "euclidean") return Metric::euclidean;
  throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

FeatureTable load_csv(const std::filesystem::path& path, std::string_view label_column,
                      std::optional<std::string_view> class_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_record(line);
      break;
    }
  }
  if (header.empty()) throw std::invalid_argument("dataset '" + path.string() + "' has no header row");
  if (!header[0].empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  auto find_column = [&](std::string_view name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("column '" + std::string(name) + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t label_idx = find_column(label_column);
  constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);
  const std::size_t class_idx = class_column ? find_column(*class_column) : kNoColumn;
  const bool has_class = class_idx != kNoColumn;

  FeatureTable table;
  std::vector<std::size_t> feature_idx;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_idx || c == class_idx) continue;
    feature_idx.push_back(c);
    table.feature_names.push_back(header[c]);
  }
  if (has_class) table.class_labels.emplace();

  std::vector<std::vector<double>> records;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_record(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                                  " fields, found " + std::to_string(fields.size()));
    }
    if (!seen.insert(fields[label_idx]).second) {
      throw std::invalid_argument("duplicate row label '" + fields[label_idx] + "'");
    }
    table.row_labels.push_back(fields[label_idx]);
    if (has_class) table.class_labels->push_back(fields[class_idx]);
    std::vector<double> row;
    row.reserve(feature_idx.size());
    for (auto c : feature_idx) row.push_back(parse_number(fields[c], line_no, header[c]));
    records.push_back(std::move(row));
  }

  if (records.size() < 2) throw std::invalid_argument("dataset needs at least 2 data rows");
  table.values.resize(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(feature_idx.size()));
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (std::size_t c = 0; c < feature_idx.size(); ++c) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = records[r][c];
    }
  }
  table.validate();
  return table;
}

FeatureTable standardize(const FeatureTable& table, std::vector<std::string>& dropped) {
  table.validate();
  const auto n = table.values.rows();
  const double denom = static_cast<double>(n - 1);

  std::vector<Eigen::Index> kept;
  std::vector<std::pair<double, double>> moments;
  for (Eigen::Index c = 0; c < table.values.cols(); ++c) {
    const auto col = table.values.col(c);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / denom;
    const double sd = std::sqrt(var);
    // Relative threshold: a column of identical large values leaves rounding residue.
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
      dropped.push_back(table.feature_names[static_cast<std::size_t>(c)]);
      continue;
    }
    kept.push_back(c);
    moments.emplace_back(mean, sd);
  }
  if (kept.empty()) throw std::invalid_argument("every feature column is constant; nothing to cluster on");

  FeatureTable out;
  out.row_labels = table.row_labels;
  out.class_labels = table.class_labels;
  out.values.resize(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto [mean, sd] = moments[k];
    out.values.col(static_cast<Eigen::Index>(k)) = (table.values.col(kept[k]).array() - mean) / sd;
    out.feature_names.push_back(table.feature_names[static_cast<std::size_t>(kept[k])]);
  }
  return out;
}

FeatureTable standardize(const FeatureTable& table) {
  std::vector<std::string> dropped;
  return standardize(table, dropped);
}

WeightMatrix build_weights(const FeatureTable& table, Metric metric) {
  table.validate();
  const auto n = table.values.rows();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sq = (table.values.row(i) - table.values.row(j)).squaredNorm();
      const double d = metric == Metric::euclidean ? std::sqrt(sq) : sq;
      w(i, j) = d;
      w(j, i) = d;
    }
  }
  return WeightMatrix(std::move(w));
}

}  // namespace qcluster
