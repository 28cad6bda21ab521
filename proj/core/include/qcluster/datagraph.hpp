#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcluster {

/// n data rows by d real features, plus optional ground-truth class tags.
struct FeatureTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> feature_names;
  Eigen::MatrixXd values;  // n x d
  std::optional<std::vector<std::string>> class_labels;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t features() const noexcept { return static_cast<std::size_t>(values.cols()); }

  // Throws std::invalid_argument when the shape invariants do not hold.
  void validate() const;
};

/// Symmetric, zero-diagonal, nonnegative edge weights of a MaxCut instance.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  // Validates the invariants exactly (no tolerance) and throws on violation.
  explicit WeightMatrix(Eigen::MatrixXd w);

  std::size_t size() const noexcept { return static_cast<std::size_t>(w_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return w_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Eigen::MatrixXd& matrix() const noexcept { return w_; }

 private:
  Eigen::MatrixXd w_;
};

enum class Metric { squared_euclidean, euclidean };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

/// Reads a header-first CSV. `label_column` names the row-label column;
/// `class_column`, when given, is kept as ground truth. Every other column
/// must be numeric and becomes a feature, in file order.
FeatureTable load_csv(const std::filesystem::path& path, std::string_view label_column,
                      std::optional<std::string_view> class_column = std::nullopt);

/// Z-scores each feature with the sample (n-1) standard deviation. Columns
/// with zero variance are dropped; their names are appended to `dropped`.
FeatureTable standardize(const FeatureTable& table, std::vector<std::string>& dropped);
FeatureTable standardize(const FeatureTable& table);

/// Pairwise row distances as MaxCut weights.
WeightMatrix build_weights(const FeatureTable& table, Metric metric = Metric::squared_euclidean);

}  // namespace qcluster
