#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iraug/random.hpp"
#include "iraug/tabular.hpp"

namespace iraug {

/// Stopping rules for tree induction.
struct CartParams {
  std::size_t min_leaf = 5;
  std::size_t min_split = 10;
  std::optional<std::size_t> max_depth;

  void validate() const;
};

/// Per-node feature subsampling for forests. Zero means every feature.
struct SplitOptions {
  std::size_t features_per_node = 0;
  std::uint64_t seed = 0;
};

/// Numeric rule: value <= threshold goes left. Nominal rule: `side[code]` is
/// 1 for left, 2 for right and 0 for categories absent at fit time.
struct SplitRule {
  std::size_t feature = 0;
  bool nominal = false;
  double threshold = 0;
  std::vector<std::uint8_t> side;

  [[nodiscard]] bool operator==(const SplitRule&) const = default;
};

struct CartNode {
  std::optional<SplitRule> split;
  std::size_t left = 0;
  std::size_t right = 0;
  /// Impurity decrease of this node's split (SSE or n-weighted Gini).
  double gain = 0;
  std::size_t n_rows = 0;
  /// Leaves only: dataset rows that reached the leaf during fitting.
  std::vector<std::size_t> rows;
  double prediction = 0;

  [[nodiscard]] bool is_leaf() const noexcept { return !split.has_value(); }
  [[nodiscard]] bool operator==(const CartNode&) const = default;
};

using LeafId = std::size_t;

/// Binary CART for one target column. Numeric targets use SSE reduction,
/// nominal targets use Gini impurity reduction. Leaves keep the training rows
/// that reached them so the tree can be used as a conditional sampler.
class CartTree {
 public:
  /// Fits on `rows` of `data` (repeats allowed) predicting `target_col` from
  /// `feature_cols`.
  static CartTree fit(const Dataset& data, std::size_t target_col, std::span<const std::size_t> feature_cols,
                      std::span<const std::size_t> rows, const CartParams& params, const SplitOptions& options = {});

  /// Every other column as a feature, every row as training data.
  static CartTree fit(const Dataset& data, std::size_t target_col, const CartParams& params);

  /// `row` holds one cell per dataset column.
  [[nodiscard]] double predict(std::span<const double> row) const;
  [[nodiscard]] LeafId leaf_of(std::span<const double> row) const;

  /// Draws uniformly with replacement among the leaf's training rows and
  /// returns that row's entry of `target_values`.
  double sample_leaf(LeafId leaf, std::span<const double> target_values, Rng& rng) const;

  [[nodiscard]] const CartNode& node(std::size_t id) const { return nodes_.at(id); }
  [[nodiscard]] const std::vector<CartNode>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::vector<LeafId> leaves() const;
  [[nodiscard]] std::size_t target_column() const noexcept { return target_col_; }
  [[nodiscard]] ColumnKind target_kind() const noexcept { return target_kind_; }
  [[nodiscard]] const std::vector<std::size_t>& feature_columns() const noexcept { return features_; }

  [[nodiscard]] bool operator==(const CartTree&) const = default;

 private:
  std::vector<CartNode> nodes_;
  std::size_t target_col_ = 0;
  ColumnKind target_kind_ = ColumnKind::Numeric;
  std::vector<std::size_t> features_;
};

}  // namespace iraug
