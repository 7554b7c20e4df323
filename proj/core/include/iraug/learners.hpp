#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iraug/cart.hpp"
#include "iraug/tabular.hpp"

namespace iraug {

enum class MaxFeatures { Sqrt, Log2, All };

std::string_view to_string(MaxFeatures m) noexcept;
MaxFeatures parse_max_features(std::string_view name);

/// Candidate features per node for `p` predictors (rounded up, at least 1).
std::size_t features_per_node(MaxFeatures m, std::size_t p);

struct ForestParams {
  std::size_t n_estimators = 100;
  MaxFeatures max_features = MaxFeatures::Sqrt;
  CartParams cart{.min_leaf = 1, .min_split = 2, .max_depth = std::nullopt};
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

/// Bagged regression trees with per-node feature subsampling.
class Forest {
 public:
  static Forest fit(const Dataset& train, const ForestParams& params);

  [[nodiscard]] double predict(std::span<const double> row) const;
  [[nodiscard]] std::vector<double> predict(const Dataset& ds) const;
  [[nodiscard]] const std::vector<CartTree>& trees() const noexcept { return trees_; }

 private:
  std::vector<CartTree> trees_;
};

enum class LearnerKind { RandomForest, Cart };

/// A learner choice with its hyperparameters.
struct LearnerConfig {
  LearnerKind kind = LearnerKind::RandomForest;
  std::size_t n_estimators = 100;
  MaxFeatures max_features = MaxFeatures::Sqrt;
  CartParams cart{.min_leaf = 1, .min_split = 2, .max_depth = std::nullopt};

  /// Stable identifier, e.g. "rf(n_estimators=100,max_features=sqrt)".
  [[nodiscard]] std::string label() const;
};

/// Fits the configured learner on `train` and predicts every row of `test`.
std::vector<double> fit_predict(const LearnerConfig& cfg, const Dataset& train, const Dataset& test,
                                std::uint64_t seed);

}  // namespace iraug
