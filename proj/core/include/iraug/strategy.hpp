#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iraug/baselines.hpp"
#include "iraug/cart.hpp"
#include "iraug/generator.hpp"
#include "iraug/tabular.hpp"
#include "iraug/weighting.hpp"

namespace iraug {

enum class StrategyKind { None, RandomUnder, RandomOver, Wercs, GaussianNoise, Smoter, Smogn, CartGenIR };

/// CLI spelling: none, ru, ro, wercs, gn, smoter, smogn, cartgen-ir.
std::string_view to_string(StrategyKind k) noexcept;
StrategyKind parse_strategy(std::string_view name);

/// One data-level strategy with its hyperparameters. Fields that do not
/// apply to `kind` are ignored.
struct StrategyConfig {
  StrategyKind kind = StrategyKind::None;
  PartitionMode mode = PartitionMode::Balance;
  double over = 0.5;
  double under = 0.5;
  double delta = 0.0;
  std::size_t k = 5;
  double threshold = kDefaultRelevanceThreshold;
  double alpha = 1.0;
  double eta = 0.5;
  DensityMethod density = DensityMethod::Kde;
  CartParams cart{};

  /// Stable identifier used as the strategy key in result files, e.g.
  /// "CARTGen-IR(alpha=1.5,eta=0.5,density=kde,delta=0.001)".
  [[nodiscard]] std::string label() const;
};

struct StrategyOutput {
  Dataset data;
  /// Per output row; only CARTGen-IR distinguishes synthetic rows, the
  /// other strategies tag everything Original.
  std::vector<Provenance> provenance;
};

/// Generator settings equivalent to a CARTGen-IR strategy entry.
CartGenParams cartgen_params(const StrategyConfig& cfg, std::uint64_t seed);

/// Applies the strategy to a training table. Relevance-driven strategies
/// build their relevance function from `train`'s target.
StrategyOutput apply_strategy(const StrategyConfig& cfg, const Dataset& train, std::uint64_t seed);

/// Shortest round-trip decimal rendering, used in labels and CSV output.
std::string format_number(double v);

}  // namespace iraug
