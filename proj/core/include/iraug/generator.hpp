#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iraug/cart.hpp"
#include "iraug/tabular.hpp"
#include "iraug/weighting.hpp"

namespace iraug {

struct CartGenParams {
  double alpha = 1.0;
  double eta = 0.5;
  DensityMethod density = DensityMethod::Kde;
  double delta = 0.0;
  CartParams cart{};
  std::uint64_t seed = 0;

  void validate() const;
};

/// Rows drawn by rarity, in draw order. `duplicate[i]` is set when the source
/// row of `rows[i]` was already drawn earlier in the pool.
struct Pool {
  Dataset rows;
  std::vector<std::size_t> source;
  std::vector<bool> duplicate;

  [[nodiscard]] std::size_t size() const noexcept { return source.size(); }
};

enum class Provenance { Original, Synthetic };

struct AugmentedDataset {
  Dataset original;
  Dataset synthetic;
  Dataset combined;
  std::vector<Provenance> provenance;
  /// Column trees fitted on the pool, in schema order. Empty when eta = 0.
  std::vector<CartTree> trees;
};

/// Synthetic samples generated per selected seed instance.
inline constexpr std::size_t kReplicasPerSeed = 5;

Pool resample_pool(const Dataset& ds, const SelectionWeights& weights, double eta, Rng& rng);

/// Adds N(0, (delta * std_col)^2) to every numeric cell of duplicate rows.
/// `stds` holds one entry per column (ignored for nominal columns).
Pool perturb_duplicates(Pool pool, double delta, const std::vector<double>& stds, Rng& rng);

/// Fits one tree per column of the pool (all other columns as predictors),
/// then regenerates a working copy of the pool column by column in schema
/// order, each cell drawn from the leaf its current row reaches.
Dataset synthesize(const Pool& pool, const CartParams& cart, Rng& rng);
Dataset synthesize(const Pool& pool, const std::vector<CartTree>& trees, Rng& rng);

/// The per-column trees used by `synthesize`, exposed for inspection.
std::vector<CartTree> fit_column_trees(const Dataset& pool_rows, const CartParams& cart);

/// Rarity scoring, weighted resampling, duplicate perturbation and column-wise
/// CART synthesis. Original rows are kept; synthetic rows are appended.
AugmentedDataset cartgen_ir(const Dataset& ds, const CartGenParams& params);

/// Selection weights for `ds`'s target under `params` (builds the relevance
/// function when the method needs it).
SelectionWeights cartgen_weights(const Dataset& ds, const CartGenParams& params);

/// Sample standard deviation per column (zero for nominal columns).
std::vector<double> column_stds(const Dataset& ds);

}  // namespace iraug
