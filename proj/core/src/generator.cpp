#include "iraug/generator.hpp"

#include <cmath>
#include <numeric>

#include "iraug/error.hpp"
#include "iraug/relevance.hpp"
#include "iraug/stats.hpp"

namespace iraug {

void CartGenParams::validate() const {
  if (!(alpha >= 0)) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
  if (!(eta >= 0 && eta <= 1)) throw Error(ErrorCode::InvalidArgument, "eta must lie in [0, 1]");
  if (!(delta >= 0)) throw Error(ErrorCode::InvalidArgument, "delta must be non-negative");
  cart.validate();
}

namespace {
std::size_t pool_size(double eta, std::size_t n) {
  return static_cast<std::size_t>(std::llround(eta * static_cast<double>(n)));
}
}  // namespace

Pool resample_pool(const Dataset& ds, const SelectionWeights& weights, double eta, Rng& rng) {
  if (weights.probs.size() != ds.n_rows()) throw Error(ErrorCode::LengthMismatch, "weights do not match the dataset");
  if (!(eta >= 0 && eta <= 1)) throw Error(ErrorCode::InvalidArgument, "eta must lie in [0, 1]");
  const std::size_t target = pool_size(eta, ds.n_rows());
  Pool pool;
  if (target > 0) {
    const std::size_t n_seeds = (target + kReplicasPerSeed - 1) / kReplicasPerSeed;
    const auto seeds = weighted_draws(weights.probs, n_seeds, rng);
    pool.source.reserve(target);
    for (std::size_t s : seeds)
      for (std::size_t k = 0; k < kReplicasPerSeed && pool.source.size() < target; ++k) pool.source.push_back(s);
  }
  std::vector<bool> seen(ds.n_rows(), false);
  pool.duplicate.reserve(pool.source.size());
  for (std::size_t s : pool.source) {
    pool.duplicate.push_back(seen[s]);
    seen[s] = true;
  }
  pool.rows = ds.select_rows(pool.source);
  return pool;
}

Pool perturb_duplicates(Pool pool, double delta, const std::vector<double>& stds, Rng& rng) {
  if (!(delta >= 0)) throw Error(ErrorCode::InvalidArgument, "delta must be non-negative");
  if (delta == 0.0 || pool.size() == 0) return pool;
  if (stds.size() != pool.rows.n_cols()) throw Error(ErrorCode::LengthMismatch, "one std per column expected");
  std::vector<Column> cols = pool.rows.columns();
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t r = 0; r < pool.size(); ++r) {
    if (!pool.duplicate[r]) continue;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].is_nominal()) continue;
      cols[c].values[r] += delta * stds[c] * noise(rng);
    }
  }
  pool.rows = Dataset(std::move(cols), pool.rows.target_index());
  return pool;
}

std::vector<CartTree> fit_column_trees(const Dataset& pool_rows, const CartParams& cart) {
  std::vector<CartTree> trees;
  trees.reserve(pool_rows.n_cols());
  for (std::size_t j = 0; j < pool_rows.n_cols(); ++j) trees.push_back(CartTree::fit(pool_rows, j, cart));
  return trees;
}

Dataset synthesize(const Pool& pool, const CartParams& cart, Rng& rng) {
  if (pool.rows.n_rows() == 0) return pool.rows;
  return synthesize(pool, fit_column_trees(pool.rows, cart), rng);
}

Dataset synthesize(const Pool& pool, const std::vector<CartTree>& trees, Rng& rng) {
  const Dataset& base = pool.rows;
  if (base.n_rows() == 0) return base;
  if (trees.size() != base.n_cols()) throw Error(ErrorCode::LengthMismatch, "one tree per column is required");
  std::vector<std::vector<double>> working(base.n_rows());
  for (std::size_t r = 0; r < base.n_rows(); ++r) working[r] = base.row(r);
  for (std::size_t j = 0; j < base.n_cols(); ++j) {
    const auto& tree = trees[j];
    const auto observed = base.values(j);
    for (auto& row : working) row[j] = tree.sample_leaf(tree.leaf_of(row), observed, rng);
  }
  return base.with_rows(working);
}

std::vector<double> column_stds(const Dataset& ds) {
  std::vector<double> out(ds.n_cols(), 0.0);
  for (std::size_t c = 0; c < ds.n_cols(); ++c)
    if (!ds.column(c).is_nominal()) out[c] = stats::stddev(ds.values(c));
  return out;
}

SelectionWeights cartgen_weights(const Dataset& ds, const CartGenParams& params) {
  const auto y = ds.target();
  if (params.density == DensityMethod::Relevance) {
    const auto rel = build_relevance(y);
    return rarity_scores(y, params.density, params.alpha, &rel);
  }
  return rarity_scores(y, params.density, params.alpha);
}

AugmentedDataset cartgen_ir(const Dataset& ds, const CartGenParams& params) {
  params.validate();
  AugmentedDataset out;
  out.original = ds;
  if (pool_size(params.eta, ds.n_rows()) == 0) {
    out.synthetic = ds.select_rows(std::span<const std::size_t>{});
    out.combined = ds;
    out.provenance.assign(ds.n_rows(), Provenance::Original);
    return out;
  }
  Rng pool_rng(stats::mix_seed(params.seed, 1));
  Rng noise_rng(stats::mix_seed(params.seed, 2));
  Rng synth_rng(stats::mix_seed(params.seed, 3));

  const auto weights = cartgen_weights(ds, params);
  auto pool = resample_pool(ds, weights, params.eta, pool_rng);
  pool = perturb_duplicates(std::move(pool), params.delta, column_stds(ds), noise_rng);
  out.trees = fit_column_trees(pool.rows, params.cart);
  out.synthetic = synthesize(pool, out.trees, synth_rng);
  out.combined = ds.concat(out.synthetic);
  out.provenance.assign(ds.n_rows(), Provenance::Original);
  out.provenance.resize(out.combined.n_rows(), Provenance::Synthetic);
  return out;
}

}  // namespace iraug
