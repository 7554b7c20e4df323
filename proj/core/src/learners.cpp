#include "iraug/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iraug/error.hpp"
#include "iraug/stats.hpp"

namespace iraug {

std::string_view to_string(MaxFeatures m) noexcept {
  switch (m) {
    case MaxFeatures::Sqrt: return "sqrt";
    case MaxFeatures::Log2: return "log2";
    case MaxFeatures::All: return "all";
  }
  return "sqrt";
}

MaxFeatures parse_max_features(std::string_view name) {
  if (name == "sqrt") return MaxFeatures::Sqrt;
  if (name == "log2") return MaxFeatures::Log2;
  if (name == "all") return MaxFeatures::All;
  throw Error(ErrorCode::InvalidArgument, "unknown max_features '" + std::string(name) + "'");
}

std::size_t features_per_node(MaxFeatures m, std::size_t p) {
  if (p == 0) return 0;
  const auto dp = static_cast<double>(p);
  double k = dp;
  if (m == MaxFeatures::Sqrt) k = std::ceil(std::sqrt(dp));
  if (m == MaxFeatures::Log2) k = std::ceil(std::log2(dp));
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, p);
}

Forest Forest::fit(const Dataset& train, const ForestParams& params) {
  if (params.n_estimators < 1) throw Error(ErrorCode::InvalidArgument, "a forest needs at least one tree");
  if (train.n_rows() == 0) throw Error(ErrorCode::EmptyInput, "cannot fit a forest on an empty training set");
  std::vector<std::size_t> features;
  for (std::size_t c = 0; c < train.n_cols(); ++c)
    if (c != train.target_index()) features.push_back(c);
  const std::size_t n = train.n_rows();
  Forest forest;
  forest.trees_.reserve(params.n_estimators);
  for (std::size_t t = 0; t < params.n_estimators; ++t) {
    Rng rng(stats::mix_seed(params.seed, t));
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (auto& r : rows) r = uniform_index(rng, n);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    const SplitOptions options{features_per_node(params.max_features, features.size()), rng()};
    forest.trees_.push_back(CartTree::fit(train, train.target_index(), features, rows, params.cart, options));
  }
  return forest;
}

double Forest::predict(std::span<const double> row) const {
  double s = 0.0;
  for (const auto& tree : trees_) s += tree.predict(row);
  return s / static_cast<double>(trees_.size());
}

std::vector<double> Forest::predict(const Dataset& ds) const {
  std::vector<double> out(ds.n_rows());
  for (std::size_t r = 0; r < ds.n_rows(); ++r) out[r] = predict(ds.row(r));
  return out;
}

std::string LearnerConfig::label() const {
  if (kind == LearnerKind::Cart) return "cart(min_leaf=" + std::to_string(cart.min_leaf) + ")";
  return "rf(n_estimators=" + std::to_string(n_estimators) + ",max_features=" + std::string(to_string(max_features)) + ")";
}

std::vector<double> fit_predict(const LearnerConfig& cfg, const Dataset& train, const Dataset& test,
                                std::uint64_t seed) {
  if (cfg.kind == LearnerKind::Cart) {
    const auto tree = CartTree::fit(train, train.target_index(), cfg.cart);
    std::vector<double> out(test.n_rows());
    for (std::size_t r = 0; r < test.n_rows(); ++r) out[r] = tree.predict(test.row(r));
    return out;
  }
  ForestParams params;
  params.n_estimators = cfg.n_estimators;
  params.max_features = cfg.max_features;
  params.cart = cfg.cart;
  params.seed = seed;
  return Forest::fit(train, params).predict(test);
}

}  // namespace iraug
