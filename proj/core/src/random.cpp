#include "iraug/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "iraug/error.hpp"

namespace iraug {

std::vector<std::size_t> weighted_draws(std::span<const double> weights, std::size_t count, Rng& rng) {
  if (weights.empty()) throw Error(ErrorCode::EmptyInput, "weighted draw from an empty population");
  std::vector<double> cumulative(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0)) throw Error(ErrorCode::InvalidArgument, "negative or NaN sampling weight");
    total += weights[i];
    cumulative[i] = total;
  }
  if (!(total > 0)) throw Error(ErrorCode::InvalidArgument, "sampling weights sum to zero");
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    auto idx = static_cast<std::size_t>(it - cumulative.begin());
    while (weights[idx] == 0 && idx > 0) --idx;  // never land on a zero-weight entry
    out.push_back(idx);
  }
  return out;
}

std::vector<std::size_t> weighted_without_replacement(std::span<const double> weights, std::size_t count, Rng& rng) {
  const std::size_t n = weights.size();
  count = std::min(count, n);
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    key[i] = weights[i] > 0 ? -std::log1p(-u) / weights[i] : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  order.resize(count);
  return order;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng) {
  count = std::min(count, n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_index(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace iraug
