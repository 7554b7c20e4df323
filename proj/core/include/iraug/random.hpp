#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace iraug {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// `count` indices drawn with replacement, proportionally to `weights`.
std::vector<std::size_t> weighted_draws(std::span<const double> weights, std::size_t count, Rng& rng);

/// `count` distinct indices drawn without replacement, proportionally to
/// `weights` (exponential-key method). Zero-weight indices come last, in
/// index order.
std::vector<std::size_t> weighted_without_replacement(std::span<const double> weights, std::size_t count, Rng& rng);

/// `count` distinct indices of [0, n), uniformly without replacement.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng);

}  // namespace iraug
