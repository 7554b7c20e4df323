#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "iraug/random.hpp"
#include "iraug/relevance.hpp"
#include "iraug/tabular.hpp"

namespace iraug {

/// Sizing of threshold-based resamplers: equalize the rare and normal
/// partitions, or invert their size ratio.
enum class PartitionMode { Balance, Extreme };

std::string_view to_string(PartitionMode m) noexcept;
PartitionMode parse_partition_mode(std::string_view name);

inline constexpr double kDefaultRelevanceThreshold = 0.8;

struct Partition {
  std::vector<std::size_t> rare;
  std::vector<std::size_t> normal;
};

/// Rare rows have relevance >= threshold. Throws EmptyRarePartition when no
/// row qualifies.
Partition partition(const Dataset& ds, const RelevanceFunction& rel, double threshold = kDefaultRelevanceThreshold);

/// Target sizes for the (rare, normal) partitions of combined strategies
/// (GN, SMOTER, SMOGN): balance gives each half of the data, extreme swaps
/// the partition proportions around that midpoint.
struct PartitionTargets {
  std::size_t rare;
  std::size_t normal;
};
PartitionTargets combined_targets(std::size_t n_rare, std::size_t n_normal, PartitionMode mode);

Dataset random_under(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, Rng& rng,
                     double threshold = kDefaultRelevanceThreshold);

Dataset random_over(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, Rng& rng,
                    double threshold = kDefaultRelevanceThreshold);

Dataset wercs(const Dataset& ds, const RelevanceFunction& rel, double over, double under, Rng& rng);

Dataset gaussian_noise(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, double delta, Rng& rng,
                       double threshold = kDefaultRelevanceThreshold);

Dataset smoter(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, std::size_t k, Rng& rng,
               double threshold = kDefaultRelevanceThreshold);

Dataset smogn(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, double delta, std::size_t k,
              Rng& rng, double threshold = kDefaultRelevanceThreshold);

/// Heterogeneous Euclidean-overlap metric over the non-target columns:
/// range-normalized differences for numeric, 0/1 mismatch for nominal.
class HeomDistance {
 public:
  explicit HeomDistance(const Dataset& ds);
  [[nodiscard]] double operator()(std::span<const double> a, std::span<const double> b) const;

 private:
  std::size_t target_;
  std::vector<bool> nominal_;
  std::vector<double> range_;
};

enum class SmognBranch { Interpolate, Noise };

/// SMOGN's per-case choice: interpolate when the neighbor is no farther than
/// half the median distance to the seed's k neighbors.
SmognBranch smogn_branch(double neighbor_distance, std::span<const double> knn_distances);

/// Interpolated case between `seed` and `neighbor` at `gap` in [0, 1]; the
/// target is the inverse-distance weighted mean of the two parents' targets.
std::vector<double> smoter_case(std::span<const double> seed, std::span<const double> neighbor, double gap,
                                const Dataset& schema, const HeomDistance& dist, Rng& rng);

}  // namespace iraug
