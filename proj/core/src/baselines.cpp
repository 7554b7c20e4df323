#include "iraug/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iraug/error.hpp"
#include "iraug/generator.hpp"
#include "iraug/stats.hpp"

namespace iraug {

std::string_view to_string(PartitionMode m) noexcept {
  return m == PartitionMode::Balance ? "balance" : "extreme";
}

PartitionMode parse_partition_mode(std::string_view name) {
  if (name == "balance") return PartitionMode::Balance;
  if (name == "extreme") return PartitionMode::Extreme;
  throw Error(ErrorCode::InvalidArgument, "unknown partition mode '" + std::string(name) + "'");
}

Partition partition(const Dataset& ds, const RelevanceFunction& rel, double threshold) {
  Partition p;
  const auto y = ds.target();
  for (std::size_t r = 0; r < y.size(); ++r) (rel(y[r]) >= threshold ? p.rare : p.normal).push_back(r);
  if (p.rare.empty()) throw Error(ErrorCode::EmptyRarePartition, "no row reaches the relevance threshold");
  return p;
}

namespace {

std::size_t rounded(double v) { return static_cast<std::size_t>(std::llround(v)); }

Partition checked_partition(const Dataset& ds, const RelevanceFunction& rel, double threshold) {
  auto p = partition(ds, rel, threshold);
  if (p.normal.empty()) throw Error(ErrorCode::EmptyRarePartition, "no row falls below the relevance threshold");
  return p;
}

std::vector<std::size_t> subsample(const std::vector<std::size_t>& rows, std::size_t count, Rng& rng) {
  auto picks = sample_without_replacement(rows.size(), count, rng);
  std::vector<std::size_t> out;
  out.reserve(picks.size());
  for (std::size_t i : picks) out.push_back(rows[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<double>> row_major(const Dataset& ds) {
  std::vector<std::vector<double>> rows(ds.n_rows());
  for (std::size_t r = 0; r < ds.n_rows(); ++r) rows[r] = ds.row(r);
  return rows;
}

// Rows kept from the input, in input order, followed by generated rows.
Dataset assemble(const Dataset& ds, std::vector<std::size_t> kept, const std::vector<std::vector<double>>& generated) {
  std::sort(kept.begin(), kept.end());
  Dataset out = ds.select_rows(kept);
  if (generated.empty()) return out;
  return out.concat(ds.with_rows(generated));
}

// Each new row copies a seed of the partition; nominal cells are redrawn from
// the partition's empirical column with probability `delta`.
std::vector<double> noisy_copy(std::span<const double> seed, const std::vector<double>& noise_sd, double delta,
                               const Dataset& ds, const std::vector<std::size_t>& members, Rng& rng) {
  std::vector<double> row(seed.begin(), seed.end());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (ds.column(c).is_nominal()) {
      if (delta > 0 && uniform01(rng) < delta) row[c] = ds.cell(members[uniform_index(rng, members.size())], c);
    } else if (noise_sd[c] > 0) {
      row[c] += noise_sd[c] * gauss(rng);
    }
  }
  return row;
}

struct Neighbors {
  std::vector<std::size_t> index;  // positions into the partition member list
  std::vector<double> distance;
};

std::vector<Neighbors> nearest_neighbors(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::size_t>& members, std::size_t k,
                                         const HeomDistance& dist) {
  const std::size_t s = members.size();
  k = std::min(k, s - 1);
  std::vector<Neighbors> out(s);
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t i = 0; i < s; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) cand.emplace_back(dist(rows[members[i]], rows[members[j]]), j);
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    for (std::size_t q = 0; q < k; ++q) {
      out[i].index.push_back(cand[q].second);
      out[i].distance.push_back(cand[q].first);
    }
  }
  return out;
}

// Visits partition members round-robin in a shuffled order.
class SeedCycle {
 public:
  SeedCycle(std::size_t n, Rng& rng) : order_(sample_without_replacement(n, n, rng)) {}
  std::size_t next() { return order_[pos_++ % order_.size()]; }

 private:
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
};

enum class Generator { Noise, Smoter, Smogn };

Dataset combined_strategy(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, double delta,
                          std::size_t k, Rng& rng, double threshold, Generator gen) {
  if (!(delta >= 0)) throw Error(ErrorCode::InvalidArgument, "delta must be non-negative");
  if (gen != Generator::Noise && k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const auto part = checked_partition(ds, rel, threshold);
  if (gen != Generator::Noise && part.rare.size() < 2)
    throw Error(ErrorCode::EmptyRarePartition, "interpolation needs at least two rare rows");
  const auto targets = combined_targets(part.rare.size(), part.normal.size(), mode);
  const auto rows = row_major(ds);
  const auto stds = column_stds(ds);
  const HeomDistance dist(ds);

  std::vector<std::size_t> kept;
  std::vector<std::vector<double>> generated;

  auto resize = [&](const std::vector<std::size_t>& members, std::size_t target) {
    if (target <= members.size()) {
      auto sub = subsample(members, target, rng);
      kept.insert(kept.end(), sub.begin(), sub.end());
      return;
    }
    kept.insert(kept.end(), members.begin(), members.end());
    const std::size_t need = target - members.size();
    SeedCycle seeds(members.size(), rng);
    std::vector<double> gn_sd(stds.size());
    for (std::size_t c = 0; c < stds.size(); ++c) gn_sd[c] = delta * stds[c];
    if (gen == Generator::Noise || members.size() < 2) {
      for (std::size_t i = 0; i < need; ++i)
        generated.push_back(noisy_copy(rows[members[seeds.next()]], gn_sd, delta, ds, members, rng));
      return;
    }
    const auto knn = nearest_neighbors(rows, members, k, dist);
    for (std::size_t i = 0; i < need; ++i) {
      const std::size_t s = seeds.next();
      const auto& nb = knn[s];
      const std::size_t pick = uniform_index(rng, nb.index.size());
      const auto& seed_row = rows[members[s]];
      const auto& nb_row = rows[members[nb.index[pick]]];
      if (gen == Generator::Smogn && smogn_branch(nb.distance[pick], nb.distance) == SmognBranch::Noise) {
        const double half_median = stats::median(nb.distance) / 2.0;
        std::vector<double> sd(stds.size());
        for (std::size_t c = 0; c < stds.size(); ++c) sd[c] = std::min(delta, half_median) * stds[c];
        generated.push_back(noisy_copy(seed_row, sd, delta, ds, members, rng));
      } else {
        generated.push_back(smoter_case(seed_row, nb_row, uniform01(rng), ds, dist, rng));
      }
    }
  };
  resize(part.rare, targets.rare);
  resize(part.normal, targets.normal);
  return assemble(ds, std::move(kept), generated);
}

}  // namespace

PartitionTargets combined_targets(std::size_t n_rare, std::size_t n_normal, PartitionMode mode) {
  const double half = static_cast<double>(n_rare + n_normal) / 2.0;
  if (mode == PartitionMode::Balance) {
    const std::size_t rare = rounded(half);
    return {rare, n_rare + n_normal - rare};
  }
  return {std::max<std::size_t>(1, rounded(half * half / static_cast<double>(n_rare))),
          std::max<std::size_t>(1, rounded(half * half / static_cast<double>(n_normal)))};
}

Dataset random_under(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, Rng& rng, double threshold) {
  const auto part = checked_partition(ds, rel, threshold);
  const double r = static_cast<double>(part.rare.size());
  const double nn = static_cast<double>(part.normal.size());
  const std::size_t keep = mode == PartitionMode::Balance ? part.rare.size() : rounded(r * r / nn);
  auto kept = subsample(part.normal, std::min(keep, part.normal.size()), rng);
  kept.insert(kept.end(), part.rare.begin(), part.rare.end());
  return assemble(ds, std::move(kept), {});
}

Dataset random_over(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, Rng& rng, double threshold) {
  const auto part = checked_partition(ds, rel, threshold);
  const double r = static_cast<double>(part.rare.size());
  const double nn = static_cast<double>(part.normal.size());
  const std::size_t target = mode == PartitionMode::Balance ? part.normal.size() : rounded(nn * nn / r);
  std::vector<std::size_t> all(ds.n_rows());
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = part.rare.size(); i < target; ++i) all.push_back(part.rare[uniform_index(rng, part.rare.size())]);
  return ds.select_rows(all);
}

Dataset wercs(const Dataset& ds, const RelevanceFunction& rel, double over, double under, Rng& rng) {
  if (!(over >= 0 && over <= 1 && under >= 0 && under <= 1))
    throw Error(ErrorCode::InvalidArgument, "WERCS fractions must lie in [0, 1]");
  const std::size_t n = ds.n_rows();
  const auto phi = rel.evaluate(ds.target());
  const std::size_t n_add = rounded(over * static_cast<double>(n));
  const std::size_t n_remove = std::min(rounded(under * static_cast<double>(n)), n - 1);

  std::vector<std::size_t> added;
  if (n_add > 0) {
    const double mass = std::accumulate(phi.begin(), phi.end(), 0.0);
    if (mass > 0) {
      added = weighted_draws(phi, n_add, rng);
    } else {
      for (std::size_t i = 0; i < n_add; ++i) added.push_back(uniform_index(rng, n));
    }
  }
  std::vector<double> keep_weight(n);
  for (std::size_t i = 0; i < n; ++i) keep_weight[i] = 1.0 - phi[i];
  const auto removed = weighted_without_replacement(keep_weight, n_remove, rng);
  std::vector<bool> gone(n, false);
  for (std::size_t i : removed) gone[i] = true;
  std::vector<std::size_t> rows;
  rows.reserve(n - n_remove + n_add);
  for (std::size_t i = 0; i < n; ++i)
    if (!gone[i]) rows.push_back(i);
  rows.insert(rows.end(), added.begin(), added.end());
  return ds.select_rows(rows);
}

Dataset gaussian_noise(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, double delta, Rng& rng,
                       double threshold) {
  return combined_strategy(ds, rel, mode, delta, 1, rng, threshold, Generator::Noise);
}

Dataset smoter(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, std::size_t k, Rng& rng,
               double threshold) {
  return combined_strategy(ds, rel, mode, 0.0, k, rng, threshold, Generator::Smoter);
}

Dataset smogn(const Dataset& ds, const RelevanceFunction& rel, PartitionMode mode, double delta, std::size_t k,
              Rng& rng, double threshold) {
  return combined_strategy(ds, rel, mode, delta, k, rng, threshold, Generator::Smogn);
}

HeomDistance::HeomDistance(const Dataset& ds) : target_(ds.target_index()) {
  nominal_.resize(ds.n_cols());
  range_.resize(ds.n_cols(), 0.0);
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    nominal_[c] = ds.column(c).is_nominal();
    if (!nominal_[c] && ds.n_rows() > 0) {
      const auto v = ds.values(c);
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      range_[c] = *hi - *lo;
    }
  }
}

double HeomDistance::operator()(std::span<const double> a, std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t c = 0; c < nominal_.size(); ++c) {
    if (c == target_) continue;
    double d = 0.0;
    if (nominal_[c])
      d = a[c] == b[c] ? 0.0 : 1.0;
    else if (range_[c] > 0)
      d = std::abs(a[c] - b[c]) / range_[c];
    s += d * d;
  }
  return std::sqrt(s);
}

SmognBranch smogn_branch(double neighbor_distance, std::span<const double> knn_distances) {
  const double half_median = stats::median(knn_distances) / 2.0;
  return neighbor_distance <= half_median ? SmognBranch::Interpolate : SmognBranch::Noise;
}

std::vector<double> smoter_case(std::span<const double> seed, std::span<const double> neighbor, double gap,
                                const Dataset& schema, const HeomDistance& dist, Rng& rng) {
  const std::size_t t = schema.target_index();
  std::vector<double> row(seed.begin(), seed.end());
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (c == t) continue;
    if (schema.column(c).is_nominal())
      row[c] = uniform01(rng) < 0.5 ? seed[c] : neighbor[c];
    else
      row[c] = seed[c] + gap * (neighbor[c] - seed[c]);
  }
  const double d_seed = dist(row, seed);
  const double d_nb = dist(row, neighbor);
  if (d_seed + d_nb == 0.0)
    row[t] = (seed[t] + neighbor[t]) / 2.0;
  else
    row[t] = (d_nb * seed[t] + d_seed * neighbor[t]) / (d_seed + d_nb);
  return row;
}

}  // namespace iraug
