#include "iraug/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "iraug/error.hpp"
#include "iraug/stats.hpp"

namespace iraug {

namespace {
constexpr double kFloor = 1e-6;
// Kernel terms beyond this many bandwidths are below 1e-21 of the peak.
constexpr double kKernelCutoff = 10.0;

void normalize(std::vector<double>& w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
}
}  // namespace

std::string_view to_string(DensityMethod m) noexcept {
  switch (m) {
    case DensityMethod::Kde: return "kde";
    case DensityMethod::DenseWeight: return "denseweight";
    case DensityMethod::Relevance: return "relevance";
  }
  return "kde";
}

DensityMethod parse_density_method(std::string_view name) {
  if (name == "kde") return DensityMethod::Kde;
  if (name == "denseweight") return DensityMethod::DenseWeight;
  if (name == "relevance") return DensityMethod::Relevance;
  throw Error(ErrorCode::InvalidArgument, "unknown density method '" + std::string(name) + "'");
}

double silverman_bandwidth(std::span<const double> values) {
  const double sd = stats::stddev(values);
  const double iqr = stats::quantile(values, 0.75) - stats::quantile(values, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0) spread = sd;
  double h = 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
  if (!(h > 0)) {
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    h = 1e-6 * scale;
  }
  return h;
}

DensityEstimate kde(std::span<const double> values, std::optional<double> bandwidth) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "kde needs at least 2 values");
  DensityEstimate est;
  est.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(values);
  if (!(est.bandwidth > 0)) throw Error(ErrorCode::InvalidArgument, "kde bandwidth must be positive");
  const double h = est.bandwidth;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];

  const double reach = kKernelCutoff * h;
  const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi));
  est.values.assign(n, 0.0);
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = sorted[i];
    while (sorted[lo] < yi - reach) ++lo;
    while (hi < n && sorted[hi] <= yi + reach) ++hi;
    double sum = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const double u = (yi - sorted[j]) / h;
      sum += std::exp(-0.5 * u * u);
    }
    est.values[order[i]] = sum * norm;
  }
  return est;
}

SelectionWeights rarity_scores(std::span<const double> values, DensityMethod method, double alpha,
                               const RelevanceFunction* rel) {
  if (!(alpha >= 0)) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "rarity scores of an empty sample");
  SelectionWeights w;
  w.method = method;
  w.alpha = alpha;
  const std::size_t n = values.size();
  if (n == 1) {
    w.probs = {1.0};
    return w;
  }

  switch (method) {
    case DensityMethod::Kde: {
      const auto p = kde(values).values;
      const double c = kFloor * *std::max_element(p.begin(), p.end());
      w.probs.resize(n);
      for (std::size_t i = 0; i < n; ++i) w.probs[i] = std::pow(1.0 / (p[i] + c), alpha);
      break;
    }
    case DensityMethod::DenseWeight: {
      const auto p = kde(values).values;
      const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
      w.probs.assign(n, 1.0);
      if (*mx > *mn) {
        const double range = *mx - *mn;
        for (std::size_t i = 0; i < n; ++i) w.probs[i] = std::max(1.0 - alpha * (p[i] - *mn) / range, kFloor);
      }
      // weights are defined with unit mean; selection needs unit sum
      const double mean = std::accumulate(w.probs.begin(), w.probs.end(), 0.0) / static_cast<double>(n);
      for (auto& v : w.probs) v /= mean;
      break;
    }
    case DensityMethod::Relevance: {
      if (!rel) throw Error(ErrorCode::InvalidArgument, "relevance weighting needs a relevance function");
      w.probs.resize(n);
      for (std::size_t i = 0; i < n; ++i) w.probs[i] = std::pow((*rel)(values[i]) + kFloor, alpha);
      break;
    }
  }
  normalize(w.probs);
  return w;
}

}  // namespace iraug
