#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iraug/relevance.hpp"

namespace iraug {

struct DensityEstimate {
  std::vector<double> values;
  double bandwidth = 0;
};

enum class DensityMethod { Kde, DenseWeight, Relevance };

std::string_view to_string(DensityMethod m) noexcept;
DensityMethod parse_density_method(std::string_view name);

/// Per-instance selection probabilities (sum to one, all strictly positive).
struct SelectionWeights {
  std::vector<double> probs;
  DensityMethod method = DensityMethod::Kde;
  double alpha = 0;
};

/// Silverman's rule of thumb, with the usual fallbacks for degenerate spread.
double silverman_bandwidth(std::span<const double> values);

/// Gaussian-kernel density evaluated at every sample point.
DensityEstimate kde(std::span<const double> values, std::optional<double> bandwidth = std::nullopt);

/// Rarity-based selection probabilities. `rel` is required for the
/// Relevance method and ignored otherwise.
SelectionWeights rarity_scores(std::span<const double> values, DensityMethod method, double alpha,
                               const RelevanceFunction* rel = nullptr);

}  // namespace iraug
