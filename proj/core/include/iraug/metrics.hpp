#pragma once

#include <span>
#include <vector>

#include "iraug/relevance.hpp"

namespace iraug {

struct SeraCurve {
  std::vector<double> t_grid;
  std::vector<double> ser_values;
  double area = 0;
};

inline constexpr double kDefaultSeraStep = 0.001;

double rmse(std::span<const double> y, std::span<const double> yhat);

/// Relevance-weighted RMSE. `relevance[i]` is phi(y[i]).
double rw_rmse(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance);
double rw_rmse(std::span<const double> y, std::span<const double> yhat, const RelevanceFunction& rel);

/// Squared error-relevance curve on a uniform grid over [0, 1], integrated
/// with the trapezoidal rule.
SeraCurve sera(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance,
               double step = kDefaultSeraStep);
SeraCurve sera(std::span<const double> y, std::span<const double> yhat, const RelevanceFunction& rel,
               double step = kDefaultSeraStep);

/// Exact area under the step-shaped curve, from the sorted relevance
/// breakpoints.
double sera_exact(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance);

}  // namespace iraug
