#include "iraug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iraug/error.hpp"

namespace iraug {

namespace {

void check_lengths(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) throw Error(ErrorCode::LengthMismatch, "truth and prediction lengths differ");
  if (y.empty()) throw Error(ErrorCode::EmptyInput, "metric over zero instances");
}

std::vector<double> squared_errors(std::span<const double> y, std::span<const double> yhat) {
  std::vector<double> e(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) e[i] = (yhat[i] - y[i]) * (yhat[i] - y[i]);
  return e;
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
  check_lengths(y, yhat);
  const auto e = squared_errors(y, yhat);
  return std::sqrt(std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size()));
}

double rw_rmse(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance) {
  check_lengths(y, yhat);
  if (relevance.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "one relevance per instance expected");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += relevance[i] * (y[i] - yhat[i]) * (y[i] - yhat[i]);
    den += relevance[i];
  }
  if (!(den > 0)) throw Error(ErrorCode::ZeroRelevanceMass, "relevances sum to zero");
  return std::sqrt(num / den);
}

double rw_rmse(std::span<const double> y, std::span<const double> yhat, const RelevanceFunction& rel) {
  return rw_rmse(y, yhat, rel.evaluate(y));
}

SeraCurve sera(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance,
               double step) {
  check_lengths(y, yhat);
  if (relevance.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "one relevance per instance expected");
  if (!(step > 0 && step <= 1)) throw Error(ErrorCode::InvalidArgument, "SERA step must lie in (0, 1]");
  const double intervals = std::round(1.0 / step);
  if (std::abs(intervals * step - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "SERA step must divide 1");
  const auto m = static_cast<std::size_t>(intervals);

  // Sort instances by relevance so ser(t) is a suffix sum.
  const auto e = squared_errors(y, yhat);
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return relevance[a] < relevance[b]; });
  std::vector<double> suffix(order.size() + 1, 0.0);
  for (std::size_t i = order.size(); i-- > 0;) suffix[i] = suffix[i + 1] + e[order[i]];

  SeraCurve curve;
  curve.t_grid.resize(m + 1);
  curve.ser_values.resize(m + 1);
  std::size_t first = 0;
  for (std::size_t g = 0; g <= m; ++g) {
    const double t = static_cast<double>(g) / intervals;
    while (first < order.size() && relevance[order[first]] < t) ++first;
    curve.t_grid[g] = t;
    curve.ser_values[g] = suffix[first];
  }
  double area = 0.0;
  for (std::size_t g = 0; g < m; ++g) area += 0.5 * (curve.ser_values[g] + curve.ser_values[g + 1]);
  curve.area = area / intervals;
  return curve;
}

SeraCurve sera(std::span<const double> y, std::span<const double> yhat, const RelevanceFunction& rel, double step) {
  return sera(y, yhat, rel.evaluate(y), step);
}

double sera_exact(std::span<const double> y, std::span<const double> yhat, std::span<const double> relevance) {
  check_lengths(y, yhat);
  if (relevance.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "one relevance per instance expected");
  const auto e = squared_errors(y, yhat);
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return relevance[a] < relevance[b]; });
  // Between consecutive breakpoints the curve is the SSE of the instances
  // whose relevance is at least the upper breakpoint.
  double remaining = std::accumulate(e.begin(), e.end(), 0.0);
  double area = 0.0;
  double prev = 0.0;
  for (std::size_t i : order) {
    const double b = std::clamp(relevance[i], 0.0, 1.0);
    area += remaining * (b - prev);
    prev = b;
    remaining -= e[i];
  }
  return area;
}

}  // namespace iraug
