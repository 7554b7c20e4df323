#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace iraug {

/// Skewness-adjusted boxplot statistics of a sample.
struct Fences {
  double lower = 0;
  double upper = 0;
  double medcouple = 0;
  double q1 = 0;
  double q3 = 0;
  double iqr = 0;
};

struct ControlPoint {
  double y;
  double phi;
  double slope;
};

/// Which tails of the target distribution hold rare values.
enum class ExtremeType { Low, High, Both };

std::string_view to_string(ExtremeType t) noexcept;

/// Continuous map from target values to relevance in [0, 1], interpolating
/// control points with a monotone cubic Hermite spline and extrapolating the
/// outermost values as constants.
class RelevanceFunction {
 public:
  /// Pass-through constructor for user-supplied control points. Abscissae must
  /// be strictly increasing and relevances within [0, 1]; at least two points.
  explicit RelevanceFunction(std::vector<ControlPoint> points);

  [[nodiscard]] double operator()(double y) const noexcept;
  [[nodiscard]] std::vector<double> evaluate(std::span<const double> ys) const;

  [[nodiscard]] const std::vector<ControlPoint>& control_points() const noexcept { return points_; }
  [[nodiscard]] ExtremeType extreme_type() const noexcept;

 private:
  std::vector<ControlPoint> points_;
};

/// Robust skewness (medcouple) by direct enumeration of the pairwise kernel.
double medcouple(std::span<const double> values);

Fences adjusted_fences(std::span<const double> values);

/// Automatic relevance: zero at the median, one at every fence that has
/// observations beyond it. Throws NoRareRegion when neither fence does.
RelevanceFunction build_relevance(std::span<const double> values);

struct RareCount {
  std::size_t count = 0;
  double fraction = 0;
};

RareCount rare_count(const RelevanceFunction& rel, std::span<const double> values, double threshold);

}  // namespace iraug
