#include "iraug/relevance.hpp"

#include <algorithm>
#include <cmath>

#include "iraug/error.hpp"
#include "iraug/stats.hpp"

namespace iraug {

std::string_view to_string(ExtremeType t) noexcept {
  switch (t) {
    case ExtremeType::Low: return "Low";
    case ExtremeType::High: return "High";
    case ExtremeType::Both: return "Both";
  }
  return "Both";
}

RelevanceFunction::RelevanceFunction(std::vector<ControlPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::InvalidArgument, "relevance needs at least two control points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].phi >= 0.0 && points_[i].phi <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "control-point relevance outside [0, 1]");
    if (i > 0 && !(points_[i].y > points_[i - 1].y))
      throw Error(ErrorCode::InvalidArgument, "control-point abscissae must be strictly increasing");
  }
  // Fritsch-Carlson limiting keeps every segment monotone.
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    auto& a = points_[i];
    auto& b = points_[i + 1];
    const double secant = (b.phi - a.phi) / (b.y - a.y);
    if (secant == 0.0) {
      a.slope = 0.0;
      b.slope = 0.0;
      continue;
    }
    double ra = a.slope / secant;
    double rb = b.slope / secant;
    if (ra < 0) a.slope = ra = 0.0;
    if (rb < 0) b.slope = rb = 0.0;
    const double norm = ra * ra + rb * rb;
    if (norm > 9.0) {
      const double tau = 3.0 / std::sqrt(norm);
      a.slope = tau * ra * secant;
      b.slope = tau * rb * secant;
    }
  }
}

double RelevanceFunction::operator()(double y) const noexcept {
  if (std::isnan(y)) return 0.0;
  if (y <= points_.front().y) return points_.front().phi;
  if (y >= points_.back().y) return points_.back().phi;
  const auto it = std::upper_bound(points_.begin(), points_.end(), y,
                                   [](double v, const ControlPoint& p) { return v < p.y; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double h = b.y - a.y;
  const double t = (y - a.y) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double v = h00 * a.phi + h10 * h * a.slope + h01 * b.phi + h11 * h * b.slope;
  return std::clamp(v, 0.0, 1.0);
}

std::vector<double> RelevanceFunction::evaluate(std::span<const double> ys) const {
  std::vector<double> out(ys.size());
  std::transform(ys.begin(), ys.end(), out.begin(), [this](double y) { return (*this)(y); });
  return out;
}

ExtremeType RelevanceFunction::extreme_type() const noexcept {
  double lowest = 1.0;
  for (const auto& p : points_) lowest = std::min(lowest, p.phi);
  const bool low = points_.front().phi > lowest;
  const bool high = points_.back().phi > lowest;
  if (low && high) return ExtremeType::Both;
  return low ? ExtremeType::Low : ExtremeType::High;
}

double medcouple(std::span<const double> values) {
  if (values.size() < 3) throw Error(ErrorCode::InvalidArgument, "medcouple needs at least 3 values");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end(), std::greater<>());
  const double m = stats::quantile_sorted(std::vector<double>(x.rbegin(), x.rend()), 0.5);
  if (x.front() == x.back()) return 0.0;

  // x is descending: upper half first, lower half last; ties at m in between.
  const auto upper_end = std::find_if(x.begin(), x.end(), [m](double v) { return v < m; });
  const auto lower_begin = std::find_if(x.begin(), x.end(), [m](double v) { return v <= m; });
  const std::span<const double> upper(x.data(), static_cast<std::size_t>(upper_end - x.begin()));
  const std::span<const double> lower(&*lower_begin, static_cast<std::size_t>(x.end() - lower_begin));
  const auto first_tie_in_upper = static_cast<std::size_t>(lower_begin - x.begin());
  const auto ties = static_cast<std::ptrdiff_t>(upper.size() - first_tie_in_upper);

  std::vector<double> kernel;
  kernel.reserve(upper.size() * lower.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    const double xi = upper[i];
    for (std::size_t j = 0; j < lower.size(); ++j) {
      const double xj = lower[j];
      if (xi == m && xj == m) {
        // i, j index the tied block from its upper and lower ends respectively
        const auto a = static_cast<std::ptrdiff_t>(i - first_tie_in_upper);
        const auto b = static_cast<std::ptrdiff_t>(j);
        const auto s = a + b - (ties - 1);
        kernel.push_back(s < 0 ? -1.0 : (s == 0 ? 0.0 : 1.0));
      } else {
        // centered form, as in the usual medcouple algorithms
        const double zi = xi - m, zj = xj - m;
        kernel.push_back((zi + zj) / (zi - zj));
      }
    }
  }
  const std::size_t n = kernel.size();
  const auto mid = kernel.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(kernel.begin(), mid, kernel.end());
  if (n % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(kernel.begin(), mid);
  return 0.5 * (lo + hi);
}

Fences adjusted_fences(std::span<const double> values) {
  if (values.size() < 4) throw Error(ErrorCode::InvalidArgument, "adjusted fences need at least 4 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Fences f;
  f.q1 = stats::quantile_sorted(sorted, 0.25);
  f.q3 = stats::quantile_sorted(sorted, 0.75);
  f.iqr = f.q3 - f.q1;
  f.medcouple = medcouple(sorted);
  const double mc = f.medcouple;
  if (mc >= 0) {
    f.lower = f.q1 - 1.5 * std::exp(-4.0 * mc) * f.iqr;
    f.upper = f.q3 + 1.5 * std::exp(3.0 * mc) * f.iqr;
  } else {
    f.lower = f.q1 - 1.5 * std::exp(-3.0 * mc) * f.iqr;
    f.upper = f.q3 + 1.5 * std::exp(4.0 * mc) * f.iqr;
  }
  return f;
}

RelevanceFunction build_relevance(std::span<const double> values) {
  const Fences f = adjusted_fences(values);
  const double med = stats::median(values);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  std::vector<ControlPoint> points;
  // A fence that coincides with the median cannot carry its own segment.
  if (*lo_it < f.lower && f.lower < med) points.push_back({f.lower, 1.0, 0.0});
  points.push_back({med, 0.0, 0.0});
  if (*hi_it > f.upper && f.upper > med) points.push_back({f.upper, 1.0, 0.0});
  if (points.size() < 2) throw Error(ErrorCode::NoRareRegion, "no observation lies beyond either adjusted fence");
  return RelevanceFunction(std::move(points));
}

RareCount rare_count(const RelevanceFunction& rel, std::span<const double> values, double threshold) {
  RareCount rc;
  for (double y : values)
    if (rel(y) >= threshold) ++rc.count;
  rc.fraction = values.empty() ? 0.0 : static_cast<double>(rc.count) / static_cast<double>(values.size());
  return rc;
}

}  // namespace iraug
