#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "iraug/tabular.hpp"

namespace fixture {

inline iraug::Column numeric(std::string name, std::vector<double> values) {
  return {std::move(name), iraug::ColumnKind::Numeric, {}, std::move(values)};
}

inline iraug::Column nominal(std::string name, std::vector<std::string> categories, std::vector<double> codes) {
  return {std::move(name), iraug::ColumnKind::Nominal, std::move(categories), std::move(codes)};
}

// Single feature x with target y (target last).
inline iraug::Dataset xy(std::vector<double> x, std::vector<double> y) {
  return iraug::Dataset({numeric("x", std::move(x)), numeric("y", std::move(y))}, 1);
}

// Random mixed table: numeric and nominal features then a numeric target
// with a right-skewed tail.
inline iraug::Dataset mixed(std::size_t n, std::size_t p_num, std::size_t p_nom, std::uint64_t seed,
                            std::size_t n_categories = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<iraug::Column> cols;
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 0; j < p_num; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = z(rng);
      y[i] += 0.5 * v[i];
    }
    cols.push_back(numeric("x" + std::to_string(j), std::move(v)));
  }
  for (std::size_t j = 0; j < p_nom; ++j) {
    std::vector<std::string> cats;
    for (std::size_t c = 0; c < n_categories; ++c) cats.push_back("c" + std::to_string(c));
    std::vector<double> v(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n_categories) - 1);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = pick(rng);
      y[i] += 0.3 * v[i];
    }
    cols.push_back(nominal("n" + std::to_string(j), std::move(cats), std::move(v)));
  }
  for (auto& v : y) v = std::exp(v + 0.3 * z(rng));
  cols.push_back(numeric("y", std::move(y)));
  const std::size_t target = cols.size() - 1;
  return iraug::Dataset(std::move(cols), target);
}

}  // namespace fixture
