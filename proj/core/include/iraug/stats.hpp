#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace iraug::stats {

/// Type-7 quantile (linear interpolation between closest ranks) of an
/// ascending-sorted sample.
double quantile_sorted(std::span<const double> sorted, double p);

/// Type-7 quantile of an unsorted sample.
double quantile(std::span<const double> values, double p);

double median(std::span<const double> values);
double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for n < 2.
double stddev(std::span<const double> values);

double normal_cdf(double z);

/// Deterministic 64-bit mixer used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace iraug::stats
