#include <doctest.h>

#include <cmath>
#include <random>

#include "iraug/error.hpp"
#include "iraug/relevance.hpp"
#include "oracles.hpp"

using namespace iraug;

TEST_CASE("medcouple: small samples") {
  CHECK(medcouple(std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(medcouple(std::vector<double>{1, 2, 4}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(medcouple(std::vector<double>{5, 5, 5, 5}) == 0.0);
}

TEST_CASE("medcouple: matches pairwise enumeration, ties included") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    std::vector<double> x(n);
    const bool ties = trial % 2 == 0;
    std::exponential_distribution<double> ex(1.0);
    for (auto& v : x) v = ties ? static_cast<double>(rng() % 6) : ex(rng);
    CHECK(medcouple(x) == doctest::Approx(oracle::medcouple(x)).epsilon(1e-14));
  }
}

TEST_CASE("medcouple: needs three values") {
  CHECK_THROWS_AS(medcouple(std::vector<double>{1, 2}), Error);
}

TEST_CASE("fences: symmetric sample gives Tukey fences") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto f = adjusted_fences(x);
  CHECK(f.medcouple == 0.0);
  CHECK(f.lower == doctest::Approx(-3));
  CHECK(f.upper == doctest::Approx(13));
}

TEST_CASE("fences: constant sample collapses") {
  const auto f = adjusted_fences(std::vector<double>{4, 4, 4, 4, 4});
  CHECK(f.lower == 4);
  CHECK(f.upper == 4);
}

TEST_CASE("fences: right-skewed sample uses the positive branch") {
  const std::vector<double> x{1, 1, 2, 2, 3, 3, 4, 5, 9, 15};
  const double mc = oracle::medcouple(x);
  REQUIRE(mc > 0);
  const double q1 = oracle::quantile7(x, 0.25);
  const double q3 = oracle::quantile7(x, 0.75);
  const auto f = adjusted_fences(x);
  CHECK(f.q1 == doctest::Approx(q1));
  CHECK(f.q3 == doctest::Approx(q3));
  CHECK(f.lower == doctest::Approx(q1 - 1.5 * std::exp(-4 * mc) * (q3 - q1)));
  CHECK(f.upper == doctest::Approx(q3 + 1.5 * std::exp(3 * mc) * (q3 - q1)));
}

TEST_CASE("fences: left-skewed sample uses the negative branch") {
  std::vector<double> x{1, 1, 2, 2, 3, 3, 4, 5, 9, 15};
  for (auto& v : x) v = -v;
  const double mc = oracle::medcouple(x);
  REQUIRE(mc < 0);
  const double q1 = oracle::quantile7(x, 0.25);
  const double q3 = oracle::quantile7(x, 0.75);
  const auto f = adjusted_fences(x);
  CHECK(f.lower == doctest::Approx(q1 - 1.5 * std::exp(-3 * mc) * (q3 - q1)));
  CHECK(f.upper == doctest::Approx(q3 + 1.5 * std::exp(4 * mc) * (q3 - q1)));
}

namespace {
std::vector<double> skewed(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}
}  // namespace

TEST_CASE("relevance: zero at the median, one beyond active fences") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = skewed(300, seed);
    const auto rel = build_relevance(x);
    const auto f = adjusted_fences(x);
    CHECK(rel(oracle::quantile7(x, 0.5)) == doctest::Approx(0.0).epsilon(1e-12));
    const double hi = *std::max_element(x.begin(), x.end());
    if (hi > f.upper) {
      CHECK(rel(f.upper) == 1.0);
      CHECK(rel(f.upper + 1.0) == 1.0);
      CHECK(rel(hi) == 1.0);
    }
    for (const auto& p : rel.control_points()) {
      CHECK(p.phi >= 0.0);
      CHECK(p.phi <= 1.0);
    }
  }
}

TEST_CASE("relevance: midpoint of a zero-slope segment is one half") {
  const RelevanceFunction rel({{0.0, 0.0, 0.0}, {10.0, 1.0, 0.0}});
  CHECK(rel(5.0) == doctest::Approx(0.5));
  // Hermite basis with zero end slopes: 3t^2 - 2t^3
  const double t = 0.3;
  CHECK(rel(3.0) == doctest::Approx(3 * t * t - 2 * t * t * t));
  CHECK(rel(2.0) < rel(3.0));
  CHECK(rel(3.0) < rel(4.0));
}

TEST_CASE("relevance: bounded, continuous and piecewise monotone") {
  const auto x = skewed(500, 99);
  const auto rel = build_relevance(x);
  const auto& pts = rel.control_points();
  const double lo = pts.front().y - 1.0;
  const double hi = pts.back().y + 1.0;
  double prev = rel(lo);
  for (int i = 1; i <= 20000; ++i) {
    const double y = lo + (hi - lo) * i / 20000.0;
    const double v = rel(y);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(std::abs(v - prev) < 0.01);
    prev = v;
  }
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const bool rising = pts[s + 1].phi >= pts[s].phi;
    double last = rel(pts[s].y);
    for (int i = 1; i <= 200; ++i) {
      const double v = rel(pts[s].y + (pts[s + 1].y - pts[s].y) * i / 200.0);
      CHECK((rising ? v >= last - 1e-15 : v <= last + 1e-15));
      last = v;
    }
  }
}

TEST_CASE("relevance: extreme type follows the active tails") {
  const auto high = build_relevance(skewed(400, 3));
  CHECK(high.extreme_type() == ExtremeType::High);
  auto neg = skewed(400, 3);
  for (auto& v : neg) v = -v;
  CHECK(build_relevance(neg).extreme_type() == ExtremeType::Low);
}

TEST_CASE("relevance: no rare region") {
  std::vector<double> x;
  for (int i = 0; i < 100; ++i) x.push_back(i);
  try {
    (void)build_relevance(x);
    FAIL("expected NoRareRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRareRegion);
  }
}

TEST_CASE("relevance: user control points are validated") {
  CHECK_THROWS_AS(RelevanceFunction({{0, 0, 0}}), Error);
  CHECK_THROWS_AS(RelevanceFunction({{1, 0, 0}, {0, 1, 0}}), Error);
  CHECK_THROWS_AS(RelevanceFunction({{0, 0, 0}, {1, 1.5, 0}}), Error);
}

TEST_CASE("rare count thresholds") {
  const auto x = skewed(250, 5);
  const auto rel = build_relevance(x);
  CHECK(rare_count(rel, x, 0.0).count == x.size());
  CHECK(rare_count(rel, x, 0.0).fraction == 1.0);
  CHECK(rare_count(rel, x, 1.0 + 1e-9).count == 0);
  std::size_t manual = 0;
  for (double v : x) manual += rel(v) >= 0.8 ? 1 : 0;
  const auto rc = rare_count(rel, x, 0.8);
  CHECK(rc.count == manual);
  CHECK(rc.fraction == doctest::Approx(static_cast<double>(manual) / 250.0));
}
