#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "iraug/error.hpp"
#include "iraug/generator.hpp"
#include "iraug/relevance.hpp"
#include "iraug/stats.hpp"

using namespace iraug;

namespace {
const CartParams kFine{.min_leaf = 1, .min_split = 2, .max_depth = std::nullopt};

SelectionWeights uniform(std::size_t n) {
  SelectionWeights w;
  w.probs.assign(n, 1.0 / static_cast<double>(n));
  return w;
}
}  // namespace

TEST_CASE("pool: sizes") {
  const auto ds = fixture::mixed(100, 2, 1, 1);
  Rng rng(1);
  CHECK(resample_pool(ds, uniform(100), 0.0, rng).size() == 0);
  CHECK(resample_pool(ds, uniform(100), 0.5, rng).size() == 50);
  CHECK(resample_pool(ds, uniform(100), 0.75, rng).size() == 75);
  CHECK(resample_pool(ds, uniform(100), 1.0, rng).size() == 100);
  const auto odd = fixture::mixed(4177, 1, 0, 2);
  CHECK(resample_pool(odd, uniform(4177), 0.5, rng).size() == 2089);
}

TEST_CASE("pool: forced selection replicates one row") {
  const auto ds = fixture::mixed(10, 2, 0, 3);
  SelectionWeights w;
  w.probs.assign(10, 0.0);
  w.probs[7] = 1.0;
  Rng rng(5);
  const auto pool = resample_pool(ds, w, 0.5, rng);
  REQUIRE(pool.size() == 5);
  CHECK(pool.source == std::vector<std::size_t>(5, 7));
  CHECK(pool.duplicate == std::vector<bool>{false, true, true, true, true});
  for (std::size_t r = 0; r < 5; ++r) CHECK(pool.rows.row(r) == ds.row(7));
}

TEST_CASE("pool: duplicate flags mark repeats only") {
  const auto ds = fixture::mixed(60, 2, 1, 4);
  Rng rng(6);
  const auto pool = resample_pool(ds, uniform(60), 0.75, rng);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CHECK(pool.duplicate[i] == seen.contains(pool.source[i]));
    seen.insert(pool.source[i]);
  }
}

TEST_CASE("perturb: zero delta and first occurrences are untouched") {
  const auto ds = fixture::mixed(80, 3, 1, 8);
  Rng rng(9);
  const auto pool = resample_pool(ds, uniform(80), 1.0, rng);
  const auto stds = column_stds(ds);
  const auto same = perturb_duplicates(pool, 0.0, stds, rng);
  CHECK(same.rows == pool.rows);
  const auto noisy = perturb_duplicates(pool, 0.1, stds, rng);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!pool.duplicate[i]) CHECK(noisy.rows.row(i) == pool.rows.row(i));
    // nominal cells never move
    CHECK(noisy.rows.cell(i, 3) == pool.rows.cell(i, 3));
  }
}

TEST_CASE("perturb: noise scale") {
  const std::size_t n = 10001;
  std::vector<double> x(n, 0.0), y(n, 0.0);
  x[0] = 1.0;  // keeps the column std away from zero
  Pool pool;
  pool.rows = fixture::xy(x, y);
  pool.source.assign(n, 0);
  pool.duplicate.assign(n, true);
  pool.duplicate[0] = false;
  Rng rng(10);
  const auto out = perturb_duplicates(pool, 0.001, {10.0, 10.0}, rng);
  std::vector<double> diff;
  for (std::size_t i = 1; i < n; ++i) diff.push_back(out.rows.cell(i, 0) - pool.rows.cell(i, 0));
  CHECK(std::abs(stats::stddev(diff) / 0.01 - 1.0) < 0.1);
}

TEST_CASE("synthesize: identical pool rows stay identical") {
  const auto base = fixture::mixed(5, 2, 1, 11);
  const std::vector<std::size_t> rows(12, 3);
  Pool pool;
  pool.rows = base.select_rows(rows);
  pool.source = rows;
  pool.duplicate.assign(12, true);
  Rng rng(12);
  const auto out = synthesize(pool, kFine, rng);
  for (std::size_t r = 0; r < out.n_rows(); ++r) CHECK(out.row(r) == base.row(3));
}

TEST_CASE("synthesize: perfectly dependent columns stay dependent") {
  std::vector<double> x, y;
  for (int rep = 0; rep < 4; ++rep)
    for (double v : {1.0, 2.0, 4.0}) {
      x.push_back(v);
      y.push_back(2 * v);
    }
  Pool pool;
  pool.rows = fixture::xy(x, y);
  pool.source.resize(x.size());
  std::iota(pool.source.begin(), pool.source.end(), 0);
  pool.duplicate.assign(x.size(), false);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto out = synthesize(pool, kFine, rng);
    for (std::size_t r = 0; r < out.n_rows(); ++r) CHECK(out.cell(r, 1) == 2 * out.cell(r, 0));
  }
}

TEST_CASE("synthesize: emits observed categories only") {
  const auto ds = fixture::mixed(120, 2, 2, 13, 5);
  Rng rng(14);
  const auto pool = resample_pool(ds, uniform(120), 0.5, rng);
  const auto out = synthesize(pool, CartParams{}, rng);
  for (std::size_t c : {2u, 3u}) {
    const auto col = pool.rows.values(c);
    const std::set<double> present(col.begin(), col.end());
    for (double v : out.values(c)) CHECK(present.contains(v));
  }
  CHECK(out.same_schema(ds));
}

TEST_CASE("cartgen: eta zero is the identity") {
  const auto ds = fixture::mixed(90, 2, 1, 15);
  CartGenParams p;
  p.eta = 0.0;
  const auto aug = cartgen_ir(ds, p);
  CHECK(aug.combined == ds);
  CHECK(aug.synthetic.n_rows() == 0);
}

TEST_CASE("cartgen: sizes, provenance and determinism") {
  const auto ds = fixture::mixed(333, 3, 1, 16);
  for (double eta : {0.5, 0.75}) {
    CartGenParams p;
    p.eta = eta;
    p.alpha = 1.5;
    p.density = DensityMethod::DenseWeight;
    p.delta = 0.001;
    p.seed = 77;
    const auto a = cartgen_ir(ds, p);
    const auto expect = static_cast<std::size_t>(std::llround(eta * 333));
    CHECK(a.synthetic.n_rows() == expect);
    CHECK(a.combined.n_rows() == 333 + expect);
    CHECK(a.combined.same_schema(ds));
    CHECK(a.provenance.size() == a.combined.n_rows());
    CHECK(std::count(a.provenance.begin(), a.provenance.end(), Provenance::Synthetic) ==
          static_cast<long>(expect));
    CHECK(a.trees.size() == ds.n_cols());
    const auto b = cartgen_ir(ds, p);
    CHECK(a.combined == b.combined);
  }
}

TEST_CASE("cartgen: synthetic rows lean towards the rare tail") {
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> ex(1.0);
  std::normal_distribution<double> z;
  const std::size_t n = 2000;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = ex(rng);
    x[i] = y[i] + 0.2 * z(rng);
  }
  const auto ds = fixture::xy(x, y);
  const auto rel = build_relevance(ds.target());
  CartGenParams p;
  p.alpha = 2.0;
  p.eta = 0.75;
  p.seed = 18;
  const auto aug = cartgen_ir(ds, p);
  const auto mean_phi = [&](std::span<const double> v) {
    double s = 0;
    for (double t : v) s += rel(t);
    return s / static_cast<double>(v.size());
  };
  CHECK(mean_phi(aug.synthetic.target()) > mean_phi(ds.target()));
}

TEST_CASE("cartgen: relevance density without a rare region fails") {
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i);
    y.push_back(i);
  }
  CartGenParams p;
  p.density = DensityMethod::Relevance;
  try {
    (void)cartgen_ir(fixture::xy(x, y), p);
    FAIL("expected NoRareRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRareRegion);
  }
}

TEST_CASE("cartgen: parameter validation") {
  const auto ds = fixture::mixed(20, 1, 0, 1);
  CartGenParams p;
  p.eta = 1.5;
  CHECK_THROWS_AS(cartgen_ir(ds, p), Error);
  p.eta = 0.5;
  p.delta = -1;
  CHECK_THROWS_AS(cartgen_ir(ds, p), Error);
}
