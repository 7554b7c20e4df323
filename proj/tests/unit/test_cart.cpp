#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "iraug/cart.hpp"
#include "iraug/error.hpp"
#include "oracles.hpp"

using namespace iraug;

namespace {
const CartParams kFine{.min_leaf = 1, .min_split = 2, .max_depth = std::nullopt};
}

TEST_CASE("cart: constant target is a single leaf") {
  const auto ds = fixture::xy({1, 2, 3, 4}, {7, 7, 7, 7});
  const auto tree = CartTree::fit(ds, 1, kFine);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.predict(std::vector<double>{100, 0}) == 7.0);
}

TEST_CASE("cart: two-level step") {
  const auto ds = fixture::xy({1, 2, 3, 4}, {0, 0, 10, 10});
  const auto tree = CartTree::fit(ds, 1, kFine);
  REQUIRE(tree.nodes().size() == 3);
  const auto& root = tree.node(0);
  REQUIRE(root.split);
  CHECK(root.split->threshold == doctest::Approx(2.5));
  CHECK(root.gain == doctest::Approx(100.0));
  CHECK(tree.predict(std::vector<double>{1.0, 0}) == 0.0);
  CHECK(tree.predict(std::vector<double>{4.0, 0}) == 10.0);
  CHECK(tree.leaf_of(std::vector<double>{2.4, 0}) != tree.leaf_of(std::vector<double>{2.6, 0}));
}

TEST_CASE("cart: single row") {
  const auto ds = fixture::xy({1}, {3});
  const auto tree = CartTree::fit(ds, 1, kFine);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.node(0).rows == std::vector<std::size_t>{0});
}

TEST_CASE("cart: empty training set") {
  const auto ds = fixture::xy({1, 2}, {3, 4});
  const std::vector<std::size_t> none;
  const std::vector<std::size_t> features{0};
  CHECK_THROWS_AS(CartTree::fit(ds, 1, features, none, kFine), Error);
}

TEST_CASE("cart: leaves partition the training rows and respect min_leaf") {
  const auto ds = fixture::mixed(300, 3, 2, 17);
  const CartParams params{.min_leaf = 5, .min_split = 10, .max_depth = std::nullopt};
  const auto tree = CartTree::fit(ds, ds.target_index(), params);
  std::vector<int> seen(ds.n_rows(), 0);
  for (auto leaf : tree.leaves()) {
    const auto& node = tree.node(leaf);
    CHECK(node.rows.size() >= params.min_leaf);
    for (auto r : node.rows) ++seen[r];
  }
  for (int s : seen) CHECK(s == 1);
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    const auto& rows = tree.node(tree.leaf_of(ds.row(r))).rows;
    CHECK(std::find(rows.begin(), rows.end(), r) != rows.end());
  }
}

TEST_CASE("cart: max depth") {
  const auto ds = fixture::mixed(200, 2, 0, 3);
  const auto tree = CartTree::fit(ds, ds.target_index(), CartParams{.min_leaf = 1, .min_split = 2, .max_depth = 1});
  CHECK(tree.nodes().size() <= 3);
}

TEST_CASE("cart: root split attains the exhaustive optimum") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    std::size_t p_num = rng() % 3;
    const std::size_t p_nom = rng() % 3;
    if (p_num + p_nom == 0) p_num = 1;
    auto ds = fixture::mixed(n, p_num, p_nom, rng(), 2 + rng() % 4);
    const std::size_t min_leaf = 1 + rng() % 3;
    const CartParams params{.min_leaf = min_leaf, .min_split = 2 * min_leaf, .max_depth = 1};
    const auto tree = CartTree::fit(ds, ds.target_index(), params);
    const double expect = oracle::best_split_gain(ds, min_leaf);
    const double got = tree.node(0).split ? tree.node(0).gain : 0.0;
    const double scale = std::max(1.0, oracle::sse({ds.target().begin(), ds.target().end()}));
    INFO("trial " << trial << " n=" << n);
    CHECK(std::abs(got - expect) <= 1e-9 * scale);
  }
}

TEST_CASE("cart: nominal target uses Gini") {
  // x separates class b perfectly
  const Dataset ds({fixture::numeric("x", {1, 2, 3, 4, 5, 6}), fixture::nominal("c", {"a", "b"}, {0, 0, 0, 1, 1, 1}),
                    fixture::numeric("y", {0, 0, 0, 0, 0, 0})},
                   2);
  const std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
  const std::vector<std::size_t> features{0};
  const auto tree = CartTree::fit(ds, 1, features, rows, kFine);
  CHECK(tree.target_kind() == ColumnKind::Nominal);
  REQUIRE(tree.node(0).split);
  CHECK(tree.node(0).split->threshold == doctest::Approx(3.5));
  // n-weighted Gini decrease: 6 * 0.5 - 0 - 0
  CHECK(tree.node(0).gain == doctest::Approx(3.0));
  CHECK(tree.predict(std::vector<double>{5, 0, 0}) == 1.0);
}

TEST_CASE("cart: unseen category follows the larger child") {
  const Dataset ds({fixture::nominal("g", {"a", "b", "c"}, {0, 0, 0, 1, 1}), fixture::numeric("y", {1, 1, 1, 9, 9})}, 1);
  const auto tree = CartTree::fit(ds, 1, kFine);
  REQUIRE(tree.node(0).split);
  const auto leaf_a = tree.leaf_of(std::vector<double>{0, 0});
  CHECK(tree.leaf_of(std::vector<double>{2, 0}) == leaf_a);
  CHECK(tree.predict(std::vector<double>{2, 0}) == 1.0);
}

TEST_CASE("cart: leaf sampling frequencies") {
  Rng rng(42);
  {
    const auto ds = fixture::xy({1, 1}, {0, 10});
    const auto tree = CartTree::fit(ds, 1, kFine);
    REQUIRE(tree.nodes().size() == 1);
    int tens = 0;
    for (int i = 0; i < 10000; ++i) tens += tree.sample_leaf(0, ds.target(), rng) == 10.0 ? 1 : 0;
    CHECK(std::abs(tens / 10000.0 - 0.5) < 0.02);
  }
  {
    const Dataset ds({fixture::numeric("x", {1, 1, 1}), fixture::nominal("c", {"a", "b"}, {0, 0, 1}),
                      fixture::numeric("y", {0, 0, 0})},
                     2);
    const std::vector<std::size_t> rows{0, 1, 2};
    const std::vector<std::size_t> features{0};
    const auto tree = CartTree::fit(ds, 1, features, rows, kFine);
    int a = 0;
    for (int i = 0; i < 10000; ++i) a += tree.sample_leaf(0, ds.values(1), rng) == 0.0 ? 1 : 0;
    CHECK(std::abs(a / 10000.0 - 2.0 / 3.0) < 0.02);
  }
  {
    const auto ds = fixture::xy({1}, {4});
    const auto tree = CartTree::fit(ds, 1, kFine);
    for (int i = 0; i < 100; ++i) CHECK(tree.sample_leaf(0, ds.target(), rng) == 4.0);
  }
}

TEST_CASE("cart: fitting is deterministic") {
  const auto ds = fixture::mixed(150, 3, 1, 9);
  const std::vector<std::size_t> feats{0, 1, 2, 3};
  std::vector<std::size_t> rows(ds.n_rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  const SplitOptions opts{2, 77};
  CHECK(CartTree::fit(ds, 4, feats, rows, kFine, opts) == CartTree::fit(ds, 4, feats, rows, kFine, opts));
}

TEST_CASE("cart: parameter validation") {
  CHECK_THROWS_AS((CartParams{.min_leaf = 0, .min_split = 2, .max_depth = std::nullopt}.validate()), Error);
}
