#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "iraug/error.hpp"
#include "iraug/learners.hpp"
#include "iraug/metrics.hpp"

using namespace iraug;

TEST_CASE("features per node") {
  CHECK(features_per_node(MaxFeatures::Sqrt, 10) == 4);
  CHECK(features_per_node(MaxFeatures::Sqrt, 9) == 3);
  CHECK(features_per_node(MaxFeatures::Log2, 10) == 4);
  CHECK(features_per_node(MaxFeatures::Log2, 1) == 1);
  CHECK(features_per_node(MaxFeatures::All, 7) == 7);
  CHECK(parse_max_features("log2") == MaxFeatures::Log2);
  CHECK_THROWS_AS(parse_max_features("half"), Error);
}

TEST_CASE("forest: single tree without bagging equals the tree") {
  const auto ds = fixture::mixed(80, 3, 1, 2);
  ForestParams p;
  p.n_estimators = 1;
  p.max_features = MaxFeatures::All;
  p.bootstrap = false;
  const auto forest = Forest::fit(ds, p);
  const auto tree = CartTree::fit(ds, ds.target_index(), p.cart);
  for (std::size_t r = 0; r < ds.n_rows(); ++r) CHECK(forest.predict(ds.row(r)) == tree.predict(ds.row(r)));
}

TEST_CASE("forest: one row") {
  const auto ds = fixture::xy({1}, {6});
  ForestParams p;
  p.n_estimators = 3;
  const auto f = Forest::fit(ds, p);
  CHECK(f.predict(std::vector<double>{123, 0}) == 6.0);
}

TEST_CASE("forest: constant target") {
  const auto ds = fixture::xy({1, 2, 3, 4, 5}, {2, 2, 2, 2, 2});
  const auto f = Forest::fit(ds, ForestParams{});
  for (double x : {-5.0, 2.5, 50.0}) CHECK(f.predict(std::vector<double>{x, 0}) == 2.0);
}

TEST_CASE("forest: averaging beats a single tree on a line") {
  std::vector<double> x, y;
  for (int i = 0; i < 200; ++i) {
    x.push_back(i / 10.0);
    y.push_back(2 * i / 10.0);
  }
  const auto train = fixture::xy(x, y);
  std::vector<double> tx, ty;
  for (int i = 0; i < 199; ++i) {
    tx.push_back(i / 10.0 + 0.05);
    ty.push_back(2 * (i / 10.0 + 0.05));
  }
  const auto test = fixture::xy(tx, ty);
  ForestParams p;
  p.seed = 5;
  const auto forest_pred = Forest::fit(train, p).predict(test);
  const auto tree = CartTree::fit(train, 1, p.cart);
  std::vector<double> tree_pred;
  for (std::size_t r = 0; r < test.n_rows(); ++r) tree_pred.push_back(tree.predict(test.row(r)));
  CHECK(rmse(test.target(), forest_pred) < rmse(test.target(), tree_pred));
}

TEST_CASE("forest: seeded and reproducible") {
  const auto ds = fixture::mixed(120, 4, 1, 8);
  ForestParams p;
  p.n_estimators = 20;
  p.seed = 9;
  const auto a = Forest::fit(ds, p).predict(ds);
  const auto b = Forest::fit(ds, p).predict(ds);
  CHECK(a == b);
  p.seed = 10;
  CHECK(Forest::fit(ds, p).predict(ds) != a);
}

TEST_CASE("learner labels") {
  LearnerConfig rf;
  CHECK(rf.label() == "rf(n_estimators=100,max_features=sqrt)");
  CHECK_THROWS_AS(Forest::fit(fixture::xy({1}, {1}), ForestParams{.n_estimators = 0}), Error);
}
