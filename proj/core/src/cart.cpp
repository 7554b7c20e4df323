#include "iraug/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iraug/error.hpp"

namespace iraug {

void CartParams::validate() const {
  if (min_leaf < 1) throw Error(ErrorCode::InvalidArgument, "min_leaf must be at least 1");
  if (min_split < 2 * min_leaf) throw Error(ErrorCode::InvalidArgument, "min_split must be at least 2 * min_leaf");
}

namespace {

// Splits whose gain is below this fraction of the node impurity are rounding noise.
constexpr double kRelativeGainTolerance = 1e-12;
// Above this many categories a multi-class target falls back to the ordered scan.
constexpr std::size_t kMaxExhaustiveCategories = 8;

struct Candidate {
  bool found = false;
  double gain = 0;
  std::size_t slot = 0;
  double threshold = 0;
  std::vector<std::uint8_t> side;
};

// Sufficient statistics of a set of rows: count plus either the centered
// target sum (regression) or per-class counts (classification).
struct Stats {
  std::size_t n = 0;
  double sum = 0;
  std::vector<double> classes;
};

class Builder {
 public:
  Builder(const Dataset& data, std::size_t target_col, std::span<const std::size_t> features,
          std::span<const std::size_t> rows, const CartParams& params, const SplitOptions& options)
      : params_(params), options_(options), rng_(options.seed), rows_(rows.begin(), rows.end()) {
    const auto& target = data.column(target_col);
    nominal_target_ = target.is_nominal();
    n_classes_ = target.n_categories();
    const std::size_t m = rows_.size();
    y_.resize(m);
    for (std::size_t p = 0; p < m; ++p) y_[p] = target.values[rows_[p]];

    features_.assign(features.begin(), features.end());
    std::sort(features_.begin(), features_.end());
    features_.erase(std::unique(features_.begin(), features_.end()), features_.end());
    const std::size_t nf = features_.size();
    x_.resize(nf);
    nominal_.resize(nf);
    n_cats_.resize(nf);
    sorted_.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& col = data.column(features_[f]);
      nominal_[f] = col.is_nominal();
      n_cats_[f] = col.n_categories();
      x_[f].resize(m);
      for (std::size_t p = 0; p < m; ++p) x_[f][p] = col.values[rows_[p]];
      if (!nominal_[f]) {
        auto& order = sorted_[f];
        order.resize(m);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return x_[f][a] < x_[f][b]; });
      }
    }
    positions_.resize(m);
    std::iota(positions_.begin(), positions_.end(), 0u);
    goes_left_.assign(m, 0);
    buffer_.resize(m);
  }

  std::vector<CartNode> build() {
    struct Task {
      std::size_t node, begin, end, depth;
    };
    std::vector<CartNode> nodes(1);
    std::vector<Task> stack{{0, 0, positions_.size(), 0}};
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      auto& node = nodes[task.node];
      node.n_rows = task.end - task.begin;
      Candidate best;
      const bool may_split = node.n_rows >= params_.min_split &&
                             (!params_.max_depth || task.depth < *params_.max_depth);
      if (may_split) best = best_split(task.begin, task.end);
      if (!best.found) {
        make_leaf(node, task.begin, task.end);
        continue;
      }
      SplitRule rule;
      rule.feature = features_[best.slot];
      rule.nominal = nominal_[best.slot];
      rule.threshold = best.threshold;
      rule.side = std::move(best.side);
      const std::size_t n_left = partition(rule, best.slot, task.begin, task.end);
      node.split = std::move(rule);
      node.gain = best.gain;
      const std::size_t left_id = nodes.size();
      node.left = left_id;
      node.right = left_id + 1;
      nodes.emplace_back();
      nodes.emplace_back();
      // right pushed first so the left subtree is expanded first
      stack.push_back({left_id + 1, task.begin + n_left, task.end, task.depth + 1});
      stack.push_back({left_id, task.begin, task.begin + n_left, task.depth + 1});
    }
    return nodes;
  }

 private:
  Stats empty_stats() const {
    Stats s;
    if (nominal_target_) s.classes.assign(n_classes_, 0.0);
    return s;
  }

  void add(Stats& s, std::uint32_t p, double center) const {
    ++s.n;
    if (nominal_target_)
      s.classes[static_cast<std::size_t>(y_[p])] += 1.0;
    else
      s.sum += y_[p] - center;
  }

  // n-weighted "purity" term; gain = score(L) + score(R) - score(parent).
  double score(const Stats& s) const {
    if (s.n == 0) return 0.0;
    if (!nominal_target_) return s.sum * s.sum / static_cast<double>(s.n);
    double sq = 0.0;
    for (double c : s.classes) sq += c * c;
    return sq / static_cast<double>(s.n);
  }

  Candidate best_split(std::size_t begin, std::size_t end) {
    Candidate best;
    const std::size_t m = end - begin;
    double lo = y_[positions_[begin]];
    double hi = lo;
    for (std::size_t i = begin; i < end; ++i) {
      lo = std::min(lo, y_[positions_[i]]);
      hi = std::max(hi, y_[positions_[i]]);
    }
    if (lo == hi) return best;

    double center = 0.0;
    Stats total = empty_stats();
    double impurity = 0.0;
    if (!nominal_target_) {
      for (std::size_t i = begin; i < end; ++i) center += y_[positions_[i]];
      center /= static_cast<double>(m);
      for (std::size_t i = begin; i < end; ++i) {
        const double d = y_[positions_[i]] - center;
        impurity += d * d;
      }
    }
    for (std::size_t i = begin; i < end; ++i) add(total, positions_[i], center);
    if (nominal_target_) impurity = static_cast<double>(m) - score(total);
    const double parent = score(total);

    for (std::size_t f : candidate_slots()) {
      if (nominal_[f])
        scan_nominal(f, begin, end, center, total, parent, best);
      else
        scan_numeric(f, begin, end, center, total, parent, best);
    }
    if (best.found && !(best.gain > kRelativeGainTolerance * impurity)) best.found = false;
    return best;
  }

  std::vector<std::size_t> candidate_slots() {
    const std::size_t nf = features_.size();
    std::vector<std::size_t> slots(nf);
    std::iota(slots.begin(), slots.end(), 0);
    const std::size_t k = options_.features_per_node;
    if (k == 0 || k >= nf) return slots;
    for (std::size_t i = 0; i < k; ++i) std::swap(slots[i], slots[i + uniform_index(rng_, nf - i)]);
    slots.resize(k);
    std::sort(slots.begin(), slots.end());
    return slots;
  }

  void consider(Candidate& best, double gain, std::size_t slot, double threshold, std::vector<std::uint8_t> side = {}) {
    if (best.found && !(gain > best.gain)) return;
    best.found = true;
    best.gain = gain;
    best.slot = slot;
    best.threshold = threshold;
    best.side = std::move(side);
  }

  void scan_numeric(std::size_t f, std::size_t begin, std::size_t end, double center, const Stats& total,
                    double parent, Candidate& best) {
    const auto& order = sorted_[f];
    const auto& x = x_[f];
    const std::size_t m = end - begin;
    Stats left = empty_stats();
    Stats right = total;
    for (std::size_t i = begin; i + 1 < end; ++i) {
      const std::uint32_t p = order[i];
      add(left, p, center);
      --right.n;
      if (nominal_target_)
        right.classes[static_cast<std::size_t>(y_[p])] -= 1.0;
      else
        right.sum -= y_[p] - center;
      const double a = x[p];
      const double b = x[order[i + 1]];
      if (!(a < b)) continue;
      if (left.n < params_.min_leaf || m - left.n < params_.min_leaf) continue;
      double threshold = a + (b - a) / 2.0;
      if (!(threshold < b)) threshold = a;
      consider(best, score(left) + score(right) - parent, f, threshold);
    }
  }

  void scan_nominal(std::size_t f, std::size_t begin, std::size_t end, double center, const Stats& total,
                    double parent, Candidate& best) {
    const std::size_t n_cats = n_cats_[f];
    std::vector<Stats> groups(n_cats, empty_stats());
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t p = positions_[i];
      add(groups[static_cast<std::size_t>(x_[f][p])], p, center);
    }
    std::vector<std::size_t> present;
    for (std::size_t c = 0; c < n_cats; ++c)
      if (groups[c].n > 0) present.push_back(c);
    if (present.size() < 2) return;
    const std::size_t m = end - begin;

    auto evaluate = [&](const std::vector<std::uint8_t>& side) {
      Stats left = empty_stats();
      for (std::size_t c : present) {
        if (side[c] != 1) continue;
        left.n += groups[c].n;
        left.sum += groups[c].sum;
        for (std::size_t k = 0; k < left.classes.size(); ++k) left.classes[k] += groups[c].classes[k];
      }
      if (left.n < params_.min_leaf || m - left.n < params_.min_leaf) return;
      Stats right = total;
      right.n -= left.n;
      right.sum -= left.sum;
      for (std::size_t k = 0; k < right.classes.size(); ++k) right.classes[k] -= left.classes[k];
      consider(best, score(left) + score(right) - parent, f, 0.0, side);
    };

    std::size_t classes_present = 0;
    if (nominal_target_)
      for (double c : total.classes) classes_present += c > 0 ? 1 : 0;

    // The ordered reduction below is only optimal for SSE or two classes with
    // no leaf-size floor, so small category sets are enumerated otherwise.
    const bool ordered_exact = (!nominal_target_ || classes_present <= 2) && params_.min_leaf <= 1;
    if (!ordered_exact && present.size() <= kMaxExhaustiveCategories) {
      // every bipartition once: the last present category always goes right
      const std::size_t k = present.size();
      for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
        std::vector<std::uint8_t> side(n_cats, 0);
        for (std::size_t i = 0; i < k; ++i) side[present[i]] = (mask >> i) & 1u ? 1 : 2;
        evaluate(side);
      }
      return;
    }

    // Ordered-category reduction: sort by mean target, or by the proportion
    // of one reference class, then scan prefixes like a numeric feature.
    std::vector<double> key(n_cats, 0.0);
    if (!nominal_target_) {
      for (std::size_t c : present) key[c] = groups[c].sum / static_cast<double>(groups[c].n);
    } else {
      std::size_t ref = 0;
      if (classes_present > 2) {
        ref = static_cast<std::size_t>(std::max_element(total.classes.begin(), total.classes.end()) - total.classes.begin());
      } else {
        while (ref < total.classes.size() && total.classes[ref] == 0) ++ref;
      }
      for (std::size_t c : present) key[c] = groups[c].classes[ref] / static_cast<double>(groups[c].n);
    }
    std::stable_sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    std::vector<std::uint8_t> side(n_cats, 0);
    for (std::size_t c : present) side[c] = 2;
    for (std::size_t i = 0; i + 1 < present.size(); ++i) {
      side[present[i]] = 1;
      evaluate(side);
    }
  }

  bool route_left(const SplitRule& rule, std::size_t slot, std::uint32_t p) const {
    const double v = x_[slot][p];
    if (!rule.nominal) return v <= rule.threshold;
    return rule.side[static_cast<std::size_t>(v)] == 1;
  }

  template <typename Vec>
  void stable_partition_range(Vec& arr, std::size_t begin, std::size_t end) {
    std::size_t l = begin;
    std::size_t r = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t p = arr[i];
      if (goes_left_[p])
        arr[l++] = p;
      else
        buffer_[r++] = p;
    }
    std::copy(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(r), arr.begin() + static_cast<std::ptrdiff_t>(l));
  }

  std::size_t partition(const SplitRule& rule, std::size_t slot, std::size_t begin, std::size_t end) {
    std::size_t n_left = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t p = positions_[i];
      goes_left_[p] = route_left(rule, slot, p) ? 1 : 0;
      n_left += goes_left_[p];
    }
    stable_partition_range(positions_, begin, end);
    for (std::size_t f = 0; f < features_.size(); ++f)
      if (!nominal_[f]) stable_partition_range(sorted_[f], begin, end);
    return n_left;
  }

  void make_leaf(CartNode& node, std::size_t begin, std::size_t end) {
    node.rows.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) node.rows.push_back(rows_[positions_[i]]);
    if (!nominal_target_) {
      double s = 0.0;
      for (std::size_t i = begin; i < end; ++i) s += y_[positions_[i]];
      node.prediction = s / static_cast<double>(end - begin);
    } else {
      std::vector<std::size_t> counts(n_classes_, 0);
      for (std::size_t i = begin; i < end; ++i) ++counts[static_cast<std::size_t>(y_[positions_[i]])];
      node.prediction = static_cast<double>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }
  }

  const CartParams& params_;
  const SplitOptions& options_;
  Rng rng_;
  std::vector<std::size_t> rows_;
  std::vector<double> y_;
  bool nominal_target_ = false;
  std::size_t n_classes_ = 0;
  std::vector<std::size_t> features_;
  std::vector<std::vector<double>> x_;
  std::vector<bool> nominal_;
  std::vector<std::size_t> n_cats_;
  std::vector<std::vector<std::uint32_t>> sorted_;
  std::vector<std::uint32_t> positions_;
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::uint32_t> buffer_;
};

}  // namespace

CartTree CartTree::fit(const Dataset& data, std::size_t target_col, std::span<const std::size_t> feature_cols,
                       std::span<const std::size_t> rows, const CartParams& params, const SplitOptions& options) {
  params.validate();
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "cannot fit a tree on an empty training set");
  if (target_col >= data.n_cols()) throw Error(ErrorCode::InvalidArgument, "tree target column out of range");
  for (std::size_t f : feature_cols)
    if (f >= data.n_cols() || f == target_col) throw Error(ErrorCode::InvalidArgument, "invalid tree feature column");
  CartTree tree;
  tree.target_col_ = target_col;
  tree.target_kind_ = data.column(target_col).kind;
  tree.features_.assign(feature_cols.begin(), feature_cols.end());
  std::sort(tree.features_.begin(), tree.features_.end());
  Builder builder(data, target_col, feature_cols, rows, params, options);
  tree.nodes_ = builder.build();
  return tree;
}

CartTree CartTree::fit(const Dataset& data, std::size_t target_col, const CartParams& params) {
  std::vector<std::size_t> features;
  for (std::size_t c = 0; c < data.n_cols(); ++c)
    if (c != target_col) features.push_back(c);
  std::vector<std::size_t> rows(data.n_rows());
  std::iota(rows.begin(), rows.end(), 0);
  return fit(data, target_col, features, rows, params);
}

LeafId CartTree::leaf_of(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const auto& node = nodes_[id];
    const auto& rule = *node.split;
    const double v = row[rule.feature];
    bool left = false;
    if (!rule.nominal) {
      left = v <= rule.threshold;
    } else {
      const auto code = static_cast<std::size_t>(v);
      const std::uint8_t side = code < rule.side.size() ? rule.side[code] : 0;
      // categories unseen at this node follow the larger child
      left = side == 0 ? nodes_[node.left].n_rows >= nodes_[node.right].n_rows : side == 1;
    }
    id = left ? node.left : node.right;
  }
  return id;
}

double CartTree::predict(std::span<const double> row) const { return nodes_[leaf_of(row)].prediction; }

double CartTree::sample_leaf(LeafId leaf, std::span<const double> target_values, Rng& rng) const {
  const auto& node = nodes_.at(leaf);
  if (!node.is_leaf() || node.rows.empty()) throw Error(ErrorCode::InvalidArgument, "sample_leaf on a non-leaf node");
  return target_values[node.rows[uniform_index(rng, node.rows.size())]];
}

std::vector<LeafId> CartTree::leaves() const {
  std::vector<LeafId> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

}  // namespace iraug
