#include "iraug/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "iraug/cart.hpp"
#include "iraug/error.hpp"
#include "iraug/generator.hpp"
#include "iraug/relevance.hpp"
#include "iraug/stats.hpp"
#include "iraug/weighting.hpp"

namespace iraug::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument, "seed must be a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t require_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag);
  if (const char* env = std::getenv("IR_AUGMENT_SEED"); env && *env) return parse_seed(env);
  throw Error(ErrorCode::InvalidArgument, "--seed is required (or set IR_AUGMENT_SEED)");
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t plan_seed(std::uint64_t seed, const std::string& dataset) {
  return stats::mix_seed(seed, name_hash(dataset));
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
  if (path && *path != "-")
    write_file(*path, text);
  else
    out << text;
}

Dataset load_input(const std::string& path, const std::string& target) {
  if (!fs::exists(path)) throw Error(ErrorCode::IoError, "input file '" + path + "' does not exist");
  return load_dataset(path, target);
}

// strategy flags shared by resample and evaluate
struct StrategyFlags {
  std::string strategy = "none";
  std::string mode = "balance";
  double over = 0.5;
  double under = 0.5;
  double delta = 0.0;
  std::size_t k = 5;
  double threshold = kDefaultRelevanceThreshold;
  double alpha = 1.0;
  double eta = 0.5;
  std::string density = "kde";
  std::size_t min_leaf = CartParams{}.min_leaf;
  std::size_t min_split = CartParams{}.min_split;
  std::optional<std::size_t> max_depth;

  void add_to(CLI::App& app) {
    app.add_option("--strategy", strategy, "none, ru, ro, wercs, gn, smoter, smogn or cartgen-ir");
    app.add_option("--mode", mode, "balance or extreme");
    app.add_option("--over,--po", over, "WERCS oversampling fraction");
    app.add_option("--under,--pu", under, "WERCS undersampling fraction");
    app.add_option("--delta", delta, "noise level");
    app.add_option("--k", k, "nearest neighbours");
    app.add_option("--threshold", threshold, "relevance threshold for rare cases");
    app.add_option("--alpha", alpha, "rarity exponent");
    app.add_option("--eta", eta, "synthetic fraction of the input size");
    app.add_option("--density", density, "kde, denseweight or relevance");
    app.add_option("--min-leaf", min_leaf, "generator tree minimum leaf size");
    app.add_option("--min-split", min_split, "generator tree minimum split size");
    app.add_option("--max-depth", max_depth, "generator tree depth limit");
  }

  [[nodiscard]] StrategyConfig config() const {
    StrategyConfig cfg;
    cfg.kind = parse_strategy(strategy);
    cfg.mode = parse_partition_mode(mode);
    cfg.over = over;
    cfg.under = under;
    cfg.delta = delta;
    cfg.k = k;
    cfg.threshold = threshold;
    cfg.alpha = alpha;
    cfg.eta = eta;
    cfg.density = parse_density_method(density);
    cfg.cart.min_leaf = min_leaf;
    cfg.cart.min_split = min_split;
    cfg.cart.max_depth = max_depth;
    cfg.cart.validate();
    return cfg;
  }
};

json tree_node_json(const CartTree& tree, std::size_t id, const Dataset& schema) {
  const auto& node = tree.node(id);
  json j;
  j["n_rows"] = node.n_rows;
  if (node.is_leaf()) {
    const auto& target = schema.column(tree.target_column());
    if (target.is_nominal())
      j["prediction"] = target.categories.at(static_cast<std::size_t>(node.prediction));
    else
      j["prediction"] = node.prediction;
    return j;
  }
  const auto& rule = *node.split;
  const auto& col = schema.column(rule.feature);
  j["feature"] = col.name;
  j["gain"] = node.gain;
  if (rule.nominal) {
    json left = json::array();
    for (std::size_t c = 0; c < rule.side.size(); ++c)
      if (rule.side[c] == 1) left.push_back(col.categories.at(c));
    j["left_categories"] = left;
  } else {
    j["threshold"] = rule.threshold;
  }
  j["left"] = tree_node_json(tree, node.left, schema);
  j["right"] = tree_node_json(tree, node.right, schema);
  return j;
}

json trees_json(const std::vector<CartTree>& trees, const Dataset& schema) {
  json arr = json::array();
  for (const auto& tree : trees) {
    json t;
    t["column"] = schema.column(tree.target_column()).name;
    t["root"] = tree_node_json(tree, 0, schema);
    arr.push_back(std::move(t));
  }
  return arr;
}

int cmd_relevance(const std::string& input, const std::string& target, double threshold,
                  const std::optional<std::string>& dump_grid, std::size_t grid_points, std::ostream& out) {
  const Dataset ds = load_input(input, target);
  const auto y = ds.target();
  const auto fences = adjusted_fences(y);
  const auto rel = build_relevance(y);
  const auto rc = rare_count(rel, y, threshold);

  json j;
  j["target"] = ds.column(ds.target_index()).name;
  j["n"] = ds.n_rows();
  j["threshold"] = threshold;
  j["count"] = rc.count;
  j["fraction"] = rc.fraction;
  j["extreme_type"] = std::string(to_string(rel.extreme_type()));
  j["medcouple"] = fences.medcouple;
  j["fences"] = {{"lower", fences.lower}, {"upper", fences.upper}, {"q1", fences.q1}, {"q3", fences.q3}};
  json pts = json::array();
  for (const auto& p : rel.control_points()) pts.push_back({{"y", p.y}, {"phi", p.phi}, {"slope", p.slope}});
  j["control_points"] = pts;
  out << j.dump(2) << '\n';

  if (dump_grid) {
    if (grid_points < 2) throw Error(ErrorCode::InvalidArgument, "--grid-points must be at least 2");
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    std::string csv = "y,phi\n";
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double v = *lo + (*hi - *lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
      csv += format_number(v) + ',' + format_number(rel(v)) + '\n';
    }
    write_file(*dump_grid, csv);
  }
  return kExitOk;
}

int cmd_resample(const std::string& input, const std::string& target, const StrategyFlags& flags,
                 std::uint64_t seed, const std::optional<std::string>& out_path, bool tag_provenance,
                 const std::optional<std::string>& dump_weights, const std::optional<std::string>& dump_trees,
                 std::ostream& out) {
  const Dataset ds = load_input(input, target);
  const StrategyConfig cfg = flags.config();
  if ((dump_weights || dump_trees) && cfg.kind != StrategyKind::CartGenIR)
    throw Error(ErrorCode::InvalidArgument, "--dump-weights and --dump-trees apply to cartgen-ir only");

  Dataset result;
  std::vector<Provenance> provenance;
  if (cfg.kind == StrategyKind::CartGenIR) {
    const auto params = cartgen_params(cfg, seed);
    auto aug = cartgen_ir(ds, params);
    if (dump_weights) {
      const auto w = cartgen_weights(ds, params);
      const auto y = ds.target();
      std::string csv = "y,weight\n";
      for (std::size_t i = 0; i < y.size(); ++i) csv += format_number(y[i]) + ',' + format_number(w.probs[i]) + '\n';
      write_file(*dump_weights, csv);
    }
    if (dump_trees) write_file(*dump_trees, trees_json(aug.trees, ds).dump(2) + '\n');
    result = std::move(aug.combined);
    provenance = std::move(aug.provenance);
  } else {
    auto res = apply_strategy(cfg, ds, seed);
    result = std::move(res.data);
    provenance = std::move(res.provenance);
  }

  std::string csv;
  if (tag_provenance) {
    std::vector<std::string> tags;
    tags.reserve(provenance.size());
    for (auto p : provenance) tags.emplace_back(p == Provenance::Original ? "original" : "synthetic");
    csv = to_csv(result, &tags, "provenance");
  } else {
    csv = to_csv(result);
  }
  emit(out, out_path, csv);
  return kExitOk;
}

LearnerConfig make_learner(const std::string& kind, std::size_t n_estimators, const std::string& max_features) {
  LearnerConfig cfg;
  if (kind == "rf") {
    cfg.kind = LearnerKind::RandomForest;
  } else if (kind == "cart") {
    cfg.kind = LearnerKind::Cart;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown learner '" + kind + "' (expected rf or cart)");
  }
  if (n_estimators < 1) throw Error(ErrorCode::InvalidArgument, "n_estimators must be at least 1");
  cfg.n_estimators = n_estimators;
  cfg.max_features = parse_max_features(max_features);
  return cfg;
}

int cmd_evaluate(const std::string& input, const std::string& target, const StrategyFlags& flags,
                 const LearnerConfig& learner, std::size_t repeats, std::size_t folds, std::uint64_t seed,
                 const std::optional<std::string>& out_path, std::ostream& out) {
  const Dataset ds = load_input(input, target);
  const StrategyConfig cfg = flags.config();
  const std::string name = fs::path(input).stem().string();
  const auto plan = make_plan(ds.n_rows(), repeats, folds, plan_seed(seed, name));
  auto records = run_experiment(name, ds, cfg, learner, plan, seed);
  sort_records(records);
  emit(out, out_path, records_to_csv(records, true));
  return kExitOk;
}

std::string runtimes_csv(const std::vector<EvalRecord>& records) {
  std::string csv = "dataset,strategy,learner,repeat,fold,resample_runtime_s,fit_runtime_s\n";
  for (const auto& r : records) {
    csv += csv_field(r.dataset) + ',' + csv_field(r.strategy) + ',' + csv_field(r.learner) + ',' +
           std::to_string(r.repeat) + ',' + std::to_string(r.fold) + ',' + format_number(r.resample_runtime_s) +
           ',' + format_number(r.fit_runtime_s) + '\n';
  }
  return csv;
}

int cmd_benchmark(const std::string& manifest_path, const std::optional<std::string>& seed_flag,
                  const std::optional<std::string>& out_dir, std::size_t jobs, std::ostream& out) {
  RunManifest m = load_manifest(manifest_path);
  std::uint64_t seed = 0;
  if (seed_flag || !m.seed)
    seed = require_seed(seed_flag);
  else
    seed = *m.seed;
  if (out_dir) m.output_dir = *out_dir;

  const auto result = run_benchmark(m, seed, jobs);
  write_file(m.output_dir / "records.csv", records_to_csv(result.records, false));
  write_file(m.output_dir / "summary.csv", summary_to_csv(result.summary));
  write_file(m.output_dir / "runtimes.csv", runtimes_csv(result.records));

  json j;
  j["records"] = result.records.size();
  j["skipped"] = std::count_if(result.records.begin(), result.records.end(), [](const auto& r) { return r.skipped(); });
  j["output_dir"] = m.output_dir.string();
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_compare(const std::string& records_path, const std::string& baseline, double alpha,
                const std::optional<std::string>& out_path, std::ostream& out) {
  if (alpha <= 0 || alpha >= 1) throw Error(ErrorCode::InvalidArgument, "--alpha must lie in (0, 1)");
  auto records = records_from_csv(read_file(records_path));
  sort_records(records);
  emit(out, out_path, summary_to_csv(wins_losses(records, baseline, alpha)));
  return kExitOk;
}

// scalar or list -> list
std::vector<json> as_list(const json& v) {
  if (v.is_array()) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, "manifest grid lists must not be empty");
    return {v.begin(), v.end()};
  }
  return {v};
}

std::vector<json> expand_grid(const json& obj) {
  if (!obj.is_object()) throw Error(ErrorCode::InvalidArgument, "manifest grid entries must be objects");
  std::vector<json> combos{json::object()};
  for (const auto& [key, value] : obj.items()) {
    std::vector<json> next;
    for (const auto& partial : combos) {
      for (const auto& v : as_list(value)) {
        json c = partial;
        c[key] = v;
        next.push_back(std::move(c));
      }
    }
    combos = std::move(next);
  }
  return combos;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, "manifest field '" + key + "' has the wrong type");
  }
}

StrategyConfig strategy_from_json(const json& j) {
  static const std::set<std::string> known{"strategy", "mode",  "over",    "under",     "po",       "pu",
                                           "delta",    "k",     "threshold", "alpha",   "eta",      "density",
                                           "min_leaf", "min_split", "max_depth"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown strategy field '" + key + "'");
  if (!j.contains("strategy")) throw Error(ErrorCode::InvalidArgument, "strategy entry lacks 'strategy'");
  StrategyFlags f;
  f.strategy = get_as<std::string>(j, "strategy");
  if (j.contains("mode")) f.mode = get_as<std::string>(j, "mode");
  if (j.contains("over")) f.over = get_as<double>(j, "over");
  if (j.contains("po")) f.over = get_as<double>(j, "po");
  if (j.contains("under")) f.under = get_as<double>(j, "under");
  if (j.contains("pu")) f.under = get_as<double>(j, "pu");
  if (j.contains("delta")) f.delta = get_as<double>(j, "delta");
  if (j.contains("k")) f.k = get_as<std::size_t>(j, "k");
  if (j.contains("threshold")) f.threshold = get_as<double>(j, "threshold");
  if (j.contains("alpha")) f.alpha = get_as<double>(j, "alpha");
  if (j.contains("eta")) f.eta = get_as<double>(j, "eta");
  if (j.contains("density")) f.density = get_as<std::string>(j, "density");
  if (j.contains("min_leaf")) f.min_leaf = get_as<std::size_t>(j, "min_leaf");
  if (j.contains("min_split")) f.min_split = get_as<std::size_t>(j, "min_split");
  if (j.contains("max_depth")) f.max_depth = get_as<std::size_t>(j, "max_depth");
  return f.config();
}

LearnerConfig learner_from_json(const json& j) {
  static const std::set<std::string> known{"learner", "n_estimators", "max_features"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown learner field '" + key + "'");
  return make_learner(j.contains("learner") ? get_as<std::string>(j, "learner") : "rf",
                      j.contains("n_estimators") ? get_as<std::size_t>(j, "n_estimators") : 100,
                      j.contains("max_features") ? get_as<std::string>(j, "max_features") : "sqrt");
}

}  // namespace

RunManifest parse_manifest(const std::string& json_text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "manifest must be a JSON object");
  static const std::set<std::string> known{"datasets", "strategies", "learners", "plan", "seed", "output_dir"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown manifest field '" + key + "'");

  RunManifest m;
  if (!j.contains("datasets") || !j["datasets"].is_array() || j["datasets"].empty())
    throw Error(ErrorCode::InvalidArgument, "manifest needs a non-empty 'datasets' list");
  std::set<std::string> names;
  for (const auto& d : j["datasets"]) {
    DatasetEntry e;
    if (d.is_string()) {
      e.path = d.get<std::string>();
    } else if (d.is_object() && d.contains("path")) {
      e.path = get_as<std::string>(d, "path");
      if (d.contains("target")) e.target = get_as<std::string>(d, "target");
      if (d.contains("name")) e.name = get_as<std::string>(d, "name");
    } else {
      throw Error(ErrorCode::InvalidArgument, "dataset entries need a 'path'");
    }
    if (e.path.is_relative()) e.path = base_dir / e.path;
    if (e.name.empty()) e.name = e.path.stem().string();
    if (!fs::exists(e.path)) throw Error(ErrorCode::IoError, "dataset '" + e.path.string() + "' does not exist");
    if (!names.insert(e.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate dataset name '" + e.name + "'");
    m.datasets.push_back(std::move(e));
  }

  std::set<std::string> labels;
  auto add_strategy = [&](StrategyConfig cfg) {
    if (labels.insert(cfg.label()).second) m.strategies.push_back(std::move(cfg));
  };
  if (j.contains("strategies")) {
    if (!j["strategies"].is_array()) throw Error(ErrorCode::InvalidArgument, "'strategies' must be a list");
    for (const auto& entry : j["strategies"])
      for (const auto& combo : expand_grid(entry)) add_strategy(strategy_from_json(combo));
  }
  // the baseline is always part of the grid
  add_strategy(StrategyConfig{});

  if (j.contains("learners")) {
    if (!j["learners"].is_array()) throw Error(ErrorCode::InvalidArgument, "'learners' must be a list");
    std::set<std::string> seen;
    for (const auto& entry : j["learners"])
      for (const auto& combo : expand_grid(entry)) {
        auto cfg = learner_from_json(combo);
        if (seen.insert(cfg.label()).second) m.learners.push_back(cfg);
      }
  }
  if (m.learners.empty()) m.learners.push_back(LearnerConfig{});

  if (j.contains("plan")) {
    const auto& p = j["plan"];
    if (!p.is_object()) throw Error(ErrorCode::InvalidArgument, "'plan' must be an object");
    if (p.contains("repeats")) m.repeats = get_as<std::size_t>(p, "repeats");
    if (p.contains("folds")) m.folds = get_as<std::size_t>(p, "folds");
  }
  if (m.repeats < 1 || m.folds < 2) throw Error(ErrorCode::InvalidArgument, "plan needs repeats >= 1 and folds >= 2");
  if (j.contains("seed")) m.seed = get_as<std::uint64_t>(j, "seed");
  m.output_dir = j.contains("output_dir") ? fs::path(get_as<std::string>(j, "output_dir")) : fs::path("results");
  if (m.output_dir.is_relative()) m.output_dir = base_dir / m.output_dir;
  return m;
}

RunManifest load_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::IoError, "manifest '" + path.string() + "' does not exist");
  return parse_manifest(read_file(path), path.parent_path());
}

BenchmarkResult run_benchmark(const RunManifest& manifest, std::uint64_t seed, std::size_t jobs) {
  std::vector<Dataset> tables;
  std::vector<FoldPlan> plans;
  for (const auto& d : manifest.datasets) {
    tables.push_back(load_dataset(d.path, d.target));
    plans.push_back(make_plan(tables.back().n_rows(), manifest.repeats, manifest.folds, plan_seed(seed, d.name)));
  }

  struct Task {
    std::size_t dataset, strategy, learner;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < tables.size(); ++d)
    for (std::size_t s = 0; s < manifest.strategies.size(); ++s)
      for (std::size_t l = 0; l < manifest.learners.size(); ++l) tasks.push_back({d, s, l});

  std::vector<std::vector<EvalRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        results[i] = run_experiment(manifest.datasets[t.dataset].name, tables[t.dataset],
                                    manifest.strategies[t.strategy], manifest.learners[t.learner], plans[t.dataset],
                                    seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  BenchmarkResult out;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(out.records));
  sort_records(out.records);
  out.summary = wins_losses(out.records);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resampling and evaluation tools for imbalanced regression", "ir-augment"};
  app.require_subcommand(1);

  std::string input;
  std::string target;
  std::optional<std::string> seed;
  std::optional<std::string> out_path;

  auto* rel = app.add_subcommand("relevance", "Relevance function and rare-case count of a target");
  double threshold = kDefaultRelevanceThreshold;
  std::optional<std::string> dump_grid;
  std::size_t grid_points = 101;
  rel->add_option("--input", input, "CSV or ARFF file")->required();
  rel->add_option("--target", target, "target column (default: last)");
  rel->add_option("--threshold", threshold, "relevance threshold");
  rel->add_option("--dump-grid", dump_grid, "write (y, phi) pairs on an even grid to this CSV");
  rel->add_option("--grid-points", grid_points, "grid size for --dump-grid");

  auto* res = app.add_subcommand("resample", "Apply one data-level strategy");
  StrategyFlags res_flags;
  bool tag_provenance = false;
  std::optional<std::string> dump_weights;
  std::optional<std::string> dump_trees;
  res->add_option("--input", input, "CSV or ARFF file")->required();
  res->add_option("--target", target, "target column (default: last)");
  res_flags.add_to(*res);
  res->add_option("--seed", seed, "random seed");
  res->add_option("--out", out_path, "output CSV (default: stdout)");
  res->add_flag("--tag-provenance", tag_provenance, "append a provenance column");
  res->add_option("--dump-weights", dump_weights, "write (y, weight) selection weights to this CSV");
  res->add_option("--dump-trees", dump_trees, "write the generator trees to this JSON file");

  auto* ev = app.add_subcommand("evaluate", "Cross-validate one strategy with one learner");
  StrategyFlags ev_flags;
  std::string learner = "rf";
  std::size_t n_estimators = 100;
  std::string max_features = "sqrt";
  std::size_t repeats = 2;
  std::size_t folds = 5;
  ev->add_option("--input", input, "CSV or ARFF file")->required();
  ev->add_option("--target", target, "target column (default: last)");
  ev_flags.add_to(*ev);
  ev->add_option("--learner", learner, "rf or cart");
  ev->add_option("--n-estimators", n_estimators, "forest size");
  ev->add_option("--max-features", max_features, "sqrt, log2 or all");
  ev->add_option("--repeats", repeats, "cross-validation repeats");
  ev->add_option("--folds", folds, "folds per repeat");
  ev->add_option("--seed", seed, "random seed");
  ev->add_option("--out", out_path, "output CSV (default: stdout)");

  auto* bm = app.add_subcommand("benchmark", "Run a manifest of datasets, strategies and learners");
  std::string manifest;
  std::size_t jobs = 0;
  std::optional<std::string> out_dir;
  bm->add_option("--manifest", manifest, "run manifest (JSON)")->required();
  bm->add_option("--seed", seed, "random seed (overrides the manifest)");
  bm->add_option("--jobs", jobs, "worker threads (0: all cores)");
  bm->add_option("--output-dir", out_dir, "output directory (overrides the manifest)");

  auto* cmp = app.add_subcommand("compare", "Recompute the wins/losses summary from a records CSV");
  std::string records;
  std::string baseline = "None";
  double alpha = 0.05;
  cmp->add_option("--records", records, "records CSV")->required();
  cmp->add_option("--baseline", baseline, "baseline strategy label");
  cmp->add_option("--alpha", alpha, "significance level");
  cmp->add_option("--out", out_path, "output CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ExtrasError& e) {
    err << json{{"error", "UnknownArgument"}, {"message", e.what()}}.dump() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << '\n';
    return kExitValidation;
  }

  try {
    if (rel->parsed()) return cmd_relevance(input, target, threshold, dump_grid, grid_points, out);
    if (res->parsed())
      return cmd_resample(input, target, res_flags, require_seed(seed), out_path, tag_provenance, dump_weights,
                          dump_trees, out);
    if (ev->parsed())
      return cmd_evaluate(input, target, ev_flags, make_learner(learner, n_estimators, max_features), repeats, folds,
                          require_seed(seed), out_path, out);
    if (bm->parsed()) return cmd_benchmark(manifest, seed, out_dir, jobs, out);
    if (cmp->parsed()) return cmd_compare(records, baseline, alpha, out_path, out);
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace iraug::cli
