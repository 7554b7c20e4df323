#include "iraug/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "iraug/error.hpp"
#include "iraug/metrics.hpp"
#include "iraug/relevance.hpp"
#include "iraug/stats.hpp"

namespace iraug {

std::vector<std::size_t> FoldPlan::test_rows(std::size_t repeat, std::size_t fold) const {
  std::vector<std::size_t> out;
  const auto& a = assignments.at(repeat);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t repeat, std::size_t fold) const {
  std::vector<std::size_t> out;
  const auto& a = assignments.at(repeat);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != fold) out.push_back(i);
  return out;
}

FoldPlan make_plan(std::size_t n, std::size_t repeats, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::InvalidArgument, "at least two folds are required");
  if (repeats < 1) throw Error(ErrorCode::InvalidArgument, "at least one repeat is required");
  if (n < folds) throw Error(ErrorCode::InvalidArgument, "fewer rows than folds");
  FoldPlan plan;
  plan.repeats = repeats;
  plan.folds = folds;
  plan.seed = seed;
  for (std::size_t r = 0; r < repeats; ++r) {
    Rng rng(stats::mix_seed(seed, r));
    const auto perm = sample_without_replacement(n, n, rng);
    std::vector<std::size_t> fold_of(n);
    for (std::size_t pos = 0; pos < n; ++pos) fold_of[perm[pos]] = pos % folds;
    plan.assignments.push_back(std::move(fold_of));
  }
  return plan;
}

namespace {

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return stats::mix_seed(h, s.size());
}

std::uint64_t key_seed(std::uint64_t seed, const std::string& dataset, const std::string& tag,
                       const std::string& label, std::size_t repeat, std::size_t fold) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = hash_string(h, dataset);
  h = hash_string(h, tag);
  h = hash_string(h, label);
  return stats::mix_seed(stats::mix_seed(stats::mix_seed(seed, h), repeat), fold);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t strategy_seed(std::uint64_t seed, const std::string& dataset, const std::string& strategy,
                            std::size_t repeat, std::size_t fold) {
  return key_seed(seed, dataset, "strategy", strategy, repeat, fold);
}

std::uint64_t learner_seed(std::uint64_t seed, const std::string& dataset, const std::string& learner,
                           std::size_t repeat, std::size_t fold) {
  return key_seed(seed, dataset, "learner", learner, repeat, fold);
}

std::vector<EvalRecord> run_experiment(const std::string& dataset_name, const Dataset& ds,
                                       const StrategyConfig& strategy, const LearnerConfig& learner,
                                       const FoldPlan& plan, std::uint64_t seed) {
  for (const auto& a : plan.assignments)
    if (a.size() != ds.n_rows()) throw Error(ErrorCode::LengthMismatch, "fold plan does not match the dataset");
  const std::string s_label = strategy.label();
  const std::string l_label = learner.label();
  std::vector<EvalRecord> out;
  for (std::size_t r = 0; r < plan.repeats; ++r) {
    for (std::size_t f = 0; f < plan.folds; ++f) {
      EvalRecord rec;
      rec.dataset = dataset_name;
      rec.strategy = s_label;
      rec.learner = l_label;
      rec.repeat = r;
      rec.fold = f;
      const auto train_idx = plan.train_rows(r, f);
      const auto test_idx = plan.test_rows(r, f);
      const Dataset train = ds.select_rows(train_idx);
      const Dataset test = ds.select_rows(test_idx);
      try {
        const auto rel = build_relevance(train.target());

        const auto t0 = std::chrono::steady_clock::now();
        const auto resampled = apply_strategy(strategy, train, strategy_seed(seed, dataset_name, s_label, r, f));
        rec.resample_runtime_s = seconds_since(t0);

        const auto t1 = std::chrono::steady_clock::now();
        const auto pred =
            fit_predict(learner, resampled.data, test, learner_seed(seed, dataset_name, l_label, r, f));
        rec.fit_runtime_s = seconds_since(t1);

        const auto y = test.target();
        const auto phi = rel.evaluate(y);
        rec.rmse = rmse(y, pred);
        rec.rw_rmse = rw_rmse(y, pred, phi);
        rec.sera = sera(y, pred, phi).area;
      } catch (const Error& e) {
        rec.rmse = rec.rw_rmse = rec.sera = std::nan("");
        rec.skip_reason = std::string(to_string(e.code()));
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

TestResult wilcoxon(std::span<const double> a, std::span<const double> b, Alternative alternative) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "Wilcoxon test of empty samples");
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
  TestResult res;
  res.n_effective = d.size();
  const std::size_t n = d.size();
  if (n == 0) return res;

  // average ranks of |d|, kept doubled so ties stay integral
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });
  std::vector<std::size_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    for (std::size_t q = i; q <= j; ++q) rank2[order[q]] = i + j + 2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  std::size_t w2 = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] > 0) w2 += rank2[i];
  res.statistic = static_cast<double>(w2) / 2.0;

  double p_upper = 0.0;  // P(W+ >= observed)
  double p_lower = 0.0;  // P(W+ <= observed)
  if (n <= kWilcoxonExactLimit) {
    const std::size_t total = std::accumulate(rank2.begin(), rank2.end(), std::size_t{0});
    std::vector<double> count(total + 1, 0.0);
    count[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t r2 : rank2) {
      for (std::size_t s = reach + 1; s-- > 0;) count[s + r2] += count[s];
      reach += r2;
    }
    const double patterns = std::ldexp(1.0, static_cast<int>(n));
    for (std::size_t s = 0; s <= total; ++s) {
      if (s >= w2) p_upper += count[s];
      if (s <= w2) p_lower += count[s];
    }
    p_upper /= patterns;
    p_lower /= patterns;
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1) / 4.0;
    const double sd = std::sqrt(nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0);
    const double w = res.statistic;
    p_upper = sd > 0 ? 1.0 - stats::normal_cdf((w - mean - 0.5) / sd) : 1.0;
    p_lower = sd > 0 ? stats::normal_cdf((w - mean + 0.5) / sd) : 1.0;
  }
  switch (alternative) {
    case Alternative::Greater: res.p_value = p_upper; break;
    case Alternative::Less: res.p_value = p_lower; break;
    case Alternative::TwoSided: res.p_value = 2.0 * std::min(p_upper, p_lower); break;
  }
  res.p_value = std::clamp(res.p_value, 0.0, 1.0);
  return res;
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Rmse: return "rmse";
    case Metric::RwRmse: return "rw_rmse";
    case Metric::Sera: return "sera";
  }
  return "rmse";
}

namespace {
double metric_of(const EvalRecord& r, Metric m) {
  switch (m) {
    case Metric::Rmse: return r.rmse;
    case Metric::RwRmse: return r.rw_rmse;
    case Metric::Sera: return r.sera;
  }
  return r.rmse;
}
}  // namespace

std::vector<WinLossRow> wins_losses(const std::vector<EvalRecord>& records, const std::string& baseline, double alpha) {
  using FoldKey = std::pair<std::size_t, std::size_t>;
  // (dataset, strategy, learner) -> fold -> record
  std::map<std::tuple<std::string, std::string, std::string>, std::map<FoldKey, const EvalRecord*>> cells;
  for (const auto& r : records)
    if (!r.skipped()) cells[{r.dataset, r.strategy, r.learner}][{r.repeat, r.fold}] = &r;

  std::map<std::tuple<std::string, std::string, int>, WinLossRow> table;
  for (const auto& [key, folds] : cells) {
    const auto& [dataset, strategy, learner] = key;
    if (strategy == baseline) continue;
    const auto base_it = cells.find({dataset, baseline, learner});
    if (base_it == cells.end()) continue;
    for (Metric m : {Metric::Rmse, Metric::RwRmse, Metric::Sera}) {
      std::vector<double> s_vals;
      std::vector<double> b_vals;
      for (const auto& [fk, rec] : folds) {
        auto it = base_it->second.find(fk);
        if (it == base_it->second.end()) continue;
        s_vals.push_back(metric_of(*rec, m));
        b_vals.push_back(metric_of(*it->second, m));
      }
      if (s_vals.empty()) continue;
      auto& row = table[{strategy, learner, static_cast<int>(m)}];
      row.strategy = strategy;
      row.learner = learner;
      row.metric = m;
      ++row.datasets;
      const double s_mean = stats::mean(s_vals);
      const double b_mean = stats::mean(b_vals);
      const bool significant = wilcoxon(s_vals, b_vals).p_value < alpha;
      if (s_mean < b_mean) {
        ++row.wins;
        row.significant_wins += significant ? 1 : 0;
      } else if (s_mean > b_mean) {
        ++row.losses;
        row.significant_losses += significant ? 1 : 0;
      } else {
        ++row.ties;
      }
    }
  }
  std::vector<WinLossRow> out;
  out.reserve(table.size());
  for (auto& [k, row] : table) out.push_back(std::move(row));
  return out;
}

void sort_records(std::vector<EvalRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.dataset, a.strategy, a.learner, a.repeat, a.fold) <
           std::tie(b.dataset, b.strategy, b.learner, b.repeat, b.fold);
  });
}

std::string records_to_csv(const std::vector<EvalRecord>& records, bool runtimes) {
  std::string out = "dataset,strategy,learner,repeat,fold,rmse,rw_rmse,sera";
  out += runtimes ? ",runtime_s,resample_runtime_s,fit_runtime_s,status\n" : ",status\n";
  for (const auto& r : records) {
    out += csv_field(r.dataset) + ',' + csv_field(r.strategy) + ',' + csv_field(r.learner) + ',';
    out += std::to_string(r.repeat) + ',' + std::to_string(r.fold) + ',';
    out += format_number(r.rmse) + ',' + format_number(r.rw_rmse) + ',' + format_number(r.sera) + ',';
    if (runtimes) {
      out += format_number(r.resample_runtime_s) + ',' + format_number(r.resample_runtime_s) + ',' +
             format_number(r.fit_runtime_s) + ',';
    }
    out += r.skipped() ? csv_field("skipped:" + r.skip_reason) : std::string("ok");
    out += '\n';
  }
  return out;
}

std::vector<EvalRecord> records_from_csv(std::string_view text) {
  const auto rows = parse_csv_rows(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, "records file has no header");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[rows[0][i]] = i;
  for (const char* required : {"dataset", "strategy", "learner", "repeat", "fold", "rmse", "rw_rmse", "sera"})
    if (!col.contains(required))
      throw Error(ErrorCode::MalformedHeader, std::string("records file lacks column '") + required + "'");
  auto num = [](const std::string& s) {
    if (s == "nan") return std::nan("");
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw Error(ErrorCode::UnparseableCell, "bad number '" + s + "' in records file");
    return v;
  };
  std::vector<EvalRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != rows[0].size()) throw Error(ErrorCode::RaggedRow, "records line " + std::to_string(i + 1));
    EvalRecord r;
    r.dataset = row[col["dataset"]];
    r.strategy = row[col["strategy"]];
    r.learner = row[col["learner"]];
    r.repeat = static_cast<std::size_t>(num(row[col["repeat"]]));
    r.fold = static_cast<std::size_t>(num(row[col["fold"]]));
    r.rmse = num(row[col["rmse"]]);
    r.rw_rmse = num(row[col["rw_rmse"]]);
    r.sera = num(row[col["sera"]]);
    if (col.contains("resample_runtime_s")) r.resample_runtime_s = num(row[col["resample_runtime_s"]]);
    if (col.contains("fit_runtime_s")) r.fit_runtime_s = num(row[col["fit_runtime_s"]]);
    if (col.contains("status")) {
      const auto& status = row[col["status"]];
      if (status.rfind("skipped:", 0) == 0) r.skip_reason = status.substr(8);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_to_csv(const std::vector<WinLossRow>& rows) {
  std::string out = "strategy,learner,metric,datasets,wins,losses,ties,significant_wins,significant_losses\n";
  for (const auto& r : rows) {
    out += csv_field(r.strategy) + ',' + csv_field(r.learner) + ',' + std::string(to_string(r.metric)) + ',';
    out += std::to_string(r.datasets) + ',' + std::to_string(r.wins) + ',' + std::to_string(r.losses) + ',' +
           std::to_string(r.ties) + ',' + std::to_string(r.significant_wins) + ',' +
           std::to_string(r.significant_losses) + '\n';
  }
  return out;
}

}  // namespace iraug
