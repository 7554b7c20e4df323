#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iraug/learners.hpp"
#include "iraug/strategy.hpp"
#include "iraug/tabular.hpp"

namespace iraug {

/// Repeated k-fold assignment: `assignments[r][i]` is the test fold of row i
/// in repeat r.
struct FoldPlan {
  std::size_t repeats = 2;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> assignments;

  [[nodiscard]] std::vector<std::size_t> test_rows(std::size_t repeat, std::size_t fold) const;
  [[nodiscard]] std::vector<std::size_t> train_rows(std::size_t repeat, std::size_t fold) const;
};

FoldPlan make_plan(std::size_t n, std::size_t repeats = 2, std::size_t folds = 5, std::uint64_t seed = 0);

struct EvalRecord {
  std::string dataset;
  std::string strategy;
  std::string learner;
  std::size_t repeat = 0;
  std::size_t fold = 0;
  double rmse = 0;
  double rw_rmse = 0;
  double sera = 0;
  double resample_runtime_s = 0;
  double fit_runtime_s = 0;
  /// Empty for a completed fold, otherwise why the fold was skipped.
  std::string skip_reason;

  [[nodiscard]] bool skipped() const noexcept { return !skip_reason.empty(); }
};

/// Seeds for one fold. The learner seed ignores the strategy so every
/// strategy is compared under the same model randomness.
std::uint64_t strategy_seed(std::uint64_t seed, const std::string& dataset, const std::string& strategy,
                            std::size_t repeat, std::size_t fold);
std::uint64_t learner_seed(std::uint64_t seed, const std::string& dataset, const std::string& learner,
                           std::size_t repeat, std::size_t fold);

/// Runs every (repeat, fold) of `plan`. Resampling touches training folds
/// only; the relevance used by RW-RMSE and SERA is built on the training fold
/// and applied to the test targets.
std::vector<EvalRecord> run_experiment(const std::string& dataset_name, const Dataset& ds,
                                       const StrategyConfig& strategy, const LearnerConfig& learner,
                                       const FoldPlan& plan, std::uint64_t seed);

enum class Alternative { TwoSided, Greater, Less };

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  std::size_t n_effective = 0;
};

/// Wilcoxon signed-rank test on paired samples (a - b). Zero differences are
/// dropped and tied magnitudes share average ranks. Exact null distribution
/// up to 25 effective pairs, normal approximation with continuity correction
/// above. `statistic` is the positive-rank sum W+.
TestResult wilcoxon(std::span<const double> a, std::span<const double> b,
                    Alternative alternative = Alternative::TwoSided);

/// Largest effective sample size handled by the exact distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

enum class Metric { Rmse, RwRmse, Sera };
std::string_view to_string(Metric m) noexcept;

struct WinLossRow {
  std::string strategy;
  std::string learner;
  Metric metric = Metric::Rmse;
  std::size_t datasets = 0;
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
  std::size_t significant_wins = 0;
  std::size_t significant_losses = 0;
};

/// Per strategy x learner x metric, counts datasets where the strategy's mean
/// fold score is lower (win) or higher (loss) than the baseline's. A win or
/// loss is significant when the fold-paired two-sided Wilcoxon p-value is
/// below `alpha`.
std::vector<WinLossRow> wins_losses(const std::vector<EvalRecord>& records, const std::string& baseline = "None",
                                    double alpha = 0.05);

/// Sorts by (dataset, strategy, learner, repeat, fold).
void sort_records(std::vector<EvalRecord>& records);

/// Result CSV. With `runtimes` the columns runtime_s (resampling time),
/// resample_runtime_s and fit_runtime_s are included; without them the output
/// depends only on the inputs and seeds.
std::string records_to_csv(const std::vector<EvalRecord>& records, bool runtimes);
std::vector<EvalRecord> records_from_csv(std::string_view text);

std::string summary_to_csv(const std::vector<WinLossRow>& rows);

}  // namespace iraug
