#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iraug/harness.hpp"
#include "iraug/learners.hpp"
#include "iraug/strategy.hpp"

namespace iraug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `ir-augment` executable. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct DatasetEntry {
  std::string name;
  std::filesystem::path path;
  std::string target;
};

/// Parsed benchmark manifest. Grid entries are already expanded.
struct RunManifest {
  std::vector<DatasetEntry> datasets;
  std::vector<StrategyConfig> strategies;
  std::vector<LearnerConfig> learners;
  std::size_t repeats = 2;
  std::size_t folds = 5;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir;
};

/// Reads a manifest; relative paths resolve against the manifest's folder.
/// Throws iraug::Error(InvalidArgument) on schema problems and IoError when a
/// dataset file does not exist.
RunManifest load_manifest(const std::filesystem::path& path);
RunManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);

struct BenchmarkResult {
  std::vector<EvalRecord> records;
  std::vector<WinLossRow> summary;
};

/// Runs the full grid on up to `jobs` worker threads (0 = hardware
/// concurrency). Records come back sorted by key.
BenchmarkResult run_benchmark(const RunManifest& manifest, std::uint64_t seed, std::size_t jobs);

}  // namespace iraug::cli
