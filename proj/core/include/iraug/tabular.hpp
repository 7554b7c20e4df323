#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iraug {

enum class ColumnKind { Numeric, Nominal };

/// One column of a table. Nominal cells are stored as dense category codes
/// (0, 1, ...) indexing into `categories`.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  std::vector<std::string> categories;
  std::vector<double> values;

  [[nodiscard]] bool is_nominal() const noexcept { return kind == ColumnKind::Nominal; }
  [[nodiscard]] std::size_t n_categories() const noexcept { return categories.size(); }
  [[nodiscard]] int code(std::size_t row) const { return static_cast<int>(values[row]); }

  friend bool operator==(const Column&, const Column&) = default;
};

/// Column-major table with one designated continuous target column.
///
/// Invariants: at least one column and one row, every column has the same
/// length, the target column is numeric. Instances are treated as immutable
/// once built; derived tables are produced by `select_rows` / `with_rows`.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<Column> columns, std::size_t target_index);

  [[nodiscard]] std::size_t n_rows() const noexcept {
    return columns_.empty() ? 0 : columns_.front().values.size();
  }
  [[nodiscard]] std::size_t n_cols() const noexcept { return columns_.size(); }
  [[nodiscard]] std::size_t target_index() const noexcept { return target_index_; }

  [[nodiscard]] const Column& column(std::size_t c) const { return columns_.at(c); }
  [[nodiscard]] const std::vector<Column>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::span<const double> values(std::size_t c) const { return columns_.at(c).values; }
  [[nodiscard]] std::span<const double> target() const { return columns_[target_index_].values; }
  [[nodiscard]] double cell(std::size_t r, std::size_t c) const { return columns_[c].values[r]; }

  /// Column position by name, if present.
  [[nodiscard]] std::optional<std::size_t> find_column(std::string_view name) const;

  /// Copy of row `r` in column order.
  [[nodiscard]] std::vector<double> row(std::size_t r) const;

  /// New table holding the given rows (repeats allowed) in the given order.
  [[nodiscard]] Dataset select_rows(std::span<const std::size_t> rows) const;

  /// New table with the same schema whose cells are `rows` (row-major, one
  /// vector of width n_cols per row). Codes of nominal cells must be valid.
  [[nodiscard]] Dataset with_rows(const std::vector<std::vector<double>>& rows) const;

  /// This table followed by the rows of `other`, which must share the schema.
  [[nodiscard]] Dataset concat(const Dataset& other) const;

  /// True when `other` has identical names, kinds and category dictionaries.
  [[nodiscard]] bool same_schema(const Dataset& other) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Column> columns_;
  std::size_t target_index_ = 0;
};

struct ColumnSummary {
  double min = 0, max = 0, mean = 0, std = 0;
  double q1 = 0, median = 0, q3 = 0;
  std::map<std::string, std::size_t> category_counts;
};

using KindOverrides = std::map<std::string, ColumnKind>;

// An empty target name selects the last column.

Dataset load_csv(const std::filesystem::path& path, std::string_view target,
                 const KindOverrides& kind_overrides = {});
Dataset parse_csv(std::string_view text, std::string_view target,
                  const KindOverrides& kind_overrides = {});

Dataset load_arff(const std::filesystem::path& path, std::string_view target);
Dataset parse_arff(std::string_view text, std::string_view target);

/// Dispatches on the file extension (.arff, otherwise CSV).
Dataset load_dataset(const std::filesystem::path& path, std::string_view target);

/// Writes a header row and one line per instance. Numbers use the shortest
/// decimal form that round-trips exactly. Optional extra trailing column.
std::string to_csv(const Dataset& ds, const std::vector<std::string>* extra_column = nullptr,
                   std::string_view extra_name = {});
void write_csv(const Dataset& ds, const std::filesystem::path& path,
               const std::vector<std::string>* extra_column = nullptr,
               std::string_view extra_name = {});

ColumnSummary column_summary(const Dataset& ds, std::size_t col);

/// Raw CSV records (header included), without type inference.
std::vector<std::vector<std::string>> parse_csv_rows(std::string_view text);

/// Field quoted only when it contains a delimiter, quote, newline or
/// surrounding whitespace.
std::string csv_field(std::string_view s);

}  // namespace iraug
