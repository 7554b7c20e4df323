#include "iraug/tabular.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "iraug/error.hpp"
#include "iraug/stats.hpp"

namespace iraug {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MissingTarget: return "MissingTarget";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::UnparseableCell: return "UnparseableCell";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::UndeclaredCategory: return "UndeclaredCategory";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NoRareRegion: return "NoRareRegion";
    case ErrorCode::EmptyRarePartition: return "EmptyRarePartition";
    case ErrorCode::ZeroRelevanceMass: return "ZeroRelevanceMass";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Dataset::Dataset(std::vector<Column> columns, std::size_t target_index)
    : columns_(std::move(columns)), target_index_(target_index) {
  if (columns_.empty()) throw Error(ErrorCode::InvalidArgument, "dataset needs at least one column");
  if (target_index_ >= columns_.size()) throw Error(ErrorCode::MissingTarget, "target index out of range");
  if (columns_[target_index_].is_nominal())
    throw Error(ErrorCode::InvalidArgument, "target column '" + columns_[target_index_].name + "' is not numeric");
  const std::size_t n = columns_.front().values.size();
  for (const auto& col : columns_) {
    if (col.values.size() != n) throw Error(ErrorCode::RaggedRow, "column '" + col.name + "' has a different length");
    if (col.is_nominal()) {
      for (double v : col.values) {
        if (v < 0 || v >= static_cast<double>(col.categories.size()) || v != std::floor(v))
          throw Error(ErrorCode::InvalidArgument, "invalid category code in column '" + col.name + "'");
      }
    }
  }
}

std::optional<std::size_t> Dataset::find_column(std::string_view name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c].name == name) return c;
  return std::nullopt;
}

std::vector<double> Dataset::row(std::size_t r) const {
  std::vector<double> out(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) out[c] = columns_[c].values[r];
  return out;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.target_index_ = target_index_;
  out.columns_.reserve(columns_.size());
  for (const auto& col : columns_) {
    Column c{col.name, col.kind, col.categories, {}};
    c.values.reserve(rows.size());
    for (std::size_t r : rows) c.values.push_back(col.values.at(r));
    out.columns_.push_back(std::move(c));
  }
  return out;
}

Dataset Dataset::with_rows(const std::vector<std::vector<double>>& rows) const {
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& col : columns_) cols.push_back(Column{col.name, col.kind, col.categories, {}});
  for (auto& c : cols) c.values.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != cols.size()) throw Error(ErrorCode::RaggedRow, "row width does not match schema");
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].values.push_back(r[c]);
  }
  return Dataset(std::move(cols), target_index_);
}

bool Dataset::same_schema(const Dataset& other) const {
  if (other.columns_.size() != columns_.size() || other.target_index_ != target_index_) return false;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& a = columns_[c];
    const auto& b = other.columns_[c];
    if (a.name != b.name || a.kind != b.kind || a.categories != b.categories) return false;
  }
  return true;
}

Dataset Dataset::concat(const Dataset& other) const {
  if (!same_schema(other)) throw Error(ErrorCode::InvalidArgument, "concat of datasets with different schemas");
  Dataset out = *this;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    auto& dst = out.columns_[c].values;
    dst.insert(dst.end(), other.columns_[c].values.begin(), other.columns_[c].values.end());
  }
  return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_missing(std::string_view s) {
  s = trim(s);
  return s.empty() || s == "?";
}

// Splits one logical record into fields. Handles double-quoted fields with
// "" escapes. `pos` advances past the record terminator.
std::vector<std::string> next_record(std::string_view text, std::size_t& pos, char delim, bool single_quotes) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  char quote_char = '"';
  bool field_was_quoted = false;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (quoted) {
      if (ch == quote_char) {
        if (pos + 1 < text.size() && text[pos + 1] == quote_char) {
          field.push_back(quote_char);
          pos += 2;
          continue;
        }
        quoted = false;
        ++pos;
        continue;
      }
      if (ch == '\\' && single_quotes && pos + 1 < text.size()) {
        field.push_back(text[pos + 1]);
        pos += 2;
        continue;
      }
      field.push_back(ch);
      ++pos;
      continue;
    }
    if ((ch == '"' || (single_quotes && ch == '\'')) && trim(field).empty()) {
      quoted = true;
      quote_char = ch;
      field_was_quoted = true;
      field.clear();
      ++pos;
      continue;
    }
    if (ch == delim) {
      fields.push_back(field_was_quoted ? field : std::string(trim(field)));
      field.clear();
      field_was_quoted = false;
      ++pos;
      continue;
    }
    if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      break;
    }
    field.push_back(ch);
    ++pos;
  }
  fields.push_back(field_was_quoted ? field : std::string(trim(field)));
  return fields;
}

bool blank_record(const std::vector<std::string>& rec) { return rec.size() == 1 && rec.front().empty(); }

std::size_t locate_target(const std::vector<Column>& cols, std::string_view target) {
  if (target.empty() && !cols.empty()) return cols.size() - 1;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c].name == target) return c;
  throw Error(ErrorCode::MissingTarget, "target column '" + std::string(target) + "' not found");
}

}  // namespace

Dataset parse_csv(std::string_view text, std::string_view target, const KindOverrides& kind_overrides) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::size_t pos = 0;
  std::vector<std::string> header;
  while (pos < text.size()) {
    header = next_record(text, pos, ',', false);
    if (!blank_record(header)) break;
  }
  if (header.empty() || blank_record(header)) throw Error(ErrorCode::EmptyFile, "no header row");
  for (const auto& h : header)
    if (h.empty()) throw Error(ErrorCode::MalformedHeader, "empty column name in header");

  std::vector<std::vector<std::string>> raw(header.size());
  std::size_t line = 1;
  while (pos < text.size()) {
    auto rec = next_record(text, pos, ',', false);
    ++line;
    if (blank_record(rec)) continue;
    if (rec.size() != header.size())
      throw Error(ErrorCode::RaggedRow, "line " + std::to_string(line) + " has " + std::to_string(rec.size()) +
                                            " cells, expected " + std::to_string(header.size()));
    for (std::size_t c = 0; c < rec.size(); ++c) {
      if (is_missing(rec[c]))
        throw Error(ErrorCode::MissingValue, "missing cell at line " + std::to_string(line) + ", column '" + header[c] + "'");
      raw[c].push_back(std::move(rec[c]));
    }
  }
  if (raw.front().empty()) throw Error(ErrorCode::EmptyFile, "no data rows");

  std::vector<Column> cols;
  cols.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    Column col;
    col.name = header[c];
    std::vector<double> parsed;
    parsed.reserve(raw[c].size());
    bool numeric = true;
    for (const auto& cell : raw[c]) {
      auto v = parse_number(cell);
      if (!v) {
        numeric = false;
        break;
      }
      parsed.push_back(*v);
    }
    col.kind = numeric ? ColumnKind::Numeric : ColumnKind::Nominal;
    if (auto it = kind_overrides.find(col.name); it != kind_overrides.end()) col.kind = it->second;
    if (col.kind == ColumnKind::Numeric) {
      if (!numeric) {
        for (const auto& cell : raw[c])
          if (!parse_number(cell))
            throw Error(ErrorCode::UnparseableCell, "value '" + cell + "' in numeric column '" + col.name + "'");
      }
      col.values = std::move(parsed);
    } else {
      std::unordered_map<std::string, std::size_t> codes;
      col.values.reserve(raw[c].size());
      for (const auto& cell : raw[c]) {
        auto [it, inserted] = codes.try_emplace(cell, col.categories.size());
        if (inserted) col.categories.push_back(cell);
        col.values.push_back(static_cast<double>(it->second));
      }
    }
    cols.push_back(std::move(col));
  }
  const std::size_t t = locate_target(cols, target);
  if (cols[t].is_nominal())
    throw Error(ErrorCode::UnparseableCell, "target column '" + std::string(target) + "' is not numeric");
  return Dataset(std::move(cols), t);
}

Dataset load_csv(const std::filesystem::path& path, std::string_view target, const KindOverrides& kind_overrides) {
  const auto text = read_file(path);
  if (trim(text).empty()) throw Error(ErrorCode::EmptyFile, "'" + path.string() + "' is empty");
  return parse_csv(text, target, kind_overrides);
}

namespace {

// Reads an ARFF identifier that may be quoted; advances `s`.
std::string take_token(std::string_view& s) {
  s = trim(s);
  if (s.empty()) return {};
  if (s.front() == '\'' || s.front() == '"') {
    const char q = s.front();
    const auto close = s.find(q, 1);
    if (close == std::string_view::npos) throw Error(ErrorCode::MalformedHeader, "unterminated quoted name");
    std::string tok(s.substr(1, close - 1));
    s.remove_prefix(close + 1);
    return tok;
  }
  std::size_t end = 0;
  while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) && s[end] != '{') ++end;
  std::string tok(s.substr(0, end));
  s.remove_prefix(end);
  return tok;
}

}  // namespace

Dataset parse_arff(std::string_view text, std::string_view target) {
  std::vector<Column> cols;
  std::vector<std::unordered_map<std::string, std::size_t>> dictionaries;
  std::size_t pos = 0;
  bool in_data = false;
  std::size_t line_no = 0;

  while (pos < text.size() && !in_data) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '%') continue;
    if (line.front() != '@') throw Error(ErrorCode::MalformedHeader, "unexpected header line " + std::to_string(line_no));
    const auto kw_end = line.find_first_of(" \t");
    const auto keyword = lower(line.substr(0, kw_end));
    auto rest = kw_end == std::string_view::npos ? std::string_view{} : line.substr(kw_end);
    if (keyword == "@relation") continue;
    if (keyword == "@data") {
      in_data = true;
      break;
    }
    if (keyword != "@attribute") throw Error(ErrorCode::MalformedHeader, "unknown keyword '" + std::string(line.substr(0, kw_end)) + "'");
    Column col;
    col.name = take_token(rest);
    if (col.name.empty()) throw Error(ErrorCode::MalformedHeader, "attribute without a name at line " + std::to_string(line_no));
    rest = trim(rest);
    std::unordered_map<std::string, std::size_t> dict;
    if (!rest.empty() && rest.front() == '{') {
      const auto close = rest.rfind('}');
      if (close == std::string_view::npos) throw Error(ErrorCode::MalformedHeader, "unterminated nominal set for '" + col.name + "'");
      col.kind = ColumnKind::Nominal;
      std::string body(rest.substr(1, close - 1));
      std::size_t p = 0;
      auto values = next_record(body, p, ',', true);
      for (auto& v : values) {
        if (v.empty()) continue;
        if (dict.try_emplace(v, col.categories.size()).second) col.categories.push_back(v);
      }
      if (col.categories.empty()) throw Error(ErrorCode::MalformedHeader, "empty nominal set for '" + col.name + "'");
    } else {
      const auto type = lower(take_token(rest));
      if (type == "numeric" || type == "real" || type == "integer") {
        col.kind = ColumnKind::Numeric;
      } else if (type.empty()) {
        throw Error(ErrorCode::MalformedHeader, "attribute '" + col.name + "' has no type");
      } else {
        throw Error(ErrorCode::UnsupportedFormat, "attribute type '" + type + "' of '" + col.name + "'");
      }
    }
    cols.push_back(std::move(col));
    dictionaries.push_back(std::move(dict));
  }
  if (cols.empty()) throw Error(ErrorCode::MalformedHeader, "no @attribute declarations");
  if (!in_data) throw Error(ErrorCode::MalformedHeader, "missing @data section");

  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '{') throw Error(ErrorCode::UnsupportedFormat, "sparse ARFF data at line " + std::to_string(line_no));
    std::size_t p = 0;
    auto rec = next_record(line, p, ',', true);
    if (rec.size() != cols.size())
      throw Error(ErrorCode::RaggedRow, "line " + std::to_string(line_no) + " has " + std::to_string(rec.size()) + " values");
    for (std::size_t c = 0; c < rec.size(); ++c) {
      if (is_missing(rec[c]))
        throw Error(ErrorCode::MissingValue, "missing value at line " + std::to_string(line_no) + ", attribute '" + cols[c].name + "'");
      if (cols[c].is_nominal()) {
        auto it = dictionaries[c].find(rec[c]);
        if (it == dictionaries[c].end())
          throw Error(ErrorCode::UndeclaredCategory,
                      "value '" + rec[c] + "' not declared for '" + cols[c].name + "' (line " + std::to_string(line_no) + ")");
        cols[c].values.push_back(static_cast<double>(it->second));
      } else {
        auto v = parse_number(rec[c]);
        if (!v) throw Error(ErrorCode::UnparseableCell, "value '" + rec[c] + "' for numeric '" + cols[c].name + "'");
        cols[c].values.push_back(*v);
      }
    }
  }
  if (cols.front().values.empty()) throw Error(ErrorCode::EmptyFile, "no data rows");
  const std::size_t t = locate_target(cols, target);
  return Dataset(std::move(cols), t);
}

Dataset load_arff(const std::filesystem::path& path, std::string_view target) {
  const auto text = read_file(path);
  if (trim(text).empty()) throw Error(ErrorCode::EmptyFile, "'" + path.string() + "' is empty");
  return parse_arff(text, target);
}

Dataset load_dataset(const std::filesystem::path& path, std::string_view target) {
  if (lower(path.extension().string()) == ".arff") return load_arff(path, target);
  return load_csv(path, target);
}

namespace {

void append_field(std::string& out, std::string_view s) {
  const bool needs_quotes = s.find_first_of(",\"\r\n") != std::string_view::npos || s.empty() ||
                            std::isspace(static_cast<unsigned char>(s.front())) ||
                            std::isspace(static_cast<unsigned char>(s.back()));
  if (!needs_quotes) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

void append_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

std::string to_csv(const Dataset& ds, const std::vector<std::string>* extra_column, std::string_view extra_name) {
  if (extra_column && extra_column->size() != ds.n_rows())
    throw Error(ErrorCode::LengthMismatch, "extra column length differs from row count");
  std::string out;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (c) out.push_back(',');
    append_field(out, ds.column(c).name);
  }
  if (extra_column) {
    out.push_back(',');
    append_field(out, extra_name);
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out.push_back(',');
      const auto& col = ds.column(c);
      if (col.is_nominal())
        append_field(out, col.categories[static_cast<std::size_t>(col.values[r])]);
      else
        append_number(out, col.values[r]);
    }
    if (extra_column) {
      out.push_back(',');
      append_field(out, (*extra_column)[r]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path, const std::vector<std::string>* extra_column,
               std::string_view extra_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << to_csv(ds, extra_column, extra_name);
}

std::vector<std::vector<std::string>> parse_csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto rec = next_record(text, pos, ',', false);
    if (!blank_record(rec)) out.push_back(std::move(rec));
  }
  return out;
}

std::string csv_field(std::string_view s) {
  std::string out;
  append_field(out, s);
  return out;
}

ColumnSummary column_summary(const Dataset& ds, std::size_t col) {
  const auto& column = ds.column(col);
  ColumnSummary s;
  if (column.values.empty()) return s;
  if (column.is_nominal()) {
    for (double v : column.values) ++s.category_counts[column.categories[static_cast<std::size_t>(v)]];
    return s;
  }
  std::vector<double> sorted(column.values);
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = stats::mean(sorted);
  s.std = stats::stddev(sorted);
  s.q1 = stats::quantile_sorted(sorted, 0.25);
  s.median = stats::quantile_sorted(sorted, 0.5);
  s.q3 = stats::quantile_sorted(sorted, 0.75);
  return s;
}

}  // namespace iraug
