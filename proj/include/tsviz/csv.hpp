#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/timestamp.hpp"

namespace tsviz {

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  /// Column name -> kind; overrides inference.
  std::map<std::string, ColumnKind, std::less<>> hints;
  std::size_t sample_limit = 10000;
  TimeFormat time_format{};
};

namespace detail {

/// RFC-4180 record reader over an in-memory buffer. Quoted fields may hold
/// delimiters, doubled quotes and line breaks; CRLF and LF both end records.
class CsvReader {
 public:
  CsvReader(std::string_view data, char delimiter) : data_(data), delim_(delimiter) {
    if (data_.starts_with("\xEF\xBB\xBF")) data_.remove_prefix(3);
  }

  /// Fills `fields` with the next record; false at end of input.
  /// `record_no` counts physical records returned so far (1-based after call).
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    if (pos_ >= data_.size()) return false;
    ++record_no_;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    while (pos_ < data_.size()) {
      char c = data_[pos_];
      if (in_quotes) {
        if (c == '"') {
          if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '"') {
            field += '"';
            pos_ += 2;
          } else {
            in_quotes = false;
            ++pos_;
          }
        } else {
          field += c;
          ++pos_;
        }
        continue;
      }
      if (c == '"') {
        if (!field.empty() || was_quoted) throw_malformed("stray quote inside unquoted field");
        in_quotes = true;
        was_quoted = true;
        ++pos_;
      } else if (c == delim_) {
        fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
        ++pos_;
      } else if (c == '\r' || c == '\n') {
        ++pos_;
        if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        fields.push_back(std::move(field));
        return true;
      } else {
        if (was_quoted) throw_malformed("text after closing quote");
        field += c;
        ++pos_;
      }
    }
    if (in_quotes) throw_malformed("unterminated quoted field");
    fields.push_back(std::move(field));
    return true;
  }

  std::size_t record_no() const noexcept { return record_no_; }
  void set_row_offset(std::ptrdiff_t offset) { offset_ = offset; }

 private:
  [[noreturn]] void throw_malformed(const std::string& reason) const {
    throw MalformedCsvError(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(record_no_) + offset_),
                            reason);
  }

  std::string_view data_;
  char delim_;
  std::size_t pos_ = 0;
  std::size_t record_no_ = 0;
  std::ptrdiff_t offset_ = 0;
};

inline bool is_blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

}  // namespace detail

/// Classifies every column. Timestamp detection looks at the first
/// `sample_limit` rows; the remaining rules use the full distinct-value set.
///
/// Precedence: timestamp > binary_flag > identifier > continuous > categorical.
/// Integer-valued columns with at most 32 distinct values that repeat
/// (distinct <= half the non-null rows) are grouping keys and stay categorical.
/// Identifiers are distinct integers that strictly increase in file order.
inline std::vector<ColumnSchema> infer_schema(const Dataset& ds, std::size_t sample_limit,
                                              const TimeFormat& time_format = TimeFormat()) {
  if (sample_limit == 0) throw Error(ErrorCode::non_positive, "sample_limit must be positive");
  std::vector<ColumnSchema> out;
  const std::size_t sample = std::min(sample_limit, ds.row_count());
  for (std::size_t ci = 0; ci < ds.column_count(); ++ci) {
    const Column& col = ds.column(ci);
    ColumnSchema s = col.schema();
    s.kind = ColumnKind::categorical;
    const std::size_t non_null = col.size() - col.null_count();
    if (non_null == 0) {
      out.push_back(s);
      continue;
    }

    std::size_t sampled = 0, ts_ok = 0;
    for (std::size_t r = 0; r < sample; ++r) {
      if (col.is_null(r)) continue;
      ++sampled;
      if (try_parse_timestamp(col.text(r), time_format)) ++ts_ok;
    }
    if (sampled > 0 && ts_ok * 100 >= sampled * 99) {
      s.kind = ColumnKind::timestamp;
      out.push_back(s);
      continue;
    }

    bool all_numeric = true, all_integral = true, all_flag = true;
    for (const auto& v : col.dictionary()) {
      auto num = parse_number(v);
      if (!num) {
        all_numeric = all_integral = all_flag = false;
        break;
      }
      all_integral = all_integral && is_integral_number(v);
      all_flag = all_flag && (*num == 0.0 || *num == 1.0);
    }
    if (all_flag) {
      s.kind = ColumnKind::binary_flag;
    } else if (all_integral && col.size() >= 2 && col.null_count() == 0 &&
               col.distinct_count() == col.size()) {
      const auto values = col.numeric_values();
      bool increasing = true;
      for (std::size_t r = 1; r < values.size() && increasing; ++r) increasing = values[r] > values[r - 1];
      s.kind = increasing ? ColumnKind::identifier : ColumnKind::continuous;
    } else if (all_integral && col.distinct_count() <= 32 && col.distinct_count() * 2 <= non_null) {
      s.kind = ColumnKind::categorical;
    } else if (all_numeric) {
      s.kind = ColumnKind::continuous;
    }
    out.push_back(s);
  }
  return out;
}

/// Parses CSV text already in memory.
inline Dataset parse_csv(std::string_view content, const CsvOptions& options = {}) {
  detail::CsvReader reader(content, options.delimiter);
  std::vector<std::string> fields;
  std::vector<std::string> names;

  if (options.header) {
    while (reader.next(fields) && detail::is_blank_record(fields)) {}
    if (fields.empty() || detail::is_blank_record(fields)) {
      throw Error(ErrorCode::empty_input, "no header row");
    }
    names = fields;
    reader.set_row_offset(-static_cast<std::ptrdiff_t>(reader.record_no()));
  }

  std::vector<ColumnBuilder> builders;
  std::size_t data_rows = 0;
  while (reader.next(fields)) {
    if (names.empty()) {
      if (detail::is_blank_record(fields)) continue;
      for (std::size_t i = 0; i < fields.size(); ++i) names.push_back("column_" + std::to_string(i + 1));
    }
    if (builders.empty()) builders.resize(names.size());
    if (names.size() > 1 && detail::is_blank_record(fields)) continue;
    ++data_rows;
    if (fields.size() != names.size()) {
      throw MalformedCsvError(data_rows, "expected " + std::to_string(names.size()) + " fields, got " +
                                             std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (is_null_token(fields[i])) {
        builders[i].push_null();
      } else {
        builders[i].push(std::string_view{fields[i]});
      }
    }
  }
  if (data_rows == 0) throw Error(ErrorCode::empty_input, "zero data rows");

  std::vector<Column> cols;
  for (std::size_t i = 0; i < names.size(); ++i) {
    cols.push_back(std::move(builders[i]).build(names[i], ColumnKind::categorical));
  }
  Dataset ds(std::move(cols));
  const auto inferred = infer_schema(ds, options.sample_limit, options.time_format);
  for (const auto& s : inferred) {
    auto hint = options.hints.find(s.name);
    ds = ds.with_kind(s.name, hint != options.hints.end() ? hint->second : s.kind);
  }
  for (const auto& [name, kind] : options.hints) {
    if (!ds.has_column(name)) throw Error(ErrorCode::unknown_column, "type hint for '" + name + "'");
  }
  return ds;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::file_not_found, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

inline Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {}) {
  return parse_csv(read_file(path), options);
}

/// Header plus one line per row; nulls are written as empty fields.
inline void write_csv(const Dataset& ds, std::ostream& out, char delimiter = ',') {
  for (std::size_t c = 0; c < ds.column_count(); ++c) {
    if (c) out << delimiter;
    out << csv_field(ds.column(c).name(), delimiter);
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    for (std::size_t c = 0; c < ds.column_count(); ++c) {
      if (c) out << delimiter;
      out << csv_field(ds.column(c).text(r), delimiter);
    }
    out << '\n';
  }
}

inline std::string to_csv(const Dataset& ds, char delimiter = ',') {
  std::ostringstream out;
  write_csv(ds, out, delimiter);
  return std::move(out).str();
}

}  // namespace tsviz
