#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsviz/error.hpp"
#include "tsviz/format.hpp"

namespace tsviz {

enum class ColumnKind { identifier, timestamp, categorical, continuous, binary_flag };

constexpr std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::identifier: return "identifier";
    case ColumnKind::timestamp: return "timestamp";
    case ColumnKind::categorical: return "categorical";
    case ColumnKind::continuous: return "continuous";
    case ColumnKind::binary_flag: return "binary_flag";
  }
  return "categorical";
}

inline ColumnKind parse_column_kind(std::string_view text) {
  for (auto k : {ColumnKind::identifier, ColumnKind::timestamp, ColumnKind::categorical,
                 ColumnKind::continuous, ColumnKind::binary_flag}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::invalid_argument, "unknown column kind '" + std::string(text) + "'");
}

/// Kinds usable as grouping keys (x axis or hue).
constexpr bool is_groupable(ColumnKind kind) {
  return kind == ColumnKind::categorical || kind == ColumnKind::binary_flag;
}

/// Spellings read as null: empty, NULL, null, NaN, NA (case-sensitive).
inline bool is_null_token(std::string_view text) {
  return text.empty() || text == "NULL" || text == "null" || text == "NaN" || text == "NA";
}

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;
  std::size_t null_count = 0;
  std::size_t distinct_count = 0;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

/// Dictionary-encoded column: each row holds an index into `dictionary()`,
/// or kNull. Dictionary entries are distinct and every entry is referenced.
class Column {
 public:
  static constexpr std::int32_t kNull = -1;

  Column() = default;

  Column(std::string name, ColumnKind kind, std::vector<std::string> dictionary,
         std::vector<std::int32_t> codes)
      : name_(std::move(name)), kind_(kind), dict_(std::move(dictionary)), codes_(std::move(codes)) {
    const auto dict_size = static_cast<std::int32_t>(dict_.size());
    for (auto c : codes_) {
      if (c == kNull) {
        ++null_count_;
      } else if (c < 0 || c >= dict_size) {
        throw Error(ErrorCode::invalid_argument, "column '" + name_ + "': code out of range");
      }
    }
  }

  /// Builds from optional texts; nullopt is null.
  static Column from_values(std::string name, ColumnKind kind,
                            const std::vector<std::optional<std::string>>& values);
  static Column from_strings(std::string name, ColumnKind kind,
                             const std::vector<std::string>& values);

  const std::string& name() const noexcept { return name_; }
  ColumnKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return codes_.size(); }
  std::size_t null_count() const noexcept { return null_count_; }
  std::size_t distinct_count() const noexcept { return dict_.size(); }

  bool is_null(std::size_t row) const { return codes_.at(row) == kNull; }
  std::int32_t code(std::size_t row) const { return codes_.at(row); }
  std::span<const std::int32_t> codes() const noexcept { return codes_; }
  std::span<const std::string> dictionary() const noexcept { return dict_; }

  /// Text of a non-null row; empty view for nulls.
  std::string_view text(std::size_t row) const {
    auto c = codes_.at(row);
    return c == kNull ? std::string_view{} : std::string_view{dict_[c]};
  }

  std::optional<std::string> value(std::size_t row) const {
    auto c = codes_.at(row);
    if (c == kNull) return std::nullopt;
    return dict_[c];
  }

  /// Per-row numbers; NaN where the row is null or not numeric.
  std::vector<double> numeric_values() const {
    std::vector<double> parsed(dict_.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < dict_.size(); ++i) {
      if (auto v = parse_number(dict_[i])) parsed[i] = *v;
    }
    std::vector<double> out(codes_.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t r = 0; r < codes_.size(); ++r) {
      if (codes_[r] != kNull) out[r] = parsed[codes_[r]];
    }
    return out;
  }

  ColumnSchema schema() const { return {name_, kind_, null_count_, dict_.size()}; }

  Column renamed(std::string name) const {
    Column c = *this;
    c.name_ = std::move(name);
    return c;
  }

  Column with_kind(ColumnKind kind) const {
    Column c = *this;
    c.kind_ = kind;
    return c;
  }

 private:
  std::string name_;
  ColumnKind kind_ = ColumnKind::categorical;
  std::vector<std::string> dict_;
  std::vector<std::int32_t> codes_;
  std::size_t null_count_ = 0;
};

/// Interning appender used by every column constructor in the library.
class ColumnBuilder {
 public:
  void reserve(std::size_t n) { codes_.reserve(n); }

  void push(std::string_view text) {
    auto it = index_.find(std::string(text));
    if (it == index_.end()) {
      auto code = static_cast<std::int32_t>(dict_.size());
      dict_.emplace_back(text);
      index_.emplace(dict_.back(), code);
      codes_.push_back(code);
    } else {
      codes_.push_back(it->second);
    }
  }

  void push_null() { codes_.push_back(Column::kNull); }

  void push(const std::optional<std::string>& value) {
    if (value) {
      push(std::string_view{*value});
    } else {
      push_null();
    }
  }

  std::size_t size() const noexcept { return codes_.size(); }

  Column build(std::string name, ColumnKind kind) && {
    return Column(std::move(name), kind, std::move(dict_), std::move(codes_));
  }

 private:
  std::vector<std::string> dict_;
  std::vector<std::int32_t> codes_;
  std::unordered_map<std::string, std::int32_t> index_;
};

inline Column Column::from_values(std::string name, ColumnKind kind,
                                  const std::vector<std::optional<std::string>>& values) {
  ColumnBuilder b;
  b.reserve(values.size());
  for (const auto& v : values) b.push(v);
  return std::move(b).build(std::move(name), kind);
}

inline Column Column::from_strings(std::string name, ColumnKind kind,
                                   const std::vector<std::string>& values) {
  ColumnBuilder b;
  b.reserve(values.size());
  for (const auto& v : values) b.push(std::string_view{v});
  return std::move(b).build(std::move(name), kind);
}

/// Immutable table of equal-length named columns. Copies share column
/// storage; every transform returns a new Dataset.
class Dataset {
 public:
  Dataset() = default;

  explicit Dataset(std::vector<Column> columns) {
    for (auto& c : columns) append(std::make_shared<const Column>(std::move(c)));
  }

  std::size_t row_count() const noexcept { return rows_; }
  std::size_t column_count() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return columns_.empty(); }

  const Column& column(std::size_t index) const { return *columns_.at(index); }

  const Column& column(std::string_view name) const {
    if (const Column* c = find(name)) return *c;
    throw Error(ErrorCode::unknown_column, std::string(name));
  }

  const Column* find(std::string_view name) const {
    for (const auto& c : columns_) {
      if (c->name() == name) return c.get();
    }
    return nullptr;
  }

  bool has_column(std::string_view name) const { return find(name) != nullptr; }

  std::vector<std::string> column_names() const {
    std::vector<std::string> out;
    for (const auto& c : columns_) out.push_back(c->name());
    return out;
  }

  std::vector<ColumnSchema> schema() const {
    std::vector<ColumnSchema> out;
    for (const auto& c : columns_) out.push_back(c->schema());
    return out;
  }

  Dataset with_column(Column column) const {
    Dataset out = *this;
    out.append(std::make_shared<const Column>(std::move(column)));
    return out;
  }

  /// Replaces the column of the same name in place (keeps position).
  Dataset with_replaced(Column column) const {
    Dataset out = *this;
    for (auto& c : out.columns_) {
      if (c->name() == column.name()) {
        if (column.size() != rows_) {
          throw Error(ErrorCode::invalid_argument, "column '" + column.name() + "' length mismatch");
        }
        c = std::make_shared<const Column>(std::move(column));
        return out;
      }
    }
    throw Error(ErrorCode::unknown_column, column.name());
  }

  Dataset with_kind(std::string_view name, ColumnKind kind) const {
    return with_replaced(column(name).with_kind(kind));
  }

  /// Keeps the listed rows, in the listed order.
  Dataset select_rows(std::span<const std::size_t> rows) const {
    std::vector<Column> cols;
    for (const auto& c : columns_) {
      ColumnBuilder b;
      b.reserve(rows.size());
      for (auto r : rows) b.push(c->value(r));
      cols.push_back(std::move(b).build(c->name(), c->kind()));
    }
    Dataset out(std::move(cols));
    if (out.columns_.empty()) out.rows_ = 0;
    return out;
  }

 private:
  void append(std::shared_ptr<const Column> column) {
    if (find(column->name()) != nullptr) {
      throw Error(ErrorCode::duplicate_column, column->name());
    }
    if (columns_.empty()) {
      rows_ = column->size();
    } else if (column->size() != rows_) {
      throw Error(ErrorCode::invalid_argument, "column '" + column->name() + "' has " +
                                                   std::to_string(column->size()) + " rows, expected " +
                                                   std::to_string(rows_));
    }
    columns_.push_back(std::move(column));
  }

  std::vector<std::shared_ptr<const Column>> columns_;
  std::size_t rows_ = 0;
};

/// `base`, or `base` followed by as many `suffix` repeats as needed to avoid
/// colliding with an existing column.
inline std::string unique_column_name(const Dataset& ds, std::string base,
                                      std::string_view suffix = "_ts") {
  while (ds.has_column(base)) base += suffix;
  return base;
}

}  // namespace tsviz
