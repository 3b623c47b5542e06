#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"

namespace tsviz {

/// Sturges' bin count, ceil(1 + log2 n), computed from the bit length of
/// n - 1 so exact powers of two never round the wrong way.
inline std::int64_t sturges_bin_count(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::non_positive, "n = " + std::to_string(n));
  if (n == 1) return 1;
  return 1 + static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

/// k + 1 equally spaced edges over [min, max]; a zero-width range yields
/// [min, min + 1] with a single bin.
inline std::vector<double> equal_width_edges(double min, double max, std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::non_positive, "bin count k = " + std::to_string(k));
  if (!(min <= max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorCode::invalid_argument, "edges need finite min <= max");
  }
  if (min == max) return {min, min + 1.0};
  std::vector<double> edges(static_cast<std::size_t>(k) + 1);
  const double width = max - min;
  for (std::int64_t i = 0; i <= k; ++i) {
    edges[static_cast<std::size_t>(i)] = min + static_cast<double>(i) * width / static_cast<double>(k);
  }
  edges.back() = max;
  return edges;
}

struct BinSpec {
  std::int64_t count = 0;
  std::vector<double> edges;
  std::vector<std::string> labels;
};

inline std::string bin_label(double lo, double hi, bool last) {
  return "[" + format_fixed3(lo) + ", " + format_fixed3(hi) + (last ? "]" : ")");
}

/// Builds a spec from edges; fails if edges are not strictly ascending or
/// two bins would share a label.
inline BinSpec make_bin_spec(std::vector<double> edges) {
  if (edges.size() < 2) throw Error(ErrorCode::invalid_argument, "need at least two edges");
  BinSpec spec;
  spec.count = static_cast<std::int64_t>(edges.size()) - 1;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) throw Error(ErrorCode::invalid_argument, "edges not strictly ascending");
    spec.labels.push_back(bin_label(edges[i], edges[i + 1], i + 2 == edges.size()));
  }
  auto sorted = spec.labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::invalid_argument, "duplicate bin labels");
  }
  spec.edges = std::move(edges);
  return spec;
}

/// Equal-width spec over [min, max] with the Sturges count for `n`
/// instances. The count is lowered until edges are strictly ascending and
/// labels are distinct at three fractional digits.
inline BinSpec sturges_bin_spec(double min, double max, std::int64_t n) {
  for (std::int64_t k = sturges_bin_count(n); k >= 1; --k) {
    try {
      return make_bin_spec(equal_width_edges(min, max, k));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::invalid_argument || k == 1) throw;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unreachable");
}

/// Index of the bin holding `value`: half-open [lo, hi) except the closed
/// last bin.
inline std::size_t bin_index(double value, const BinSpec& spec) {
  const auto& e = spec.edges;
  if (!(value >= e.front() && value <= e.back())) {
    throw Error(ErrorCode::out_of_range, format_shortest(value) + " outside [" + format_shortest(e.front()) +
                                             ", " + format_shortest(e.back()) + "]");
  }
  auto it = std::upper_bound(e.begin(), e.end(), value);
  auto idx = static_cast<std::size_t>(it - e.begin());
  return std::min(idx, e.size() - 1) - 1;
}

inline std::vector<std::string> apply_bins(std::span<const double> values, const BinSpec& spec) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(spec.labels[bin_index(v, spec)]);
  return out;
}

/// Adds a categorical `<col>_bin` column holding the Sturges bin label of each
/// row of a null-free continuous column. N is the dataset row count.
inline Dataset bin_column(const Dataset& ds, std::string_view col_name, BinSpec* used_spec = nullptr) {
  const Column& col = ds.column(col_name);
  if (col.kind() != ColumnKind::continuous) {
    throw Error(ErrorCode::wrong_kind, std::string(col_name) + " is not continuous");
  }
  const auto values = col.numeric_values();
  if (values.empty()) throw Error(ErrorCode::empty_input, std::string(col_name));
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorCode::wrong_kind, std::string(col_name) + " has missing values");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  BinSpec spec = sturges_bin_spec(*lo, *hi, static_cast<std::int64_t>(ds.row_count()));
  const auto labels = apply_bins(values, spec);
  if (used_spec) *used_spec = spec;
  return ds.with_column(
      Column::from_strings(unique_column_name(ds, std::string(col_name) + "_bin", "_"), ColumnKind::categorical,
                           labels));
}

}  // namespace tsviz
