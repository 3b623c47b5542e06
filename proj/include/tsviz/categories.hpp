#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsviz/format.hpp"
#include "tsviz/timestamp.hpp"

namespace tsviz {

namespace detail {

/// Lower edge of a bin label "[lo, hi)" / "[lo, hi]".
inline std::optional<double> interval_lower(std::string_view s) {
  if (s.size() < 5 || s.front() != '[' || (s.back() != ')' && s.back() != ']')) return std::nullopt;
  auto comma = s.find(", ");
  if (comma == std::string_view::npos) return std::nullopt;
  auto lo = parse_number(s.substr(1, comma - 1));
  auto hi = parse_number(s.substr(comma + 2, s.size() - comma - 3));
  if (!lo || !hi) return std::nullopt;
  return lo;
}

/// Elements of a combined label "(a,b,...)".
inline std::optional<std::vector<std::string_view>> tuple_elements(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  std::vector<std::string_view> parts;
  s = s.substr(1, s.size() - 2);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if ((c == ')' || c == ']') && depth > 0) --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

/// Total order over single values: numbers, then day names, then bin
/// labels, then other text; each class ordered naturally.
inline bool atom_less(std::string_view a, std::string_view b) {
  auto rank = [](std::string_view s) {
    if (parse_number(s)) return 0;
    if (weekday_from_name(s)) return 1;
    if (interval_lower(s)) return 2;
    return 3;
  };
  const int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 0: {
      double x = *parse_number(a), y = *parse_number(b);
      if (x != y) return x < y;
      break;
    }
    case 1: return *weekday_from_name(a) < *weekday_from_name(b);
    case 2: {
      double x = *interval_lower(a), y = *interval_lower(b);
      if (x != y) return x < y;
      break;
    }
    default: break;
  }
  return a < b;
}

inline bool tuple_less(std::string_view a, std::string_view b) {
  auto ta = *tuple_elements(a), tb = *tuple_elements(b);
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    if (atom_less(ta[i], tb[i])) return true;
    if (atom_less(tb[i], ta[i])) return false;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  return a < b;
}

}  // namespace detail

/// Sorts category labels into their canonical display order: numeric when
/// every label is a number, Monday..Sunday for day names, by lower edge for
/// bin labels, element-wise for combined "(a,b)" labels, otherwise
/// lexicographic.
inline void sort_categories(std::vector<std::string>& labels) {
  auto all = [&](auto pred) { return std::all_of(labels.begin(), labels.end(), pred); };
  if (all([](const std::string& s) { return parse_number(s).has_value(); })) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      double x = *parse_number(a), y = *parse_number(b);
      return x != y ? x < y : a < b;
    });
  } else if (all([](const std::string& s) { return weekday_from_name(s).has_value(); })) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      return *weekday_from_name(a) < *weekday_from_name(b);
    });
  } else if (all([](const std::string& s) { return detail::interval_lower(s).has_value(); })) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
      double x = *detail::interval_lower(a), y = *detail::interval_lower(b);
      return x != y ? x < y : a < b;
    });
  } else if (all([](const std::string& s) { return detail::tuple_elements(s).has_value(); })) {
    std::sort(labels.begin(), labels.end(),
              [](const std::string& a, const std::string& b) { return detail::tuple_less(a, b); });
  } else {
    std::sort(labels.begin(), labels.end());
  }
}

/// Canonical rank of every dictionary entry of a column.
inline std::vector<std::size_t> canonical_ranks(std::span<const std::string> dictionary) {
  std::vector<std::string> sorted(dictionary.begin(), dictionary.end());
  sort_categories(sorted);
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < sorted.size(); ++i) position.emplace(sorted[i], i);
  std::vector<std::size_t> rank(dictionary.size());
  for (std::size_t i = 0; i < dictionary.size(); ++i) rank[i] = position.at(dictionary[i]);
  return rank;
}

}  // namespace tsviz
