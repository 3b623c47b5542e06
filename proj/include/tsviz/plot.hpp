#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsviz/aggregation.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"

namespace tsviz {

inline constexpr std::array<std::string_view, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};

inline constexpr int kCanvasWidth = 960;
inline constexpr int kCanvasHeight = 540;
inline constexpr int kMargin = 60;
inline constexpr std::size_t kMaxBars = 12;

enum class PlotKind { line, bar };

constexpr std::string_view to_string(PlotKind k) { return k == PlotKind::line ? "line" : "bar"; }

struct PlotSeries {
  std::string name;
  int palette_index = 0;
  std::vector<std::optional<double>> points;  // aligned with x_categories; nullopt is a gap
};

/// Renderer-independent description of one chart.
struct PlotSpec {
  PlotKind kind = PlotKind::line;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> x_categories;
  std::vector<PlotSeries> series;
  std::vector<double> y_ticks;
  int width = kCanvasWidth;
  int height = kCanvasHeight;
};

namespace detail {

/// m * 10^e, computed so that decimal steps like 0.1 or 0.2 stay exact.
inline double scaled(double m, int e) { return e >= 0 ? m * std::pow(10.0, e) : m / std::pow(10.0, -e); }

inline double tick_at(long long i, double mantissa, int exponent) {
  return scaled(static_cast<double>(i) * mantissa, exponent);
}

}  // namespace detail

/// Ticks at the smallest step in {1, 2, 5} x 10^k that needs at most
/// `max_ticks` ticks to span [lo, hi]. lo == hi yields [lo, lo + 1].
inline std::vector<double> nice_ticks(double lo, double hi, int max_ticks) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::invalid_argument, "nice_ticks needs finite lo <= hi");
  }
  if (max_ticks < 2) throw Error(ErrorCode::invalid_argument, "max_ticks must be at least 2");
  if (lo == hi) return {lo, lo + 1.0};
  constexpr double kEps = 1e-9;
  int e = static_cast<int>(std::floor(std::log10((hi - lo) / max_ticks))) - 1;
  for (;; ++e) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double step = detail::scaled(m, e);
      const auto first = static_cast<long long>(std::floor(lo / step + kEps));
      const auto last = static_cast<long long>(std::ceil(hi / step - kEps));
      if (last - first + 1 > max_ticks) continue;
      std::vector<double> ticks;
      for (long long i = first; i <= last; ++i) ticks.push_back(detail::tick_at(i, m, e));
      if (ticks.size() < 2) ticks.push_back(detail::tick_at(last + 1, m, e));
      return ticks;
    }
  }
}

namespace detail {

inline std::vector<double> ticks_covering(const std::vector<PlotSeries>& series, bool include_zero) {
  double lo = include_zero ? 0.0 : std::numeric_limits<double>::infinity();
  double hi = include_zero ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (!p) continue;
      lo = std::min(lo, *p);
      hi = std::max(hi, *p);
    }
  }
  if (!std::isfinite(lo)) return {0.0, 1.0};
  return nice_ticks(lo, hi, 8);
}

}  // namespace detail

inline PlotSpec make_line_plot(const AggregationTable& table, std::string title) {
  if (table.x_values.empty() || table.series.empty()) {
    throw Error(ErrorCode::empty_table, title);
  }
  PlotSpec spec;
  spec.kind = PlotKind::line;
  spec.title = std::move(title);
  spec.x_label = table.x_name;
  spec.y_label = "mean " + table.target_name;
  spec.x_categories = table.x_values;
  for (std::size_t i = 0; i < table.series.size(); ++i) {
    PlotSeries s;
    s.name = table.series[i].name;
    s.palette_index = static_cast<int>(i % kPalette.size());
    for (const auto& c : table.series[i].cells) s.points.push_back(c.mean);
    spec.series.push_back(std::move(s));
  }
  spec.y_ticks = detail::ticks_covering(spec.series, false);
  return spec;
}

/// One bar per key with the y axis anchored at zero.
inline PlotSpec make_bar_plot(const std::vector<GroupStat>& groups, std::string title, std::string x_label = {},
                              std::string y_label = {}) {
  if (groups.empty()) throw Error(ErrorCode::empty_input, "bar plot needs at least one key");
  if (groups.size() > kMaxBars) {
    throw Error(ErrorCode::too_many_bars, std::to_string(groups.size()) + " keys (max 12)");
  }
  PlotSpec spec;
  spec.kind = PlotKind::bar;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);
  PlotSeries s;
  s.name = spec.y_label.empty() ? "mean" : spec.y_label;
  for (const auto& g : groups) {
    spec.x_categories.push_back(g.key);
    s.points.push_back(g.count > 0 ? std::optional<double>(g.mean) : std::nullopt);
  }
  spec.series.push_back(std::move(s));
  spec.y_ticks = detail::ticks_covering(spec.series, true);
  return spec;
}

/// Empty when the spec is renderable; otherwise the first violated rule.
inline std::string spec_violation(const PlotSpec& spec) {
  if (spec.x_categories.empty()) return "no x categories";
  if (spec.series.empty()) return "no series";
  if (spec.width <= 2 * kMargin || spec.height <= 2 * kMargin) return "canvas smaller than margins";
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    if (s.points.size() != spec.x_categories.size()) {
      return "series '" + s.name + "' has " + std::to_string(s.points.size()) + " points for " +
             std::to_string(spec.x_categories.size()) + " x categories";
    }
    if (s.palette_index != static_cast<int>(i % kPalette.size())) {
      return "series '" + s.name + "' palette index " + std::to_string(s.palette_index) + " != position mod 12";
    }
    for (const auto& p : s.points) {
      if (p && !std::isfinite(*p)) return "series '" + s.name + "' has a non-finite point";
    }
  }
  if (spec.y_ticks.size() < 2) return "fewer than two y ticks";
  for (std::size_t i = 1; i < spec.y_ticks.size(); ++i) {
    if (!(spec.y_ticks[i - 1] < spec.y_ticks[i])) return "y ticks not strictly ascending";
  }
  for (const auto& s : spec.series) {
    for (const auto& p : s.points) {
      if (p && (*p < spec.y_ticks.front() || *p > spec.y_ticks.back())) {
        return "point " + format_shortest(*p) + " outside the y tick range";
      }
    }
  }
  return {};
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace detail

/// Standalone SVG 1.1 document. Pure function of the spec: fixed element
/// order (frame, axes, grid, x labels, series, legend) and %.2f coordinates.
inline std::string render_svg(const PlotSpec& spec) {
  if (auto why = spec_violation(spec); !why.empty()) throw Error(ErrorCode::invalid_spec, why);
  using detail::coord;
  using detail::xml_escape;

  const double left = kMargin, right = spec.width - kMargin;
  const double top = kMargin, bottom = spec.height - kMargin;
  const double y_lo = spec.y_ticks.front(), y_hi = spec.y_ticks.back();
  const std::size_t n_x = spec.x_categories.size();
  const double slot = (right - left) / static_cast<double>(n_x);
  auto px = [&](std::size_t i) { return left + (static_cast<double>(i) + 0.5) * slot; };
  auto py = [&](double v) { return bottom - (v - y_lo) / (y_hi - y_lo) * (bottom - top); };

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width) +
       "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\" font-family=\"sans-serif\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";
  o += "<text x=\"" + coord(spec.width / 2.0) + "\" y=\"" + coord(kMargin / 2.0) +
       "\" text-anchor=\"middle\" font-size=\"16\">" + xml_escape(spec.title) + "</text>\n";

  o += "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n";
  o += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(bottom) + "\" x2=\"" + coord(right) + "\" y2=\"" +
       coord(bottom) + "\"/>\n";
  o += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(top) + "\" x2=\"" + coord(left) + "\" y2=\"" +
       coord(bottom) + "\"/>\n";
  o += "</g>\n";
  o += "<text x=\"" + coord((left + right) / 2.0) + "\" y=\"" + coord(spec.height - 6.0) +
       "\" text-anchor=\"middle\" font-size=\"12\">" + xml_escape(spec.x_label) + "</text>\n";
  o += "<text x=\"14.00\" y=\"" + coord((top + bottom) / 2.0) + "\" text-anchor=\"middle\" font-size=\"12\" " +
       "transform=\"rotate(-90 14.00 " + coord((top + bottom) / 2.0) + ")\">" + xml_escape(spec.y_label) +
       "</text>\n";

  o += "<g id=\"grid\" font-size=\"10\">\n";
  for (double t : spec.y_ticks) {
    const std::string y = coord(py(t));
    o += "<line x1=\"" + coord(left) + "\" y1=\"" + y + "\" x2=\"" + coord(right) + "\" y2=\"" + y +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    o += "<text x=\"" + coord(left - 6.0) + "\" y=\"" + coord(py(t) + 3.0) + "\" text-anchor=\"end\">" +
         xml_escape(format_shortest(t)) + "</text>\n";
  }
  o += "</g>\n";

  const bool rotate = n_x > 12;
  o += "<g id=\"x-labels\" font-size=\"10\">\n";
  for (std::size_t i = 0; i < n_x; ++i) {
    const std::string x = coord(px(i)), y = coord(bottom + 14.0);
    o += "<text x=\"" + x + "\" y=\"" + y + "\" text-anchor=\"" + (rotate ? "end" : "middle") + "\"";
    if (rotate) o += " transform=\"rotate(-45 " + x + " " + y + ")\"";
    o += ">" + xml_escape(spec.x_categories[i]) + "</text>\n";
  }
  o += "</g>\n";

  o += "<g id=\"series\">\n";
  const std::size_t n_series = spec.series.size();
  for (std::size_t si = 0; si < n_series; ++si) {
    const auto& s = spec.series[si];
    const std::string color(kPalette[static_cast<std::size_t>(s.palette_index)]);
    o += "<g class=\"series\" data-name=\"" + xml_escape(s.name) + "\">\n";
    if (spec.kind == PlotKind::line) {
      std::string run;
      std::size_t run_len = 0;
      auto flush = [&] {
        if (run_len >= 2) {
          o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + run + "\"/>\n";
        }
        run.clear();
        run_len = 0;
      };
      for (std::size_t i = 0; i < n_x; ++i) {
        if (!s.points[i]) {
          flush();
          continue;
        }
        if (run_len) run += ' ';
        run += coord(px(i)) + "," + coord(py(*s.points[i]));
        ++run_len;
      }
      flush();
      for (std::size_t i = 0; i < n_x; ++i) {
        if (!s.points[i]) continue;
        o += "<circle cx=\"" + coord(px(i)) + "\" cy=\"" + coord(py(*s.points[i])) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
      }
    } else {
      const double group_w = slot * 0.7;
      const double bar_w = group_w / static_cast<double>(n_series);
      const double base = py(std::clamp(0.0, y_lo, y_hi));
      for (std::size_t i = 0; i < n_x; ++i) {
        if (!s.points[i]) continue;
        const double x0 = px(i) - group_w / 2.0 + bar_w * static_cast<double>(si);
        const double yv = py(*s.points[i]);
        o += "<rect x=\"" + coord(x0) + "\" y=\"" + coord(std::min(yv, base)) + "\" width=\"" + coord(bar_w) +
             "\" height=\"" + coord(std::fabs(base - yv)) + "\" fill=\"" + color + "\"/>\n";
      }
    }
    o += "</g>\n";
  }
  o += "</g>\n";

  std::size_t longest = 0;
  for (const auto& s : spec.series) longest = std::max(longest, s.name.size());
  const double legend_w = 24.0 + 6.5 * static_cast<double>(longest);
  const double legend_x = right - legend_w - 4.0;
  o += "<g id=\"legend\" font-size=\"10\">\n";
  o += "<rect x=\"" + coord(legend_x) + "\" y=\"" + coord(top + 4.0) + "\" width=\"" + coord(legend_w) +
       "\" height=\"" + coord(14.0 * static_cast<double>(n_series) + 6.0) +
       "\" fill=\"#ffffff\" fill-opacity=\"0.8\" stroke=\"#999999\"/>\n";
  for (std::size_t si = 0; si < n_series; ++si) {
    const auto& s = spec.series[si];
    const double y = top + 12.0 + 14.0 * static_cast<double>(si);
    o += "<rect x=\"" + coord(legend_x + 6.0) + "\" y=\"" + coord(y - 4.0) + "\" width=\"10.00\" height=\"8.00\" fill=\"" +
         std::string(kPalette[static_cast<std::size_t>(s.palette_index)]) + "\"/>\n";
    o += "<text x=\"" + coord(legend_x + 20.0) + "\" y=\"" + coord(y + 4.0) + "\">" + xml_escape(s.name) +
         "</text>\n";
  }
  o += "</g>\n";
  o += "</svg>\n";
  return o;
}

}  // namespace tsviz
