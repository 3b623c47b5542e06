#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"
#include "tsviz/timestamp.hpp"

namespace tsviz {

/// Effect sizes for the generator. The target is
///   base + month_trend * month + weekday_bump * weekday_flag
///        + hour_profile[hour] + uniform noise with standard deviation noise_sd.
struct SynthSpec {
  std::size_t rows = 5000;
  double base = 40.0;
  double month_trend = 0.0;
  double weekday_bump = 0.0;
  std::array<double, 24> hour_profile{};
  double noise_sd = 0.0;
  /// Adds a `coin` column of fair 0/1 draws unrelated to the target.
  bool random_flag = false;
  Timestamp start{1991, 4, 1, 0, 0, 0};
  /// Measurement spacing between consecutive timestamps.
  int step_seconds = 20 * 60;
};

/// Rush-hour shaped profile: flat overnight, rising through the day and
/// falling off after 18:00.
inline std::array<double, 24> rush_hour_profile(double amplitude) {
  std::array<double, 24> p{};
  for (int h = 0; h < 24; ++h) {
    double shape = 0.0;
    if (h >= 6 && h <= 18) shape = static_cast<double>(h - 6) / 12.0;
    if (h > 18) shape = std::max(0.0, 1.0 - static_cast<double>(h - 18) / 3.0);
    p[static_cast<std::size_t>(h)] = amplitude * shape;
  }
  return p;
}

namespace detail {

struct Road {
  int x;
  int y;
  const char* direction;
};

// Twelve roadway/direction pairs over a 3 x 2 coordinate grid.
inline constexpr std::array<Road, 12> kRoads = {{
    {0, 0, "EB"}, {0, 0, "NB"}, {0, 0, "SB"}, {0, 1, "EB"}, {0, 1, "NB"}, {1, 0, "WB"},
    {1, 0, "SB"}, {1, 1, "EB"}, {1, 1, "WB"}, {2, 0, "NB"}, {2, 1, "SB"}, {2, 1, "WB"},
}};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// Twister draw; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Traffic-style table: row_id, time, x, y, direction, congestion (plus
/// `coin` when requested). Every timestamp is shared by all twelve roads.
inline Dataset synth_dataset(std::uint64_t seed, const SynthSpec& spec) {
  if (spec.rows < 1) throw Error(ErrorCode::non_positive, "synthetic row count must be at least 1");
  std::mt19937_64 rng(seed);
  const double half_width = spec.noise_sd * std::sqrt(3.0);
  const std::size_t roads = detail::kRoads.size();

  ColumnBuilder row_id, time, xs, ys, dir, target, coin;
  for (std::size_t i = 0; i < spec.rows; ++i) {
    const std::size_t tick = i / roads;
    const auto& road = detail::kRoads[i % roads];
    const Timestamp ts = add_seconds(spec.start, static_cast<std::int64_t>(tick) * spec.step_seconds);
    const bool weekday = !is_weekend(day_of_week(ts));

    double value = spec.base + spec.month_trend * ts.month + (weekday ? spec.weekday_bump : 0.0) +
                   spec.hour_profile[static_cast<std::size_t>(ts.hour)];
    const double u = detail::unit_uniform(rng);
    if (half_width > 0.0) value += (2.0 * u - 1.0) * half_width;
    const bool heads = detail::unit_uniform(rng) < 0.5;

    row_id.push(std::string_view{std::to_string(i)});
    time.push(std::string_view{to_string(ts)});
    xs.push(std::string_view{std::to_string(road.x)});
    ys.push(std::string_view{std::to_string(road.y)});
    dir.push(std::string_view{road.direction});
    target.push(std::string_view{format_shortest(value)});
    coin.push(std::string_view{heads ? "1" : "0"});
  }

  std::vector<Column> cols;
  cols.push_back(std::move(row_id).build("row_id", ColumnKind::identifier));
  cols.push_back(std::move(time).build("time", ColumnKind::timestamp));
  cols.push_back(std::move(xs).build("x", ColumnKind::categorical));
  cols.push_back(std::move(ys).build("y", ColumnKind::categorical));
  cols.push_back(std::move(dir).build("direction", ColumnKind::categorical));
  cols.push_back(std::move(target).build("congestion", ColumnKind::continuous));
  if (spec.random_flag) cols.push_back(std::move(coin).build("coin", ColumnKind::binary_flag));
  return Dataset(std::move(cols));
}

}  // namespace tsviz
