#include <array>
#include <cstdio>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsviz/csv.hpp"
#include "tsviz/temporal.hpp"

using namespace tsviz;

namespace {

Dataset times(const std::vector<std::string>& stamps) {
  return Dataset({Column::from_strings("time", ColumnKind::timestamp, stamps)});
}

}  // namespace

TEST(Decompose, SplitsIntoCalendarFields) {
  const Dataset ds = decompose(times({"1991-04-01 00:00:00", "1991-05-08 15:20:07"}), "time");
  ASSERT_EQ(ds.column_count(), 7u);
  EXPECT_EQ(ds.column("year").text(1), "1991");
  EXPECT_EQ(ds.column("month").text(1), "5");
  EXPECT_EQ(ds.column("date").text(1), "8");
  EXPECT_EQ(ds.column("hour").text(1), "15");
  EXPECT_EQ(ds.column("minute").text(1), "20");
  EXPECT_EQ(ds.column("second").text(1), "7");
  EXPECT_EQ(ds.column("hour").text(0), "0");
  for (const char* c : {"year", "month", "date", "hour", "minute", "second"}) {
    EXPECT_EQ(ds.column(c).kind(), ColumnKind::categorical) << c;
  }
  EXPECT_EQ(ds.column("time").text(1), "1991-05-08 15:20:07");
}

TEST(Decompose, CollidingNamesGetSuffix) {
  const Dataset base = times({"1991-04-01 00:00:00"}).with_column(
      Column::from_strings("year", ColumnKind::categorical, {"keep"}));
  CalendarColumns names;
  const Dataset ds = decompose(base, "time", TimeFormat(), &names);
  EXPECT_EQ(names.year, "year_ts");
  EXPECT_EQ(ds.column("year").text(0), "keep");
  EXPECT_EQ(ds.column("year_ts").text(0), "1991");
  EXPECT_EQ(names.month, "month");
}

TEST(Decompose, Errors) {
  const Dataset ds({Column::from_strings("time", ColumnKind::categorical, {"x"})});
  try {
    decompose(ds, "time");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::wrong_kind);
  }
  try {
    decompose(ds, "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_column);
  }
}

TEST(CalendarFlags, SampleRows) {
  const Dataset ds = derive_calendar_flags(
      times({"1991-05-08 15:20:00", "1991-07-22 11:20:00", "1991-08-18 15:20:00"}), "time");
  EXPECT_EQ(ds.column("day").text(0), "Wednesday");
  EXPECT_EQ(ds.column("weekday").text(0), "1");
  EXPECT_EQ(ds.column("PM").text(0), "1");
  EXPECT_EQ(ds.column("day").text(1), "Monday");
  EXPECT_EQ(ds.column("weekday").text(1), "1");
  EXPECT_EQ(ds.column("PM").text(1), "0");
  EXPECT_EQ(ds.column("day").text(2), "Sunday");
  EXPECT_EQ(ds.column("weekday").text(2), "0");
  EXPECT_EQ(ds.column("PM").text(2), "1");
  EXPECT_EQ(ds.column("weekday").kind(), ColumnKind::binary_flag);
  EXPECT_EQ(ds.column("PM").kind(), ColumnKind::binary_flag);
  EXPECT_EQ(ds.column("day").kind(), ColumnKind::categorical);
}

TEST(CalendarFlags, NoonIsPm) {
  const Dataset ds = derive_calendar_flags(times({"1991-04-01 11:59:59", "1991-04-01 12:00:00"}), "time");
  EXPECT_EQ(ds.column("PM").text(0), "0");
  EXPECT_EQ(ds.column("PM").text(1), "1");
}

TEST(CalendarProperties, AgreeWithOracles) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> year(1900, 2100), month(1, 12), hour(0, 23), minute(0, 59);
  std::vector<std::string> stamps;
  std::vector<std::array<int, 5>> truth;
  for (int i = 0; i < 500; ++i) {
    const int y = year(rng), m = month(rng);
    const int d = std::uniform_int_distribution<int>(1, oracle::month_length(y, m))(rng);
    const int h = hour(rng), mi = minute(rng);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:00", y, m, d, h, mi);
    stamps.emplace_back(buf);
    truth.push_back({y, m, d, h, mi});
  }
  const auto [ds, names] = engineer_calendar_features(times(stamps), "time");
  static const char* kNames[] = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};
  for (std::size_t r = 0; r < stamps.size(); ++r) {
    const auto& [y, m, d, h, mi] = truth[r];
    const int wd = oracle::weekday_by_counting(y, m, d);
    EXPECT_EQ(ds.column(names.day).text(r), kNames[wd]);
    EXPECT_EQ(ds.column(names.weekday).text(r), wd < 5 ? "1" : "0");
    EXPECT_EQ(ds.column(names.pm).text(r), h >= 12 ? "1" : "0");
    // Recomposition gives back the original instant.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d",
                  std::stoi(std::string(ds.column(names.year).text(r))),
                  std::stoi(std::string(ds.column(names.month).text(r))),
                  std::stoi(std::string(ds.column(names.date).text(r))),
                  std::stoi(std::string(ds.column(names.hour).text(r))),
                  std::stoi(std::string(ds.column(names.minute).text(r))),
                  std::stoi(std::string(ds.column(names.second).text(r))));
    EXPECT_EQ(buf, stamps[r]);
  }
}

TEST(CalendarProperties, WeekdayFlagIsFiveOfSeven) {
  std::vector<std::string> stamps;
  for (int d = 1; d <= 28; ++d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "1991-02-%02d 08:00:00", d);
    stamps.emplace_back(buf);
  }
  const Dataset ds = derive_calendar_flags(times(stamps), "time");
  for (std::size_t start = 0; start + 7 <= stamps.size(); ++start) {
    int weekdays = 0;
    for (std::size_t r = start; r < start + 7; ++r) weekdays += ds.column("weekday").text(r) == "1";
    EXPECT_EQ(weekdays, 5);
  }
}

TEST(CalendarFeatures, LoadedSampleKeepsRowCount) {
  const Dataset raw = parse_csv(
      "time,congestion\n1991-04-01 00:00:00,70\n1991-04-01 00:20:00,49\n1991-04-06 13:00:00,24\n");
  const auto [ds, names] = engineer_calendar_features(raw, "time");
  EXPECT_EQ(ds.row_count(), 3u);
  EXPECT_EQ(ds.column_count(), 2u + 9u);
  EXPECT_EQ(ds.column(names.day).text(2), "Saturday");
}
