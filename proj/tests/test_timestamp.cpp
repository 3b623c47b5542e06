#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsviz/timestamp.hpp"

using namespace tsviz;

TEST(ParseTimestamp, FirstRowOfSampleData) {
  const auto ts = parse_timestamp("1991-04-01 00:00:00");
  EXPECT_EQ(ts, (Timestamp{1991, 4, 1, 0, 0, 0}));
}

TEST(ParseTimestamp, RejectsFeb29InCommonYear) {
  try {
    parse_timestamp("1991-02-29 00:00:00");
    FAIL() << "expected InvalidDate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_date);
  }
}

TEST(ParseTimestamp, LeapCenturyRule) {
  EXPECT_EQ(parse_timestamp("2000-02-29 12:00:00"), (Timestamp{2000, 2, 29, 12, 0, 0}));
  EXPECT_THROW(parse_timestamp("1900-02-29 12:00:00"), Error);
}

TEST(ParseTimestamp, IsoVariant) {
  const TimeFormat iso(TimeFormat::kIsoPattern);
  EXPECT_EQ(parse_timestamp("1991-08-18T15:20:00", iso), (Timestamp{1991, 8, 18, 15, 20, 0}));
  EXPECT_THROW(parse_timestamp("1991-08-18 15:20:00", iso), ParseError);
}

TEST(ParseTimestamp, ReportsOffendingPosition) {
  try {
    parse_timestamp("1991-04-01X00:00:00");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
  try {
    parse_timestamp("1991-04-01 00:00");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 16u);
  }
  EXPECT_THROW(parse_timestamp("1991-04-01 00:00:00 "), ParseError);
}

TEST(ParseTimestamp, OutOfRangeFields) {
  EXPECT_THROW(parse_timestamp("1991-13-01 00:00:00"), Error);
  EXPECT_THROW(parse_timestamp("1991-04-31 00:00:00"), Error);
  EXPECT_THROW(parse_timestamp("1991-04-01 24:00:00"), Error);
  EXPECT_THROW(parse_timestamp("1991-04-01 00:60:00"), Error);
}

TEST(ParseTimestamp, CustomLayoutWithoutTime) {
  const TimeFormat dmy("DD/MM/YYYY");
  EXPECT_EQ(parse_timestamp("08/05/1991", dmy), (Timestamp{1991, 5, 8, 0, 0, 0}));
  EXPECT_THROW(TimeFormat("hh:mm"), Error);
}

TEST(DayOfWeek, SampleRows) {
  EXPECT_EQ(day_of_week(1991, 5, 8), Weekday::wednesday);
  EXPECT_EQ(day_of_week(1991, 8, 18), Weekday::sunday);
  EXPECT_EQ(day_of_week(1991, 4, 1), Weekday::monday);
  // Independent oracles agree on the derived example.
  EXPECT_EQ(oracle::weekday_sakamoto(1991, 4, 1), 0);
  EXPECT_EQ(oracle::weekday_by_counting(1991, 4, 1), 0);
}

TEST(DayOfWeek, InvalidDateThrows) {
  EXPECT_THROW(day_of_week(1991, 2, 29), Error);
  EXPECT_THROW(day_of_week(1991, 0, 1), Error);
}

TEST(DayOfWeek, MatchesCountingOracleOnRandomDates) {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> year(1800, 2200), month(1, 12);
  for (int i = 0; i < 10000; ++i) {
    const int y = year(rng), m = month(rng);
    std::uniform_int_distribution<int> day(1, oracle::month_length(y, m));
    const int d = day(rng);
    ASSERT_EQ(static_cast<int>(day_of_week(y, m, d)), oracle::weekday_by_counting(y, m, d))
        << y << "-" << m << "-" << d;
  }
}

TEST(DayOfWeek, ConsecutiveDaysAdvanceCyclically) {
  Timestamp t{1899, 12, 25, 0, 0, 0};
  int prev = static_cast<int>(day_of_week(t));
  int weekdays_in_window = 0;
  for (int i = 1; i <= 800; ++i) {
    t = add_seconds(t, 86400);
    const int cur = static_cast<int>(day_of_week(t));
    ASSERT_EQ(cur, (prev + 1) % 7);
    prev = cur;
    if (i <= 7) weekdays_in_window += is_weekend(static_cast<Weekday>(cur)) ? 0 : 1;
  }
  EXPECT_EQ(weekdays_in_window, 5);
}

TEST(AddSeconds, CarriesAcrossMonthAndYear) {
  EXPECT_EQ(add_seconds(Timestamp{1991, 12, 31, 23, 40, 0}, 20 * 60), (Timestamp{1992, 1, 1, 0, 0, 0}));
  EXPECT_EQ(add_seconds(Timestamp{2000, 2, 28, 23, 0, 0}, 3600), (Timestamp{2000, 2, 29, 0, 0, 0}));
  EXPECT_EQ(add_seconds(Timestamp{1970, 1, 1, 0, 0, 0}, -1), (Timestamp{1969, 12, 31, 23, 59, 59}));
}

TEST(TimestampOrdering, Chronological) {
  EXPECT_LT((Timestamp{1991, 4, 1, 23, 59, 59}), (Timestamp{1991, 4, 2, 0, 0, 0}));
  EXPECT_LT((Timestamp{1990, 12, 31, 0, 0, 0}), (Timestamp{1991, 1, 1, 0, 0, 0}));
  EXPECT_EQ(to_string(Timestamp{1991, 5, 8, 15, 20, 0}), "1991-05-08 15:20:00");
}
