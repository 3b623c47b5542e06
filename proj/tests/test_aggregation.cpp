#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsviz/aggregation.hpp"

using namespace tsviz;

namespace {

Column cat(const std::string& name, const std::vector<std::string>& v) {
  return Column::from_strings(name, ColumnKind::categorical, v);
}

Column num(const std::string& name, const std::vector<double>& v) {
  std::vector<std::string> text;
  for (double x : v) text.push_back(format_shortest(x));
  return Column::from_strings(name, ColumnKind::continuous, text);
}

Dataset permuted(const Dataset& ds, std::mt19937_64& rng) {
  std::vector<std::size_t> order(ds.row_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return ds.select_rows(order);
}

std::vector<std::string> ranking_order(const HueRanking& r) {
  std::vector<std::string> out;
  for (const auto& s : r.ranked) out.push_back(s.hue_name);
  return out;
}

void expect_same_table(const AggregationTable& a, const AggregationTable& b) {
  ASSERT_EQ(a.x_values, b.x_values);
  ASSERT_EQ(a.series.size(), b.series.size());
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    EXPECT_EQ(a.series[s].name, b.series[s].name);
    for (std::size_t i = 0; i < a.x_values.size(); ++i) {
      EXPECT_EQ(a.series[s].cells[i].count, b.series[s].cells[i].count);
      EXPECT_EQ(a.series[s].cells[i].mean.has_value(), b.series[s].cells[i].mean.has_value());
      if (a.series[s].cells[i].mean) {
        EXPECT_TRUE(oracle::close(*a.series[s].cells[i].mean, *b.series[s].cells[i].mean));
      }
    }
  }
}

}  // namespace

TEST(GroupMean, HandExample) {
  const Dataset ds({cat("month", {"4", "4", "5"}), num("c", {10, 20, 30})});
  const auto g = group_mean(ds, "month", "c");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].key, "4");
  EXPECT_EQ(g[0].mean, 15.0);
  EXPECT_EQ(g[0].count, 2u);
  EXPECT_EQ(g[1].key, "5");
  EXPECT_EQ(g[1].mean, 30.0);
  EXPECT_EQ(g[1].count, 1u);
}

TEST(GroupMean, SingleRowAndSingleCategory) {
  const auto one = group_mean(Dataset({cat("k", {"a"}), num("t", {7.5})}), "k", "t");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].mean, 7.5);
  const auto flat = group_mean(Dataset({cat("k", {"a", "a", "a"}), num("t", {1, 2, 6})}), "k", "t");
  ASSERT_EQ(flat.size(), 1u);
  EXPECT_EQ(flat[0].mean, 3.0);
}

TEST(GroupMean, KindChecks) {
  const Dataset ds({cat("k", {"a"}), num("t", {1}), cat("label", {"x"})});
  EXPECT_THROW(group_mean(ds, "t", "t"), Error);
  EXPECT_THROW(group_mean(ds, "k", "label"), Error);
  EXPECT_THROW(group_mean(ds, "nope", "t"), Error);
  try {
    hue_aggregate(ds, "k", "k", "t");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::same_column);
  }
}

TEST(HueAggregate, WeekendSeriesSitBelowWeekdays) {
  static const char* kDays[] = {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};
  std::vector<std::string> hour, day;
  std::vector<double> target;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (int d = 0; d < 7; ++d) {
    for (int h = 0; h < 24; ++h) {
      for (int rep = 0; rep < 3; ++rep) {
        hour.push_back(std::to_string(h));
        day.push_back(kDays[d]);
        target.push_back((d < 5 ? 60.0 : 30.0) + noise(rng));
      }
    }
  }
  const Dataset ds({cat("hour", hour), cat("day", day), num("t", target)});
  const auto table = hue_aggregate(ds, "hour", "day", "t");
  ASSERT_EQ(table.series.size(), 7u);
  for (int d = 0; d < 7; ++d) {
    EXPECT_EQ(table.series[d].name, kDays[d]);
    for (const auto& c : table.series[d].cells) EXPECT_NEAR(*c.mean, d < 5 ? 60.0 : 30.0, 1.0);
  }
  EXPECT_EQ(table.x_values.front(), "0");
  EXPECT_EQ(table.x_values[2], "2");
  EXPECT_EQ(table.x_values.back(), "23");
}

TEST(HueAggregate, SingleHueCategoryEqualsGroupMean) {
  const Dataset ds({cat("x", {"1", "2", "1", "3"}), cat("h", {"z", "z", "z", "z"}), num("t", {1, 2, 3, 4})});
  const auto table = hue_aggregate(ds, "x", "h", "t");
  const auto g = group_mean(ds, "x", "t");
  ASSERT_EQ(table.series.size(), 1u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(table.x_values[i], g[i].key);
    EXPECT_EQ(*table.series[0].cells[i].mean, g[i].mean);
    EXPECT_EQ(table.series[0].cells[i].count, g[i].count);
  }
}

TEST(HueAggregate, AbsentCellsHaveNoMean) {
  const Dataset ds({cat("x", {"1", "2"}), cat("h", {"a", "b"}), num("t", {5, 6})});
  const auto table = hue_aggregate(ds, "x", "h", "t");
  EXPECT_EQ(table.series[0].cells[1].count, 0u);
  EXPECT_FALSE(table.series[0].cells[1].mean.has_value());
  EXPECT_EQ(table_means_csv(table), "x,a,b\n1,5.000,\n2,,6.000\n");
  EXPECT_EQ(table_counts_csv(table), "x,a,b\n1,1,0\n2,0,1\n");
}

TEST(Combine, ObservedPairsOnly) {
  const Dataset all({cat("x", {"0", "0", "1", "1"}), cat("y", {"0", "1", "0", "1"})});
  const std::vector<std::string> cols = {"x", "y"};
  std::string name;
  const Dataset a = combine_categories(all, cols, &name);
  EXPECT_EQ(name, "x+y");
  EXPECT_EQ(a.column(name).distinct_count(), 4u);
  EXPECT_EQ(a.column(name).text(1), "(0,1)");

  const Dataset diag({cat("x", {"0", "1", "0"}), cat("y", {"0", "1", "0"})});
  EXPECT_EQ(combine_categories(diag, cols, &name).column(name).distinct_count(), 2u);

  const Dataset constant({cat("x", {"0", "1", "2"}), cat("y", {"5", "5", "5"})});
  EXPECT_EQ(combine_categories(constant, cols, &name).column(name).distinct_count(), 3u);
  EXPECT_THROW(combine_categories(constant, std::vector<std::string>{"x"}), Error);
}

TEST(Pivot, HandBuiltTwoByTwo) {
  const Dataset ds({cat("month", {"4", "4", "4", "4", "5", "5", "5", "5"}),
                    cat("x", {"0", "0", "1", "1", "0", "0", "1", "1"}),
                    cat("y", {"0", "0", "1", "1", "0", "0", "1", "1"}),
                    num("c", {10, 20, 30, 50, 1, 3, 7, 7})});
  const std::vector<std::string> combo = {"x", "y"};
  const PivotTable p = pivot_table(ds, "month", combo, "c");
  EXPECT_EQ(p.row_values, (std::vector<std::string>{"4", "5"}));
  EXPECT_EQ(p.col_labels, (std::vector<std::string>{"(0,0)", "(1,1)"}));
  EXPECT_EQ(*p.cells[0][0].mean, 15.0);
  EXPECT_EQ(*p.cells[0][1].mean, 40.0);
  EXPECT_EQ(*p.cells[1][0].mean, 2.0);
  EXPECT_EQ(*p.cells[1][1].mean, 7.0);
  EXPECT_EQ(pivot_means_csv(p), "month,\"(0,0)\",\"(1,1)\"\n4,15.000,40.000\n5,2.000,7.000\n");
}

TEST(Pivot, MissingComboAndSingleCell) {
  const Dataset ds({cat("m", {"1", "1", "2"}), cat("a", {"p", "q", "p"}), cat("b", {"u", "v", "u"}),
                    num("t", {1, 2, 3})});
  const std::vector<std::string> combo = {"a", "b"};
  const PivotTable p = pivot_table(ds, "m", combo, "t");
  EXPECT_EQ(p.cells[1][1].count, 0u);
  EXPECT_FALSE(p.cells[1][1].mean);
  EXPECT_EQ(pivot_counts_csv(p), "m,\"(p,u)\",\"(q,v)\"\n1,1,1\n2,1,0\n");

  const Dataset one({cat("m", {"1", "1"}), cat("a", {"p", "p"}), cat("b", {"u", "u"}), num("t", {1, 4})});
  const PivotTable q = pivot_table(one, "m", combo, "t");
  ASSERT_EQ(q.cells.size(), 1u);
  ASSERT_EQ(q.cells[0].size(), 1u);
  EXPECT_EQ(*q.cells[0][0].mean, 2.5);
}

TEST(Separability, Examples) {
  const Dataset same({cat("x", {"1", "2", "1", "2"}), cat("h", {"a", "a", "b", "b"}), num("t", {5, 5, 5, 5})});
  EXPECT_EQ(separability_score(hue_aggregate(same, "x", "h", "t")).score, 0.0);
  const Dataset flat({cat("x", {"1", "2", "1", "2"}), cat("h", {"a", "a", "b", "b"}), num("t", {30, 30, 60, 60})});
  const auto s = separability_score(hue_aggregate(flat, "x", "h", "t"));
  EXPECT_TRUE(s.infinite());
  EXPECT_EQ(s.series_count, 2u);
  const Dataset lone({cat("x", {"1", "2"}), cat("h", {"a", "a"}), num("t", {1, 2})});
  try {
    separability_score(hue_aggregate(lone, "x", "h", "t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::too_few_series);
  }
}

TEST(Separability, HandComputedRatio) {
  // Series a: means 1, 3 (one row each) -> grand 2, var 1.
  // Series b: means 5, 7 -> grand 6, var 1. Global 4, B = 4, W = 1.
  const Dataset ds({cat("x", {"1", "2", "1", "2"}), cat("h", {"a", "a", "b", "b"}), num("t", {1, 3, 5, 7})});
  EXPECT_DOUBLE_EQ(separability_score(hue_aggregate(ds, "x", "h", "t")).score, 4.0);
}

TEST(RankHues, InformativeFirstAndExclusions) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::string> x, informative, noisy, constant, ids;
  std::vector<double> t;
  for (int i = 0; i < 400; ++i) {
    const bool inf = coin(rng);
    x.push_back(std::to_string(i % 10));
    informative.push_back(inf ? "1" : "0");
    noisy.push_back(coin(rng) ? "1" : "0");
    constant.push_back("k");
    ids.push_back(std::to_string(i));
    t.push_back((inf ? 20.0 : 0.0) + noise(rng));
  }
  const Dataset ds({cat("x", x), Column::from_strings("informative", ColumnKind::binary_flag, informative),
                    Column::from_strings("noise", ColumnKind::binary_flag, noisy), cat("constant", constant),
                    Column::from_strings("id", ColumnKind::identifier, ids), num("t", t)});
  const std::vector<std::string> candidates = {"noise", "informative", "constant", "id", "x", "t"};
  const HueRanking r = rank_hues(ds, "x", "t", candidates);
  EXPECT_EQ(ranking_order(r), (std::vector<std::string>{"informative", "noise"}));
  ASSERT_EQ(r.excluded.size(), 4u);
  EXPECT_EQ(r.excluded[0].column, "constant");
  EXPECT_EQ(r.excluded[0].reason, "constant column");

  const std::vector<std::string> single = {"noise"};
  EXPECT_EQ(rank_hues(ds, "x", "t", single).ranked.size(), 1u);
  const std::vector<std::string> none = {"constant"};
  try {
    rank_hues(ds, "x", "t", none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_candidates);
  }
}

TEST(RankHues, TieBreaks) {
  SeparabilityScore a{"b", 2.0, 3}, b{"a", 2.0, 3}, c{"z", 2.0, 2}, d{"y", 5.0, 9};
  std::vector<SeparabilityScore> v = {a, b, c, d};
  std::sort(v.begin(), v.end(), ranks_before);
  EXPECT_EQ(v[0].hue_name, "y");
  EXPECT_EQ(v[1].hue_name, "z");
  EXPECT_EQ(v[2].hue_name, "a");
  EXPECT_EQ(v[3].hue_name, "b");
}

TEST(Partition, ThirtyOneDays) {
  std::vector<std::string> x, hue;
  std::vector<double> t;
  for (int d = 1; d <= 31; ++d) {
    for (int h = 0; h < 2; ++h) {
      x.push_back(std::to_string(h));
      hue.push_back(std::to_string(d));
      t.push_back(d * 1.5 + h);
    }
  }
  const Dataset ds({cat("hour", x), cat("date", hue), num("t", t)});
  const auto table = hue_aggregate(ds, "hour", "date", "t");
  const auto parts = partition_series(table, 12);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].series.size(), 12u);
  EXPECT_EQ(parts[1].series.size(), 12u);
  EXPECT_EQ(parts[2].series.size(), 7u);
  EXPECT_EQ(parts[0].series.front().name, "1");
  EXPECT_EQ(parts[2].series.back().name, "31");
  std::vector<std::string> names;
  for (const auto& p : parts) {
    EXPECT_EQ(p.x_values, table.x_values);
    for (const auto& s : p.series) names.push_back(s.name);
  }
  std::vector<std::string> expected;
  for (const auto& s : table.series) expected.push_back(s.name);
  EXPECT_EQ(names, expected);

  EXPECT_EQ(partition_series(table, 1).size(), 31u);
  EXPECT_THROW(partition_series(table, 0), Error);
}

TEST(Partition, SmallTableUnchanged) {
  const Dataset ds({cat("x", {"1", "1", "1", "1", "1"}), cat("h", {"a", "b", "c", "d", "e"}), num("t", {1, 2, 3, 4, 5})});
  const auto table = hue_aggregate(ds, "x", "h", "t");
  const auto parts = partition_series(table, 12);
  ASSERT_EQ(parts.size(), 1u);
  expect_same_table(parts[0], table);
}

TEST(CanonicalOrder, MixedLabelStyles) {
  std::vector<std::string> nums = {"10", "2", "1", "-3"};
  sort_categories(nums);
  EXPECT_EQ(nums, (std::vector<std::string>{"-3", "1", "2", "10"}));
  std::vector<std::string> days = {"Sunday", "Monday", "Friday"};
  sort_categories(days);
  EXPECT_EQ(days, (std::vector<std::string>{"Monday", "Friday", "Sunday"}));
  std::vector<std::string> bins = {"[10.000, 20.000]", "[-5.000, 2.500)", "[2.500, 10.000)"};
  sort_categories(bins);
  EXPECT_EQ(bins.front(), "[-5.000, 2.500)");
  EXPECT_EQ(bins.back(), "[10.000, 20.000]");
  std::vector<std::string> tuples = {"(10,SB)", "(2,NB)", "(2,EB)"};
  sort_categories(tuples);
  EXPECT_EQ(tuples, (std::vector<std::string>{"(2,EB)", "(2,NB)", "(10,SB)"}));
  std::vector<std::string> mixed = {"b", "10", "a", "2"};
  sort_categories(mixed);
  EXPECT_EQ(mixed, (std::vector<std::string>{"10", "2", "a", "b"}));
}

// Properties over random tables.

TEST(AggregationProperties, MatchNaiveOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset ds = oracle::random_table(rng);
    const auto naive1 = oracle::naive_groups(ds, {"k1"}, "t");
    const auto g = group_mean(ds, "k1", "t");
    std::size_t present = 0;
    for (const auto& [key, cell] : naive1) present += cell.count > 0;
    ASSERT_EQ(g.size(), present);
    for (const auto& s : g) {
      const auto& cell = naive1.at({s.key});
      EXPECT_EQ(s.count, cell.count);
      EXPECT_TRUE(oracle::close(s.mean, cell.mean()));
    }

    const auto naive2 = oracle::naive_groups(ds, {"k1", "k2"}, "t");
    const auto table = hue_aggregate(ds, "k1", "k2", "t");
    for (const auto& series : table.series) {
      for (std::size_t i = 0; i < table.x_values.size(); ++i) {
        const auto& cell = naive2.at({table.x_values[i], series.name});
        EXPECT_EQ(series.cells[i].count, cell.count);
        if (cell.count == 0) {
          EXPECT_FALSE(series.cells[i].mean);
        } else {
          EXPECT_TRUE(oracle::close(*series.cells[i].mean, cell.mean()));
        }
      }
    }

    const std::vector<std::string> combo = {"k2", "k3"};
    const PivotTable p = pivot_table(ds, "k1", combo, "t");
    const auto naive3 = oracle::naive_groups(ds, {"k1", "k2", "k3"}, "t");
    std::size_t total = 0;
    for (std::size_t r = 0; r < p.row_values.size(); ++r) {
      for (std::size_t c = 0; c < p.col_labels.size(); ++c) {
        const auto elems = detail::tuple_elements(p.col_labels[c]);
        ASSERT_TRUE(elems && elems->size() == 2);
        const auto& cell = naive3.at({p.row_values[r], std::string((*elems)[0]), std::string((*elems)[1])});
        EXPECT_EQ(p.cells[r][c].count, cell.count);
        if (cell.count) {
          EXPECT_TRUE(oracle::close(*p.cells[r][c].mean, cell.mean()));
        }
        total += p.cells[r][c].count;
      }
    }
    EXPECT_EQ(total, ds.row_count());
  }
}

TEST(AggregationProperties, ConservationAndPermutation) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = oracle::random_table(rng);
    const auto table = hue_aggregate(ds, "k1", "k2", "t");
    const auto unsplit = group_mean(ds, "k1", "t");
    for (std::size_t i = 0; i < table.x_values.size(); ++i) {
      std::size_t count = 0;
      double weighted = 0.0;
      for (const auto& s : table.series) {
        count += s.cells[i].count;
        if (s.cells[i].mean) weighted += static_cast<double>(s.cells[i].count) * *s.cells[i].mean;
      }
      EXPECT_EQ(count, unsplit[i].count);
      EXPECT_TRUE(oracle::close(weighted / static_cast<double>(count), unsplit[i].mean, 1e-9));
    }
    expect_same_table(table, hue_aggregate(permuted(ds, rng), "k1", "k2", "t"));
  }
}

TEST(AggregationProperties, AffineRankInvariance) {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Dataset ds = oracle::random_table(rng, 300);
    const auto values = ds.column("t").numeric_values();
    std::vector<double> scaled;
    for (double v : values) scaled.push_back(3.7 * v + 11.0);
    const Dataset ds2 = ds.with_replaced(num("t", scaled));
    const std::vector<std::string> candidates = {"k2", "k3"};
    try {
      const auto r1 = rank_hues(ds, "k1", "t", candidates);
      const auto r2 = rank_hues(ds2, "k1", "t", candidates);
      EXPECT_EQ(ranking_order(r1), ranking_order(r2));
      ++compared;
    } catch (const Error&) {
      // Tiny tables may leave no scorable hue; both transforms fail alike.
      EXPECT_THROW(rank_hues(ds2, "k1", "t", candidates), Error);
    }
  }
  EXPECT_GT(compared, 20);
}
