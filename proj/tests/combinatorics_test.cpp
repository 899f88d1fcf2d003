#include <gtest/gtest.h>

#include <set>

#include "fockbell/combinatorics.hpp"

using namespace fockbell;

TEST(Compositions, SmallCaseInLexicographicOrder) {
  const auto c = enumerate_compositions(2, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (Counts{0, 2}));
  EXPECT_EQ(c[1], (Counts{1, 1}));
  EXPECT_EQ(c[2], (Counts{2, 0}));
}

TEST(Compositions, CountsMatchBinomial) {
  EXPECT_EQ(enumerate_compositions(4, 2).size(), 10u);
  EXPECT_EQ(enumerate_compositions(6, 9).size(), 2002u);
  for (int parts = 1; parts <= 5; ++parts)
    for (int n = 0; n <= 7; ++n) {
      const auto c = enumerate_compositions(parts, n);
      EXPECT_EQ(c.size(), composition_count(parts, n));
      EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
      EXPECT_EQ(std::set<Counts>(c.begin(), c.end()).size(), c.size());
      for (const auto& v : c) EXPECT_EQ(total(v), n);
    }
}

TEST(Compositions, ZeroTotalAndSinglePart) {
  EXPECT_EQ(enumerate_compositions(4, 0), (std::vector<Counts>{{0, 0, 0, 0}}));
  EXPECT_EQ(enumerate_compositions(1, 5), (std::vector<Counts>{{5}}));
  EXPECT_THROW(enumerate_compositions(0, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_compositions(2, -1), std::invalid_argument);
}

TEST(Compositions, CountSaturatesInsteadOfOverflowing) {
  EXPECT_EQ(composition_count(60, 5000), std::numeric_limits<std::uint64_t>::max());
}

TEST(Factorials, ExactValues) {
  EXPECT_EQ(factorial_exact(20), BigInt("2432902008176640000"));
  EXPECT_EQ(binomial_exact(30, 15), BigInt(155117520));
  EXPECT_EQ(binomial_exact(5, 7), BigInt(0));
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-12);
}

namespace {
// Independent count: brute force over all matrices with entries bounded by
// the row sums.
int brute_tables(const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t r = rows.size(), c = cols.size();
  std::vector<int> t(r * c, 0);
  int hits = 0;
  const int cap = *std::max_element(rows.begin(), rows.end());
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < c; ++j) s += t[i * c + j];
      ok = s == rows[i];
    }
    for (std::size_t j = 0; j < c && ok; ++j) {
      int s = 0;
      for (std::size_t i = 0; i < r; ++i) s += t[i * c + j];
      ok = s == cols[j];
    }
    hits += ok;
    std::size_t k = 0;
    while (k < t.size() && ++t[k] > cap) t[k++] = 0;
    if (k == t.size()) return hits;
  }
}
}  // namespace

TEST(ContingencyTables, CountMatchesBruteForce) {
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> cases{
      {{1, 1}, {1, 1}}, {{2, 1, 0}, {2, 1}}, {{1, 2, 1, 0}, {2, 2}}, {{2, 2}, {1, 1, 2}}};
  for (const auto& [rows, cols] : cases) {
    int n = 0;
    for_each_contingency_table(rows, cols, [&](const std::vector<int>& t) {
      ++n;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        int s = 0;
        for (std::size_t j = 0; j < cols.size(); ++j) s += t[i * cols.size() + j];
        EXPECT_EQ(s, rows[i]);
      }
    });
    EXPECT_EQ(n, brute_tables(rows, cols));
  }
}

TEST(ContingencyTables, MismatchedTotalsVisitNothing) {
  int n = 0;
  for_each_contingency_table(std::vector<int>{1, 1}, std::vector<int>{3},
                             [&](const std::vector<int>&) { ++n; });
  EXPECT_EQ(n, 0);
}
