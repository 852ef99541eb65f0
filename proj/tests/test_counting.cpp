#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "transfer/counting.hpp"
#include "transfer/saturated_cover.hpp"
#include "transfer/transfer_system.hpp"

using namespace transfer;

namespace {

BigCount big(unsigned long v) { return BigCount(v); }

// Marked partitions of {0..l-1} into r blocks, by listing them.
std::uint64_t oracle_marked(unsigned l, unsigned r) {
  std::uint64_t total = 0;
  oracle::for_each_partition(l, r, [&](const std::vector<unsigned>& label) {
    std::vector<bool> seen(r, false);
    for (unsigned x = 0; x < l; ++x) {
      if (seen[label[x]]) ++total;
      seen[label[x]] = true;
    }
  });
  return total;
}

}  // namespace

TEST(Stirling, Examples) {
  EXPECT_EQ(oracle::stirling2(3, 2), 3u);
  EXPECT_EQ(stirling2(3, 2), big(3));
  EXPECT_EQ(stirling2(0, 0), big(1));
  EXPECT_EQ(stirling2(4, 0), big(0));
  EXPECT_EQ(stirling2(0, 4), big(0));
  for (unsigned l = 0; l <= 15; ++l) EXPECT_EQ(stirling2(l, l), big(1));
  for (unsigned l = 1; l <= 15; ++l) EXPECT_EQ(stirling2(l, 1), big(1));
}

TEST(Stirling, MatchesPartitionCount) {
  for (unsigned l = 0; l <= 9; ++l)
    for (unsigned k = 0; k <= l; ++k) EXPECT_EQ(stirling2(l, k), big(oracle::stirling2(l, k))) << l << ',' << k;
}

TEST(Stirling, RecurrenceMatchesClosedSum) {
  for (unsigned l = 0; l <= 20; ++l)
    for (unsigned k = 0; k <= l + 1; ++k) EXPECT_EQ(stirling2(l, k), stirling2_closed(l, k));
}

TEST(Recurrence, Examples) {
  EXPECT_EQ(s_recurrence(1, 1), big(7));
  EXPECT_EQ(s_recurrence(2, 1), big(23));
  EXPECT_EQ(s_recurrence(2, 2), big(115));
  for (unsigned m = 0; m <= 10; ++m) EXPECT_EQ(s_recurrence(m, 0), big(1UL << m));
}

TEST(Recurrence, MatchesBruteForce) {
  EXPECT_EQ(s_recurrence(2, 1), big(oracle::all_saturated_covers({2, 1}).size()));
  EXPECT_EQ(s_recurrence(2, 2), big(oracle::all_saturated_covers({2, 2}).size()));
  for (GridShape s : {GridShape{1, 1}, GridShape{2, 1}, GridShape{1, 2}, GridShape{2, 2}, GridShape{1, 3}}) {
    EXPECT_EQ(s_recurrence(s.m, s.n), big(enumerate_saturated_bruteforce(s).size())) << s;
  }
}

TEST(Recurrence, MatchesCodeCount) {
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = 0; n <= 5; ++n)
      EXPECT_EQ(s_recurrence(m, n), big(count_code_pairs({static_cast<int>(m), static_cast<int>(n)})));
}

TEST(Closed, Examples) {
  // j = 2 gives -S(2,1)*1*2 = -2, j = 3 gives S(2,2)*3*3 = 9.
  EXPECT_EQ(s_closed(1, 1), big(7));
  for (unsigned k = 0; k <= 12; ++k) {
    EXPECT_EQ(s_closed(k, 0), big(1UL << k));
    EXPECT_EQ(s_closed(0, k), big(1UL << k));
  }
}

TEST(Closed, TripleAgreementAndSymmetry) {
  const RationalSeries2 f = egf_series(12);
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned n = 0; n <= 6; ++n) {
      const BigCount r = s_recurrence(m, n);
      EXPECT_EQ(s_closed(m, n), r);
      EXPECT_EQ(egf_coefficient(f, m, n), r);
      EXPECT_EQ(s_recurrence(n, m), r);
      EXPECT_EQ(s_closed(n, m), s_closed(m, n));
    }
}

TEST(Closed, LargeValuesAgree) {
  EXPECT_EQ(s_closed(40, 40), s_recurrence(40, 40));
  EXPECT_EQ(s_closed(40, 40), s_closed(40, 40));
  EXPECT_EQ(s_recurrence(30, 20), s_recurrence(20, 30));
}

TEST(MarkedPartitions, Examples) {
  const auto r32 = marked_partition_check(3, 2);
  EXPECT_EQ(r32.lhs, big(3));
  EXPECT_EQ(r32.rhs, big(3));
  EXPECT_TRUE(r32.holds());

  const auto r52 = marked_partition_check(5, 2);
  EXPECT_EQ(r52.lhs, big(45));
  EXPECT_EQ(r52.rhs, big(45));
  EXPECT_TRUE(r52.holds());

  for (unsigned l = 0; l <= 6; ++l) {
    const auto r = marked_partition_check(l, l);
    EXPECT_EQ(r.lhs, big(0));
    EXPECT_EQ(r.rhs, big(0));
  }
  EXPECT_THROW(marked_partition_check(2, 3), std::invalid_argument);
}

TEST(MarkedPartitions, DirectCountMatchesOracle) {
  for (unsigned l = 0; l <= 8; ++l)
    for (unsigned r = 0; r <= l; ++r) {
      EXPECT_EQ(count_marked_partitions(l, r), oracle_marked(l, r)) << l << ',' << r;
      EXPECT_TRUE(marked_partition_check(l, r).holds());
    }
  for (unsigned l = 9; l <= 14; ++l)
    for (unsigned r = 0; r <= l; ++r) EXPECT_TRUE(marked_partition_check(l, r).holds());
}

TEST(Egf, Examples) {
  const RationalSeries2 f = egf_series(8);
  for (unsigned m = 0; m <= 8; ++m) EXPECT_EQ(egf_coefficient(f, m, 0), big(1UL << m));
  EXPECT_EQ(egf_coefficient(1, 1, 2), big(7));
  EXPECT_EQ(egf_coefficient(2, 2, 4), big(115));
  EXPECT_THROW(egf_coefficient(f, 5, 4), std::invalid_argument);
}

TEST(Egf, PdeHolds) {
  EXPECT_TRUE(pde_check(2));
  EXPECT_TRUE(pde_check(4));
  EXPECT_TRUE(pde_check(10));
}

TEST(Egf, PdeDetectsPerturbation) {
  RationalSeries2 f = egf_series(6);
  f.coeff(2, 1) += mpq_class(1, 3);
  EXPECT_FALSE(pde_check(f));
  RationalSeries2 g = egf_series(6);
  g.coeff(0, 0) = 2;
  EXPECT_FALSE(pde_check(g));
}

TEST(Series, Arithmetic) {
  const int N = 6;
  const auto ex = RationalSeries2::exp_linear(N, 1, 0);
  const auto emx = RationalSeries2::exp_linear(N, -1, 0);
  EXPECT_EQ(ex * emx, RationalSeries2::constant(N, 1));
  EXPECT_EQ(ex.reciprocal(), emx);
  EXPECT_EQ(ex.pow(3), RationalSeries2::exp_linear(N, 3, 0));
  EXPECT_EQ(ex.d_dx(), ex.truncated(N - 1));
  EXPECT_EQ(RationalSeries2::exp_linear(N, 2, 5).d_dy(), RationalSeries2::exp_linear(N - 1, 2, 5) * mpq_class(5));
  EXPECT_EQ(ex.coeff(3, 0), mpq_class(1, 6));
  EXPECT_EQ((ex - ex), RationalSeries2(N));
  EXPECT_THROW(RationalSeries2(N).reciprocal(), std::domain_error);
  const auto sum = ex + RationalSeries2::constant(3, 1);
  EXPECT_EQ(sum.order(), 3);
}

TEST(Table, CsvRoundTrip) {
  const CountTable t = count_table(4, 3, s_recurrence);
  std::stringstream ss;
  write_table_csv(ss, t);
  EXPECT_EQ(read_table_csv(ss), t);
  EXPECT_EQ(t[1][1], big(7));
  std::istringstream bad("m\\n,0,1\n0,1,x\n");
  EXPECT_THROW(read_table_csv(bad), std::runtime_error);
}

TEST(Table, MemoPersistence) {
  const auto dir = std::filesystem::temp_directory_path() / "transfer_counting_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "memo.csv";
  (void)s_recurrence(6, 6);
  save_recurrence_memo(good);
  EXPECT_NO_THROW(load_recurrence_memo(good));
  EXPECT_EQ(s_recurrence(2, 2), big(115));

  CountTable broken = count_table(3, 3, s_recurrence);
  broken[2][2] += 1;
  const auto bad = dir / "bad.csv";
  {
    std::ofstream os(bad);
    write_table_csv(os, broken);
  }
  EXPECT_THROW(load_recurrence_memo(bad), std::runtime_error);
  EXPECT_EQ(s_recurrence(2, 2), big(115));

  CountTable wrong_base = count_table(3, 0, s_recurrence);
  wrong_base[3][0] = 9;
  {
    std::ofstream os(bad);
    write_table_csv(os, wrong_base);
  }
  EXPECT_THROW(load_recurrence_memo(bad), std::runtime_error);
  std::filesystem::remove_all(dir);
}
