#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "transfer/saturated_cover.hpp"

using namespace transfer;

namespace {

GridEdge edge_of(const oracle::Pair& p) {
  const auto [a, b] = p;
  if (b.i == a.i + 1) return GridEdge::horizontal(b.i, a.j);
  return GridEdge::vertical(b.j, a.i);
}

EdgeSet edge_set_of(GridShape s, const oracle::PairSet& e) {
  std::vector<GridEdge> edges;
  for (const auto& p : e) edges.push_back(edge_of(p));
  return EdgeSet::from_edges(s, edges);
}

oracle::PairSet pair_set_of(const EdgeSet& e) {
  oracle::PairSet out;
  for (const auto& g : e.edges()) out.insert({g.source, g.target});
  return out;
}

// c(S) straight from the construction, on edge pairs.
std::set<int> oracle_classify(GridShape s, const oracle::PairSet& e) {
  const int n = s.n;
  int k = -1;
  for (int i = 0; i <= s.m; ++i)
    if (e.count({{i, n - 1}, {i, n}})) k = i;
  std::set<int> out;
  for (int i = 0; i <= k; ++i) out.insert(i);
  for (int i = k + 2; i <= s.m; ++i)
    if (!e.count({{i - 1, n}, {i, n}})) out.insert(i);
  return out;
}

// The [3]x[2] worked example.
SaturatedCover example_32() {
  EdgeSet e({3, 2});
  e.set_vertical(1, 0);
  e.set_vertical(1, 1);
  e.set_vertical(2, 0);
  e.set_vertical(2, 1);
  e.set_vertical(2, 2);
  e.set_horizontal(1, 0);
  e.set_horizontal(1, 1);
  e.set_horizontal(1, 2);
  e.set_horizontal(2, 0);
  e.set_horizontal(3, 0);
  return SaturatedCover::from_edges(e);
}

// A cover on [4]x[1] with c = {0,1,4}; the bottom edges of columns 1 and 4
// are the free choices.
SaturatedCover example_41() {
  EdgeSet e({4, 1});
  e.set_vertical(1, 0);
  e.set_vertical(1, 1);
  e.set_horizontal(3, 0);
  e.set_horizontal(3, 1);
  e.set_horizontal(1, 0);
  e.set_horizontal(1, 1);
  e.set_horizontal(4, 0);
  return SaturatedCover::from_edges(e);
}

}  // namespace

TEST(IsSaturatedCover, Examples) {
  EXPECT_TRUE(is_saturated_cover(example_32().edges()));
  EXPECT_TRUE(is_saturated_cover(EdgeSet({2, 2})));
  EXPECT_TRUE(is_saturated_cover(EdgeSet::full({2, 2})));

  EdgeSet top_only({1, 1});
  top_only.set_horizontal(1, 1);
  const CoverConditions c = check_cover_conditions(top_only);
  EXPECT_FALSE(c.horizontal_prefix);
  EXPECT_FALSE(is_saturated_cover(top_only));

  EdgeSet three = EdgeSet::full({1, 1});
  three.set_vertical(1, 1, false);
  EXPECT_FALSE(check_cover_conditions(three).squares);
}

TEST(IsSaturatedCover, AgreesWithOracle) {
  for (GridShape s : {GridShape{1, 1}, GridShape{2, 1}, GridShape{1, 2}, GridShape{2, 2}, GridShape{3, 1}}) {
    const auto edges = oracle::unit_edges(s);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
      oracle::PairSet e;
      for (std::size_t b = 0; b < edges.size(); ++b)
        if ((mask >> b) & 1U) e.insert(edges[b]);
      ASSERT_EQ(is_saturated_cover(edge_set_of(s, e)), oracle::is_saturated_cover(s, e));
    }
  }
}

TEST(EdgeSet, RejectsForeignEdges) {
  EXPECT_THROW(EdgeSet::from_edges({1, 1}, std::vector<GridEdge>{GridEdge::horizontal(2, 0)}), std::invalid_argument);
  EdgeSet e({1, 1});
  e.set_horizontal(1, 1);
  EXPECT_THROW(SaturatedCover::from_edges(e), std::invalid_argument);
}

TEST(CoverToSystem, Examples) {
  EXPECT_EQ(cover_to_system(SaturatedCover::empty({2, 1})), TransferSystem::trivial({2, 1}));
  EXPECT_EQ(cover_to_system(SaturatedCover::full({2, 1})), TransferSystem::complete({2, 1}));
  const TransferSystem t = cover_to_system(example_32());
  EXPECT_TRUE(is_saturated(t));
  EXPECT_EQ(cover_relations(t).size(), 10u);
  EXPECT_EQ(cover_relations(t), example_32().edges().edges());
}

TEST(CoverToSystem, InverseOfSystemToCover) {
  for (GridShape s : {GridShape{1, 1}, GridShape{2, 1}, GridShape{1, 2}, GridShape{2, 2}, GridShape{3, 1}, GridShape{8, 0}}) {
    std::set<oracle::PairSet> from_covers;
    for_each_saturated_cover(s, [&](const SaturatedCover& c) {
      const TransferSystem t = cover_to_system(c);
      EXPECT_EQ(system_to_cover(t), c);
      oracle::PairSet ps;
      for (const auto& p : t.pairs(true)) ps.insert(p);
      from_covers.insert(ps);
    });
    if (s.point_count() > 6) continue;
    std::set<oracle::PairSet> saturated;
    for (const auto& sys : oracle::all_transfer_systems(s))
      if (oracle::is_saturated(s, sys)) saturated.insert(sys);
    EXPECT_EQ(from_covers, saturated);
  }
}

TEST(SystemToCover, RejectsUnsaturated) {
  Relation r({1, 1});
  r.add({0, 0}, {1, 1});
  EXPECT_THROW(system_to_cover(generate(r)), std::invalid_argument);
}

TEST(Codes, Examples) {
  const CodePair c = codes_of(example_32());
  EXPECT_EQ(c.a, (std::vector<int>{3, 1, 1}));
  EXPECT_EQ(c.b, (std::vector<int>{2, 3}));
  EXPECT_TRUE(is_compatible(c, {3, 2}));
  EXPECT_EQ(cover_from_codes(c, {3, 2}), example_32());

  const CodePair zero = codes_of(SaturatedCover::empty({2, 3}));
  EXPECT_EQ(zero.a, (std::vector<int>{0, 0}));
  EXPECT_EQ(zero.b, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(cover_from_codes(zero, {2, 3}), SaturatedCover::empty({2, 3}));

  const CodePair full = codes_of(SaturatedCover::full({2, 3}));
  EXPECT_EQ(full.a, (std::vector<int>{4, 4}));
  EXPECT_EQ(full.b, (std::vector<int>{3, 3, 3}));
  EXPECT_EQ(cover_from_codes(full, {2, 3}), SaturatedCover::full({2, 3}));
}

TEST(Codes, CompatibilityOnSmallestSquare) {
  EXPECT_FALSE(is_compatible({{1}, {2}}, {1, 1}));
  EXPECT_TRUE(is_compatible({{2}, {2}}, {1, 1}));
  EXPECT_THROW(cover_from_codes({{1}, {2}}, {1, 1}), std::invalid_argument);
  EXPECT_FALSE(is_compatible({{3}, {0}}, {1, 1}));

  // Exactly the codes of the oracle's covers are compatible.
  std::set<CodePair> from_oracle;
  for (const auto& e : oracle::all_saturated_covers({1, 1}))
    from_oracle.insert(codes_of(SaturatedCover::from_edges(edge_set_of({1, 1}, e))));
  std::set<CodePair> compatible;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      if (is_compatible({{a}, {b}}, {1, 1})) compatible.insert({{a}, {b}});
  EXPECT_EQ(compatible, from_oracle);
  EXPECT_EQ(compatible.size(), 7u);
}

TEST(Codes, RoundTrip) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const GridShape s{m, n};
      for_each_code_pair(s, [&](const CodePair& c) {
        const SaturatedCover cov = cover_from_codes(c, s);
        ASSERT_EQ(codes_of(cov), c);
        ASSERT_EQ(cover_from_codes(codes_of(cov), s), cov);
      });
    }
}

TEST(Codes, CountMatchesOracle) {
  for (GridShape s : {GridShape{0, 0}, GridShape{1, 1}, GridShape{2, 1}, GridShape{1, 2}, GridShape{2, 2},
                      GridShape{3, 1}, GridShape{1, 3}, GridShape{3, 2}}) {
    const auto covers = oracle::all_saturated_covers(s);
    EXPECT_EQ(count_code_pairs(s), covers.size()) << s;
    std::set<oracle::PairSet> ours;
    for_each_saturated_cover(s, [&](const SaturatedCover& c) { ours.insert(pair_set_of(c.edges())); });
    EXPECT_EQ(ours, std::set<oracle::PairSet>(covers.begin(), covers.end()));
  }
  EXPECT_EQ(count_code_pairs({1, 1}), 7u);
}

TEST(Codes, FactoredCountAgrees) {
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(count_code_pairs_factored({m, n}), count_code_pairs({m, n}));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(example_41()).elements(), (std::vector<int>{0, 1, 4}));
  EXPECT_TRUE(classify(SaturatedCover::full({3, 2})).is_full());
  EXPECT_EQ(classify(SaturatedCover::empty({3, 2})).elements(), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(classify(SaturatedCover::empty({3, 0})), std::invalid_argument);
}

TEST(Classify, AgreesWithOracle) {
  for (GridShape s : {GridShape{1, 1}, GridShape{2, 1}, GridShape{3, 1}, GridShape{2, 2}, GridShape{1, 3}}) {
    for (const auto& e : oracle::all_saturated_covers(s)) {
      const auto label = classify(SaturatedCover::from_edges(edge_set_of(s, e))).elements();
      EXPECT_EQ(std::set<int>(label.begin(), label.end()), oracle_classify(s, e));
    }
  }
}

TEST(Collapse, Examples) {
  const SaturatedCover full = SaturatedCover::full({1, 1});
  EXPECT_EQ(collapse(full), SaturatedCover::full({1, 0}));
  EXPECT_EQ(expand(SaturatedCover::full({1, 0}), classify(full), {1, 1}), full);

  // Columns 1 and 4 of the bottom row survive, column 3 is merged away.
  const SaturatedCover s = example_41();
  const SaturatedCover t = collapse(s);
  EdgeSet expected({3, 0});
  expected.set_horizontal(1, 0);
  expected.set_horizontal(3, 0);
  EXPECT_EQ(t, SaturatedCover::from_edges(expected));
  EXPECT_EQ(expand(t, classify(s), {4, 1}), s);

  const SaturatedCover empty = SaturatedCover::empty({1, 2});
  EXPECT_EQ(classify(empty).size(), 1);
  const SaturatedCover one_col = SaturatedCover::empty({1, 1});
  EdgeSet no_verticals({1, 1});
  no_verticals.set_horizontal(1, 0);
  no_verticals.set_horizontal(1, 1);
  const SaturatedCover i_type = SaturatedCover::from_edges(no_verticals);
  EXPECT_EQ(classify(i_type).size(), 0);
  EXPECT_EQ(collapse(i_type), SaturatedCover::empty({0, 0}));
  EXPECT_EQ(expand(SaturatedCover::empty({0, 0}), classify(i_type), {1, 1}), i_type);
  EXPECT_EQ(collapse(one_col).shape(), (GridShape{1, 0}));
}

TEST(Collapse, Errors) {
  const SaturatedCover s = SaturatedCover::full({2, 1});
  EXPECT_THROW(collapse(s, ClassLabel::from_elements(2, std::vector<int>{0})), std::invalid_argument);
  EXPECT_THROW(expand(SaturatedCover::full({1, 0}), ClassLabel::from_elements(2, std::vector<int>{0, 1, 2}), {2, 1}),
               std::invalid_argument);
}

TEST(Collapse, FiberSizesMatchOracle) {
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      const GridShape big{m, n + 1};
      std::map<std::set<int>, std::size_t> fibers;
      for (const auto& e : oracle::all_saturated_covers(big)) ++fibers[oracle_classify(big, e)];
      std::size_t total = 0;
      for (Mask a = 0; a < (Mask{1} << (m + 1)); ++a) {
        std::set<int> label;
        for (int i = 0; i <= m; ++i)
          if ((a >> i) & 1U) label.insert(i);
        const bool full = static_cast<int>(label.size()) == m + 1;
        const GridShape small{full ? m : static_cast<int>(label.size()), n};
        const std::size_t expected = oracle::all_saturated_covers(small).size();
        EXPECT_EQ(fibers[label], expected) << big;
        total += fibers[label];
      }
      EXPECT_EQ(total, oracle::all_saturated_covers(big).size());
    }
}

TEST(Collapse, InverseOfExpand) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 2; ++n) {
      const GridShape big{m, n + 1};
      for_each_saturated_cover(big, [&](const SaturatedCover& s) {
        const ClassLabel a = classify(s);
        const SaturatedCover t = collapse(s, a);
        ASSERT_TRUE(is_saturated_cover(t.edges()));
        ASSERT_EQ(expand(t, a, big), s);
      });
      for (Mask bits = 0; bits < (Mask{1} << (m + 1)); ++bits) {
        const ClassLabel a(m, bits);
        const GridShape small{a.is_full() ? m : a.size(), n};
        for_each_saturated_cover(small, [&](const SaturatedCover& t) {
          const SaturatedCover s = expand(t, a, big);
          ASSERT_EQ(classify(s), a);
          ASSERT_EQ(collapse(s, a), t);
        });
      }
    }
}
