#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mkcut/gain_buckets.hpp"
#include "mkcut/rng.hpp"
#include "oracles.hpp"

namespace mkcut {
namespace {

// Every defined gain equals the two-evaluation difference and every bucket
// node sits where its gain says it should.
void expect_coherent(const SearchState& s) {
  const Graph& g = s.graph();
  auto assign = s.partition().assignment();
  EXPECT_EQ(s.objective(), testing::cut_value(g, assign));
  const GainBuckets& b = s.buckets();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (SubsetId x = 0; x < s.k(); ++x) {
      if (x == assign[v]) {
        EXPECT_FALSE(b.contains(v, x)) << "v=" << v << " own subset " << x;
        continue;
      }
      const Weight expected = testing::brute_gain(g, assign, v, x);
      EXPECT_EQ(s.gain(v, x), expected) << "v=" << v << " x=" << x;
      EXPECT_EQ(b.cell_of(v, x), b.index_of(expected));
    }
  }
  EXPECT_TRUE(s.audit().empty());
}

TEST(GainBuckets, InsertRemoveKeepsCountsAndLinks) {
  GainBuckets b(4, 2, 3);
  EXPECT_EQ(b.cells_per_array(), 7);
  b.insert(0, 1, 2);
  b.insert(1, 1, 2);
  b.insert(2, 1, -3);
  EXPECT_EQ(b.count(1, b.index_of(2)), 2);
  EXPECT_EQ(b.top(1), b.index_of(2));
  b.remove(0, 1);
  b.remove(1, 1);
  EXPECT_FALSE(b.contains(0, 1));
  EXPECT_EQ(b.top(1), b.index_of(-3));
  EXPECT_EQ(b.gmax_marker(1), b.index_of(-3));
  b.relocate(2, 1, 3);
  EXPECT_EQ(b.top(1), b.index_of(3));
  EXPECT_EQ(b.top(0), -1);
}

TEST(GainBuckets, MarkerIsLoweredLazily) {
  GainBuckets b(2, 2, 5);
  b.insert(0, 0, 4);
  b.insert(1, 0, -2);
  b.remove(0, 0);
  EXPECT_EQ(b.gmax_marker(0), b.index_of(4));  // still the stale upper bound
  EXPECT_EQ(b.top(0), b.index_of(-2));
  EXPECT_EQ(b.gmax_marker(0), b.index_of(-2));
}

TEST(GainBuckets, RefusesAbsurdWidth) {
  EXPECT_THROW(GainBuckets(2, 2, Weight{1} << 40), std::length_error);
}

TEST(SearchState, TriangleInitialGains) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(2, {0, 0, 1}));
  EXPECT_EQ(s.objective(), 5);
  EXPECT_EQ(s.gain(0, 1), -1);
  EXPECT_EQ(s.gain(1, 1), -2);
  EXPECT_EQ(s.gain(2, 0), -5);
  expect_coherent(s);
}

TEST(SearchState, EdgelessGainsAreZeroAndMarkersAtOffset) {
  Graph g = testing::edgeless(4);
  SearchState s(g, Partition(3, {0, 1, 2, 0}));
  for (VertexId v = 0; v < 4; ++v)
    for (SubsetId x = 0; x < 3; ++x)
      if (x != s.partition()[v]) {
        EXPECT_EQ(s.gain(v, x), 0);
      }
  for (SubsetId i = 0; i < 3; ++i) EXPECT_EQ(s.buckets().gmax_marker(i), s.buckets().offset());
  EXPECT_EQ(s.buckets().offset(), 0);
}

TEST(SearchState, TriangleAllSeparateHasNoPositiveGain) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(3, {0, 1, 2}));
  for (VertexId v = 0; v < 3; ++v)
    for (SubsetId x = 0; x < 3; ++x)
      if (x != v) {
        EXPECT_LE(s.gain(v, x), 0);
      }
  expect_coherent(s);
}

TEST(ApplySingleTransfer, TriangleMoveOfFirstVertex) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(2, {0, 0, 1}));
  s.apply_single_transfer(0, 1);
  EXPECT_EQ(s.objective(), 4);
  EXPECT_EQ(s.iteration(), 1);
  expect_coherent(s);
}

TEST(ApplySingleTransfer, RejectsNoOpAndOutOfRange) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(2, {0, 0, 1}));
  EXPECT_THROW(s.apply_single_transfer(0, 0), std::invalid_argument);
  EXPECT_THROW(s.apply_single_transfer(0, 2), std::invalid_argument);
  EXPECT_THROW(s.apply_single_transfer(3, 1), std::invalid_argument);
}

TEST(ApplySingleTransfer, MovingBackRestoresEverything) {
  Graph g = testing::random_graph(9, 0.6, -10, 10, 5);
  std::mt19937_64 rng(5);
  SearchState s(g, Partition(3, testing::random_assignment(9, 3, rng)));
  const Partition before = s.partition();
  const Weight f = s.objective();
  std::vector<Weight> gains;
  std::vector<std::int64_t> cells;
  for (VertexId v = 0; v < 9; ++v)
    for (SubsetId x = 0; x < 3; ++x) {
      gains.push_back(s.gain(v, x));
      cells.push_back(s.buckets().cell_of(v, x));
    }
  const SubsetId origin = s.partition()[4];
  s.apply_single_transfer(4, (origin + 1) % 3);
  s.apply_single_transfer(4, origin);
  EXPECT_EQ(s.partition(), before);
  EXPECT_EQ(s.objective(), f);
  std::size_t i = 0;
  for (VertexId v = 0; v < 9; ++v)
    for (SubsetId x = 0; x < 3; ++x, ++i) {
      if (x == before[v]) continue;  // undefined entry
      EXPECT_EQ(s.gain(v, x), gains[i]);
      EXPECT_EQ(s.buckets().cell_of(v, x), cells[i]);
    }
}

TEST(ApplySingleTransfer, EdgelessStaysAtZero) {
  Graph g = testing::edgeless(3);
  SearchState s(g, Partition(2, {0, 1, 0}));
  s.apply_single_transfer(1, 0);
  EXPECT_EQ(s.objective(), 0);
  expect_coherent(s);
}

TEST(ApplySingleTransferProperty, RandomWalksStayCoherentAndTelescope) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    for (SubsetId k : {2, 3, 5}) {
      Graph g = testing::random_graph(8, 0.5, -10, 10, seed * 31 + static_cast<std::uint64_t>(k));
      std::mt19937_64 rng(seed);
      SearchState s(g, Partition(k, testing::random_assignment(8, k, rng)));
      std::uniform_int_distribution<VertexId> pick_v(0, 7);
      std::uniform_int_distribution<SubsetId> pick_t(1, k - 1);
      for (int step = 0; step < 60; ++step) {
        const VertexId v = pick_v(rng);
        const SubsetId t = (s.partition()[v] + pick_t(rng)) % k;
        const Weight before = s.objective();
        const Weight gain = s.gain(v, t);
        s.apply_single_transfer(v, t);
        ASSERT_EQ(s.objective(), before + gain);
      }
      expect_coherent(s);
    }
  }
}

TEST(BestInArray, TriangleTopOfSecondArray) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(2, {0, 1, 0}));
  Rng rng(1);
  auto t = s.best_in_array(1, rng);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(*t, (Transfer{0, 1, 1}));
}

TEST(BestInArray, EmptyArrayAndFullArray) {
  Graph g = testing::triangle();
  SearchState s(g, Partition(2, {0, 0, 0}));
  Rng rng(1);
  EXPECT_FALSE(s.best_in_array(0, rng).has_value());
  ASSERT_TRUE(s.best_in_array(1, rng).has_value());
  std::set<VertexId> members;
  for (std::int64_t c = 0; c < s.buckets().cells_per_array(); ++c)
    for (VertexId v = s.buckets().head(1, c); v != GainBuckets::kNil; v = s.buckets().next(v, 1))
      members.insert(v);
  EXPECT_EQ(members, (std::set<VertexId>{0, 1, 2}));
}

TEST(BestInArray, TiesAreSplitEvenly) {
  // Centre alone in subset 1; both leaves have gain -1 toward it.
  Graph g = testing::star(2);
  SearchState s(g, Partition(2, {1, 0, 0}));
  Rng rng(99);
  std::map<VertexId, int> freq;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) freq[s.best_in_array(1, rng)->vertex]++;
  EXPECT_EQ(freq.size(), 2u);
  EXPECT_NEAR(freq[1] / double(trials), 0.5, 0.02);
  EXPECT_NEAR(freq[2] / double(trials), 0.5, 0.02);
}

TEST(BestSingleTransfer, Examples) {
  Graph g = testing::triangle();
  Rng rng(3);
  {
    SearchState s(g, Partition(2, {0, 1, 0}));
    EXPECT_EQ(s.best_single_transfer(rng), (Transfer{0, 1, 1}));
  }
  {
    SearchState s(g, Partition(2, {0, 0, 1}));
    EXPECT_EQ(s.best_single_transfer(rng), (Transfer{0, 1, -1}));
  }
  {
    Graph e = testing::edgeless(3);
    SearchState s(e, Partition(2, {0, 1, 1}));
    Transfer t = s.best_single_transfer(rng);
    EXPECT_EQ(t.gain, 0);
    EXPECT_NE(t.target, s.partition()[t.vertex]);
  }
}

TEST(BestSingleTransferProperty, MatchesBruteForceMaximum) {
  std::mt19937_64 gen(11);
  Rng rng(11);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SubsetId k = 2 + static_cast<SubsetId>(seed % 3);
    Graph g = testing::random_graph(7, 0.5, -6, 6, seed);
    auto assign = testing::random_assignment(7, k, gen);
    SearchState s(g, Partition(k, assign));
    Transfer t = s.best_single_transfer(rng);
    EXPECT_EQ(t.gain, *testing::brute_best_single(g, assign, k));
    EXPECT_EQ(t.gain, testing::brute_gain(g, assign, t.vertex, t.target));
  }
}

TEST(BestSingleTransfer, TiesAcrossArraysAreUniform) {
  // Single vertex in subset 0 on an edgeless graph: all three targets tie.
  Graph g = testing::edgeless(2);
  SearchState s(g, Partition(4, {0, 0}));
  Rng rng(5);
  std::map<std::pair<VertexId, SubsetId>, int> freq;
  const int trials = 30000;
  for (int i = 0; i < trials; ++i) {
    Transfer t = s.best_single_transfer(rng);
    freq[{t.vertex, t.target}]++;
  }
  EXPECT_EQ(freq.size(), 6u);
  for (const auto& [key, c] : freq) EXPECT_NEAR(c / double(trials), 1.0 / 6.0, 0.02);
}

}  // namespace
}  // namespace mkcut
