// Micro benchmarks for the hot paths of the search. Graphs mimic the sparse
// random benchmark family: 2000 vertices, about 20000 unit-weight edges.

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "mkcut/gain_buckets.hpp"
#include "mkcut/moves.hpp"
#include "mkcut/partition.hpp"
#include "mkcut/rng.hpp"
#include "mkcut/search.hpp"

namespace {

using namespace mkcut;

const Graph& sparse_graph() {
  static const Graph g = [] {
    std::mt19937_64 rng(20001);
    std::uniform_int_distribution<VertexId> pick(0, 1999);
    std::set<std::pair<VertexId, VertexId>> seen;
    std::vector<Edge> edges;
    while (edges.size() < 19990) {
      VertexId a = pick(rng), b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (seen.insert({a, b}).second) edges.push_back({a, b, 1});
    }
    return Graph(2000, std::move(edges));
  }();
  return g;
}

SearchState fresh_state(SubsetId k) {
  Rng rng(7);
  return SearchState(sparse_graph(), random_initial(sparse_graph(), k, rng));
}

// A local optimum is the typical state O2/O3/O4 see.
SearchState descended_state(SubsetId k) {
  SearchParams p;
  p.k = k;
  p.seed = 3;
  MohSearch s(sparse_graph(), p);
  s.descent_phase();
  return s.state();
}

void BM_InitState(benchmark::State& st) {
  const auto k = static_cast<SubsetId>(st.range(0));
  Rng rng(1);
  Partition p = random_initial(sparse_graph(), k, rng);
  for (auto _ : st) {
    SearchState s(sparse_graph(), p);
    benchmark::DoNotOptimize(s.objective());
  }
}
BENCHMARK(BM_InitState)->Arg(2)->Arg(4);

void BM_ApplySingleTransfer(benchmark::State& st) {
  const auto k = static_cast<SubsetId>(st.range(0));
  SearchState s = fresh_state(k);
  Rng rng(2);
  for (auto _ : st) {
    const auto v = static_cast<VertexId>(rng.below(2000));
    const auto t = static_cast<SubsetId>((s.partition()[v] + 1 + rng.below(static_cast<std::uint64_t>(k - 1))) % k);
    s.apply_single_transfer(v, t);
  }
  benchmark::DoNotOptimize(s.objective());
}
BENCHMARK(BM_ApplySingleTransfer)->Arg(2)->Arg(4);

void BM_BestSingleTransfer(benchmark::State& st) {
  SearchState s = descended_state(static_cast<SubsetId>(st.range(0)));
  Rng rng(3);
  for (auto _ : st) benchmark::DoNotOptimize(s.best_single_transfer(rng));
}
BENCHMARK(BM_BestSingleTransfer)->Arg(2)->Arg(4);

void BM_Op2Sampled(benchmark::State& st) {
  SearchState s = descended_state(static_cast<SubsetId>(st.range(0)));
  Rng rng(4);
  const double phi = 0.1 / static_cast<double>(sparse_graph().max_degree());
  for (auto _ : st) benchmark::DoNotOptimize(op2_select(s, rng, phi));
}
BENCHMARK(BM_Op2Sampled)->Arg(2)->Arg(4);

void BM_Op4(benchmark::State& st) {
  SearchState s = descended_state(static_cast<SubsetId>(st.range(0)));
  Rng rng(5);
  for (auto _ : st) benchmark::DoNotOptimize(op4_select(s, rng));
}
BENCHMARK(BM_Op4)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
