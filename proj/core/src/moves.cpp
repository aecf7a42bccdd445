#include "mkcut/moves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace mkcut {

int psi(SubsetId cu, SubsetId cv, SubsetId tu, SubsetId tv) {
  if (tu == cu || tv == cv) throw std::invalid_argument("psi: target equals origin");
  return -int{cu == cv} + int{tu == cv} - int{tu == tv} + int{cu == tv};
}

Weight combined_gain(const SearchState& s, VertexId u, SubsetId tu, VertexId v, SubsetId tv) {
  if (u == v) throw std::invalid_argument("double transfer needs two distinct vertices");
  const Partition& p = s.partition();
  const int coefficient = psi(p[u], p[v], tu, tv);
  return s.gain(u, tu) + s.gain(v, tv) + coefficient * s.graph().edge_weight(u, v);
}

void apply_move(SearchState& s, const Move& m) {
  s.apply_single_transfer(m.first.vertex, m.first.target);
  if (m.second) s.apply_single_transfer(m.second->vertex, m.second->target);
}

namespace {

Move single(const SearchState& s, const Transfer& t) {
  return Move{{t.vertex, s.partition()[t.vertex], t.target}, std::nullopt, t.gain};
}

// Uniform choice among equally good candidates seen one at a time, where a
// candidate may stand for `weight` equally good options.
template <typename T>
class TieBreaker {
 public:
  explicit TieBreaker(Rng& rng) : rng_(rng) {}

  void offer(Weight value, std::uint64_t weight, const T& item) {
    if (weight == 0) return;
    if (!seen_ || value > best_) {
      seen_ = true;
      best_ = value;
      total_ = weight;
      item_ = item;
    } else if (value == best_) {
      total_ += weight;
      if (rng_.below(total_) < weight) item_ = item;
    }
  }

  bool empty() const { return !seen_; }
  Weight best() const { return best_; }
  const T& item() const { return item_; }

 private:
  Rng& rng_;
  bool seen_ = false;
  Weight best_ = 0;
  std::uint64_t total_ = 0;
  T item_{};
};

}  // namespace

std::optional<Move> op1_select(SearchState& s, Rng& rng) {
  Transfer t = s.best_single_transfer(rng);
  if (t.gain <= 0) return std::nullopt;
  return single(s, t);
}

std::optional<Move> op2_select(const SearchState& s, Rng& rng, double phi) {
  const Graph& g = s.graph();
  const Partition& p = s.partition();
  const SubsetId k = s.k();
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  if (m == 0) return std::nullopt;

  std::vector<std::size_t> scan;
  const double wanted = std::ceil(phi * static_cast<double>(m));
  if (phi > 0.0 && wanted < static_cast<double>(m)) {
    // Floyd's sampling of a uniform subset of edge indices.
    const auto sample = static_cast<std::size_t>(std::max(1.0, wanted));
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(sample * 2);
    for (std::size_t j = m - sample; j < m; ++j) {
      auto t = static_cast<std::size_t>(rng.below(j + 1));
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    scan.assign(chosen.begin(), chosen.end());
    std::sort(scan.begin(), scan.end());
  } else {
    scan.resize(m);
    for (std::size_t i = 0; i < m; ++i) scan[i] = i;
  }

  TieBreaker<Move> pick(rng);
  for (std::size_t idx : scan) {
    const Edge& e = edges[idx];
    if (e.w == 0) continue;
    const SubsetId cu = p[e.u];
    const SubsetId cv = p[e.v];
    for (SubsetId tu = 0; tu < k; ++tu) {
      if (tu == cu) continue;
      for (SubsetId tv = 0; tv < k; ++tv) {
        if (tv == cv) continue;
        const Weight gain = s.gain(e.u, tu) + s.gain(e.v, tv) + psi(cu, cv, tu, tv) * e.w;
        if (gain <= 0) continue;
        pick.offer(gain, 1, Move{{e.u, cu, tu}, TransferStep{e.v, cv, tv}, gain});
      }
    }
  }
  if (pick.empty()) return std::nullopt;
  return pick.item();
}

Move op3_select(SearchState& s, const TabuList& tabu, Weight f_best, Rng& rng) {
  GainBuckets& b = s.buckets();
  const SubsetId k = s.k();
  const std::int64_t iter = s.iteration();
  const Weight f = s.objective();

  std::int64_t best_cell = GainBuckets::kAbsent;
  std::optional<Transfer> chosen;
  std::uint64_t tied_arrays = 0;

  for (SubsetId i = 0; i < k; ++i) {
    // Highest cell of B_i holding an admissible node, with a uniform pick
    // among that cell's admissible nodes.
    for (std::int64_t cell = b.top(i); cell > GainBuckets::kAbsent && cell >= best_cell; --cell) {
      if (b.count(i, cell) == 0) continue;
      const Weight gain = b.gain_at(cell);
      VertexId found = GainBuckets::kNil;
      if (f + gain > f_best) {
        found = b.pick(i, cell, rng);
      } else {
        std::uint64_t admissible = 0;
        for (VertexId v = b.head(i, cell); v != GainBuckets::kNil; v = b.next(v, i))
          if (!tabu.is_forbidden(v, i, iter) && rng.below(++admissible) == 0) found = v;
      }
      if (found == GainBuckets::kNil) continue;
      if (cell > best_cell) {
        best_cell = cell;
        tied_arrays = 1;
        chosen = Transfer{found, i, gain};
      } else if (rng.below(++tied_arrays) == 0) {
        chosen = Transfer{found, i, gain};
      }
      break;
    }
  }

  if (!chosen) return single(s, s.best_single_transfer(rng));
  return single(s, *chosen);
}

std::optional<Move> op4_select(SearchState& s, Rng& rng) {
  const SubsetId k = s.k();
  if (k < 2) return std::nullopt;
  const auto p = static_cast<SubsetId>(rng.below(static_cast<std::uint64_t>(k)));
  auto q = static_cast<SubsetId>(rng.below(static_cast<std::uint64_t>(k - 1)));
  if (q >= p) ++q;
  return op4_select_for(s, p, q, rng);
}

std::optional<Move> op4_select_for(SearchState& s, SubsetId p, SubsetId q, Rng& rng) {
  if (p == q) throw std::invalid_argument("O4 target subsets must differ");
  GainBuckets& b = s.buckets();
  const Graph& g = s.graph();
  const Partition& part = s.partition();
  const std::int64_t top_p = b.top(p);
  const std::int64_t top_q = b.top(q);
  if (top_p == GainBuckets::kAbsent || top_q == GainBuckets::kAbsent) return std::nullopt;
  const Weight interaction_bound = 2 * g.max_abs_edge_weight();

  // A candidate is either a concrete pair (u, v) or "u paired with any
  // non-neighbor of u in cell `cell` of B_q", which stands for `weight`
  // equally good pairs resolved at the end.
  struct Choice {
    VertexId u = GainBuckets::kNil;
    VertexId v = GainBuckets::kNil;
    std::int64_t cell = GainBuckets::kAbsent;
  };
  TieBreaker<Choice> pick(rng);

  // Nodes of cell `cell` in B_q that cannot be u's non-adjacent partner:
  // u itself and its neighbors through non-zero weight.
  auto count_excluded = [&](VertexId u, std::int64_t cell) {
    std::int32_t excluded = b.cell_of(u, q) == cell ? 1 : 0;
    for (const Neighbor& nb : g.neighbors(u))
      if (nb.weight != 0 && b.cell_of(nb.vertex, q) == cell) ++excluded;
    return excluded;
  };

  for (std::int64_t cell_u = top_p; cell_u >= 0; --cell_u) {
    if (b.count(p, cell_u) == 0) continue;
    const Weight gain_u = b.gain_at(cell_u);
    if (!pick.empty() && gain_u + b.gain_at(top_q) + interaction_bound < pick.best()) break;

    for (VertexId u = b.head(p, cell_u); u != GainBuckets::kNil; u = b.next(u, p)) {
      // Best non-adjacent partner level.
      for (std::int64_t cell_v = top_q; cell_v >= 0; --cell_v) {
        if (!pick.empty() && gain_u + b.gain_at(cell_v) < pick.best()) break;
        const std::int32_t in_cell = b.count(q, cell_v);
        if (in_cell == 0) continue;
        const std::int32_t available = in_cell - count_excluded(u, cell_v);
        if (available > 0) {
          pick.offer(gain_u + b.gain_at(cell_v), static_cast<std::uint64_t>(available),
                     Choice{u, GainBuckets::kNil, cell_v});
          break;
        }
      }

      // Adjacent partners carry the interaction term.
      const SubsetId cu = part[u];
      for (const Neighbor& nb : g.neighbors(u)) {
        const VertexId v = nb.vertex;
        if (nb.weight == 0 || !b.contains(v, q)) continue;
        const Weight gain = gain_u + s.gain(v, q) + psi(cu, part[v], p, q) * nb.weight;
        pick.offer(gain, 1, Choice{u, v, GainBuckets::kAbsent});
      }
    }
  }

  if (pick.empty()) return std::nullopt;
  Choice c = pick.item();
  if (c.v == GainBuckets::kNil) {
    // Uniform non-neighbor of u in the chosen cell.
    auto adjacent = [&](VertexId v) { return v == c.u || g.edge_weight(c.u, v) != 0; };
    std::uint64_t seen = 0;
    for (VertexId v = b.head(q, c.cell); v != GainBuckets::kNil; v = b.next(v, q))
      if (!adjacent(v) && rng.below(++seen) == 0) c.v = v;
  }
  return Move{{c.u, part[c.u], p}, TransferStep{c.v, part[c.v], q}, pick.best()};
}

Transfer op5_apply(SearchState& s, Rng& rng) {
  const VertexId n = s.graph().num_vertices();
  const SubsetId k = s.k();
  const auto v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
  auto t = static_cast<SubsetId>(rng.below(static_cast<std::uint64_t>(k - 1)));
  if (t >= s.partition()[v]) ++t;
  const Weight gain = s.gain(v, t);
  s.apply_single_transfer(v, t);
  return Transfer{v, t, gain};
}

}  // namespace mkcut
