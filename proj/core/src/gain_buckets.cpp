#include "mkcut/gain_buckets.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mkcut {

namespace {
constexpr std::int64_t kMaxCells = std::int64_t{1} << 28;
}

GainBuckets::GainBuckets(VertexId n, SubsetId k, Weight offset)
    : n_(n), k_(k), offset_(offset), width_(2 * offset + 1) {
  if (k < 1 || n < 0 || offset < 0) throw std::invalid_argument("invalid bucket dimensions");
  if (width_ > kMaxCells / k)
    throw std::length_error("gain range too wide for bucket arrays (" + std::to_string(k) + " x " +
                            std::to_string(width_) + " cells)");
  heads_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(width_), kNil);
  counts_.assign(heads_.size(), 0);
  const std::size_t slots = static_cast<std::size_t>(n) * static_cast<std::size_t>(k);
  next_.assign(slots, kNil);
  prev_.assign(slots, kNil);
  cell_.assign(slots, kAbsent);
  gmax_.assign(static_cast<std::size_t>(k), kAbsent);
}

void GainBuckets::link(VertexId v, SubsetId i, std::int64_t cell) {
  const std::size_t s = slot(v, i);
  const std::size_t h = flat(i, cell);
  VertexId old_head = heads_[h];
  next_[s] = old_head;
  prev_[s] = kNil;
  if (old_head != kNil) prev_[slot(old_head, i)] = v;
  heads_[h] = v;
  ++counts_[h];
  cell_[s] = cell;
  if (cell > gmax_[i]) gmax_[i] = cell;
}

void GainBuckets::unlink(VertexId v, SubsetId i) {
  const std::size_t s = slot(v, i);
  const std::size_t h = flat(i, cell_[s]);
  VertexId p = prev_[s];
  VertexId nx = next_[s];
  if (p != kNil) next_[slot(p, i)] = nx; else heads_[h] = nx;
  if (nx != kNil) prev_[slot(nx, i)] = p;
  --counts_[h];
  next_[s] = prev_[s] = kNil;
  cell_[s] = kAbsent;
}

void GainBuckets::insert(VertexId v, SubsetId i, Weight gain) { link(v, i, index_of(gain)); }

void GainBuckets::remove(VertexId v, SubsetId i) { unlink(v, i); }

void GainBuckets::relocate(VertexId v, SubsetId i, Weight gain) {
  const std::int64_t cell = index_of(gain);
  if (cell_[slot(v, i)] == cell) return;
  unlink(v, i);
  link(v, i, cell);
}

std::int64_t GainBuckets::top(SubsetId i) {
  std::int64_t g = gmax_[i];
  while (g >= 0 && heads_[flat(i, g)] == kNil) --g;
  gmax_[i] = g;
  return g;
}

VertexId GainBuckets::pick(SubsetId i, std::int64_t cell, Rng& rng) const {
  auto steps = rng.below(static_cast<std::uint64_t>(counts_[flat(i, cell)]));
  VertexId v = heads_[flat(i, cell)];
  while (steps-- > 0) v = next_[slot(v, i)];
  return v;
}

SearchState::SearchState(const Graph& g, Partition p)
    : graph_(&g),
      partition_(std::move(p)),
      delta_(static_cast<std::size_t>(g.num_vertices()) * static_cast<std::size_t>(partition_.k()), 0),
      buckets_(g.num_vertices(), partition_.k(), g.max_abs_incident_weight()) {
  if (partition_.num_vertices() != g.num_vertices())
    throw std::invalid_argument("partition size does not match graph");
  const SubsetId k = partition_.k();
  const VertexId n = g.num_vertices();

  // Gain of v -> x is (weight to own subset) - (weight to subset x).
  std::vector<Weight> to_subset(static_cast<std::size_t>(k));
  for (VertexId v = 0; v < n; ++v) {
    std::fill(to_subset.begin(), to_subset.end(), 0);
    for (const Neighbor& nb : g.neighbors(v)) to_subset[partition_[nb.vertex]] += nb.weight;
    const SubsetId own = partition_[v];
    for (SubsetId x = 0; x < k; ++x) {
      if (x == own) continue;
      gain_ref(v, x) = to_subset[own] - to_subset[x];
      buckets_.insert(v, x, gain(v, x));
    }
  }
  f_ = evaluate(g, partition_);
}

void SearchState::apply_single_transfer(VertexId v, SubsetId t) {
  const SubsetId k = this->k();
  if (v < 0 || v >= partition_.num_vertices()) throw std::invalid_argument("vertex out of range");
  if (t < 0 || t >= k) throw std::invalid_argument("target subset out of range");
  const SubsetId c = partition_[v];
  if (t == c) throw std::invalid_argument("target subset equals current subset");

  const Weight g = gain(v, t);

  // Moved vertex: the gain back to c is the negated gain just realized, the
  // gain to every third subset shifts by -g.
  buckets_.remove(v, t);
  gain_ref(v, t) = 0;
  for (SubsetId x = 0; x < k; ++x) {
    if (x == c || x == t) continue;
    set_gain(v, x, gain(v, x) - g);
  }
  gain_ref(v, c) = -g;
  buckets_.insert(v, c, -g);

  // Neighbors: delta(u -> y) += w * (-[cu == c] + [cu == t] - [y == t] + [y == c]).
  for (const Neighbor& nb : graph_->neighbors(v)) {
    const VertexId u = nb.vertex;
    const Weight w = nb.weight;
    if (w == 0) continue;
    const SubsetId cu = partition_[u];
    if (cu == c) {
      for (SubsetId y = 0; y < k; ++y) {
        if (y == c) continue;
        set_gain(u, y, gain(u, y) - (y == t ? 2 * w : w));
      }
    } else if (cu == t) {
      for (SubsetId y = 0; y < k; ++y) {
        if (y == t) continue;
        set_gain(u, y, gain(u, y) + (y == c ? 2 * w : w));
      }
    } else {
      set_gain(u, t, gain(u, t) - w);
      set_gain(u, c, gain(u, c) + w);
    }
  }

  partition_.move(v, t);
  f_ += g;
  ++iter_;
}

std::optional<Transfer> SearchState::best_in_array(SubsetId i, Rng& rng) {
  const std::int64_t top = buckets_.top(i);
  if (top == GainBuckets::kAbsent) return std::nullopt;
  return Transfer{buckets_.pick(i, top, rng), i, buckets_.gain_at(top)};
}

Transfer SearchState::best_single_transfer(Rng& rng) {
  const SubsetId k = this->k();
  std::int64_t best = GainBuckets::kAbsent;
  SubsetId chosen = -1;
  std::uint64_t ties = 0;
  // Single pass reservoir over arrays sharing the maximum top cell.
  for (SubsetId i = 0; i < k; ++i) {
    const std::int64_t top = buckets_.top(i);
    if (top == GainBuckets::kAbsent) continue;
    if (top > best) {
      best = top;
      chosen = i;
      ties = 1;
    } else if (top == best && rng.below(++ties) == 0) {
      chosen = i;
    }
  }
  if (chosen < 0) throw std::logic_error("no single transfer exists (k < 2?)");
  return Transfer{buckets_.pick(chosen, best, rng), chosen, buckets_.gain_at(best)};
}

std::vector<std::string> SearchState::audit() const {
  std::vector<std::string> problems;
  const Graph& g = *graph_;
  const SubsetId k = this->k();
  const VertexId n = g.num_vertices();
  auto where = [](VertexId v, SubsetId x) {
    return "(" + std::to_string(v) + " -> " + std::to_string(x) + ")";
  };

  if (Weight f = evaluate(g, partition_); f != f_)
    problems.push_back("objective " + std::to_string(f_) + " != recomputed " + std::to_string(f));

  std::vector<Weight> to_subset(static_cast<std::size_t>(k));
  for (VertexId v = 0; v < n; ++v) {
    std::fill(to_subset.begin(), to_subset.end(), 0);
    for (const Neighbor& nb : g.neighbors(v)) to_subset[partition_[nb.vertex]] += nb.weight;
    const SubsetId own = partition_[v];
    for (SubsetId x = 0; x < k; ++x) {
      if (x == own) {
        if (buckets_.contains(v, x)) problems.push_back("member node present " + where(v, x));
        continue;
      }
      const Weight expect = to_subset[own] - to_subset[x];
      if (gain(v, x) != expect)
        problems.push_back("gain " + where(v, x) + " = " + std::to_string(gain(v, x)) +
                           ", expected " + std::to_string(expect));
      if (!buckets_.contains(v, x))
        problems.push_back("missing node " + where(v, x));
      else if (buckets_.cell_of(v, x) != buckets_.index_of(gain(v, x)))
        problems.push_back("node " + where(v, x) + " in cell " + std::to_string(buckets_.cell_of(v, x)) +
                           ", expected " + std::to_string(buckets_.index_of(gain(v, x))));
    }
  }

  for (SubsetId i = 0; i < k; ++i) {
    std::int64_t reached = 0;
    std::int64_t highest = GainBuckets::kAbsent;
    for (std::int64_t cell = 0; cell < buckets_.cells_per_array(); ++cell) {
      std::int32_t len = 0;
      VertexId prev = GainBuckets::kNil;
      for (VertexId v = buckets_.head(i, cell); v != GainBuckets::kNil; v = buckets_.next(v, i)) {
        if (buckets_.prev(v, i) != prev) problems.push_back("broken back link at " + where(v, i));
        if (buckets_.cell_of(v, i) != cell) problems.push_back("node " + where(v, i) + " listed in wrong cell");
        prev = v;
        if (++len > n) {
          problems.push_back("cycle in array " + std::to_string(i));
          break;
        }
      }
      if (len != buckets_.count(i, cell))
        problems.push_back("cell count mismatch in array " + std::to_string(i));
      if (len > 0) highest = cell;
      reached += len;
    }
    if (reached != n - partition_.size_of(i))
      problems.push_back("array " + std::to_string(i) + " holds " + std::to_string(reached) +
                         " nodes, expected " + std::to_string(n - partition_.size_of(i)));
    if (buckets_.gmax_marker(i) < highest)
      problems.push_back("gmax of array " + std::to_string(i) + " below highest non-empty cell");
  }
  return problems;
}

}  // namespace mkcut
