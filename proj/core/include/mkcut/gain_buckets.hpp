#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mkcut/graph.hpp"
#include "mkcut/partition.hpp"
#include "mkcut/rng.hpp"
#include "mkcut/types.hpp"

namespace mkcut {

/// k bucket arrays B_0..B_{k-1}. Cell j of B_i holds, as a doubly linked
/// list, the vertices whose gain for moving into subset i equals j - offset.
///
/// Node (v, i) exists exactly when v is not in subset i. Nodes live in flat
/// per-(vertex, array) slots, so the slot index doubles as the position
/// index: cell_of(v, i) is a direct handle, with kAbsent meaning "v is a
/// member of subset i".
///
/// The per-array gmax marker is a lazy upper bound: raised on insertion,
/// lowered only by top().
class GainBuckets {
 public:
  static constexpr std::int64_t kAbsent = -1;
  static constexpr VertexId kNil = -1;

  /// Throws std::length_error when k * (2 * offset + 1) cells are too many.
  GainBuckets(VertexId n, SubsetId k, Weight offset);

  void insert(VertexId v, SubsetId i, Weight gain);
  void remove(VertexId v, SubsetId i);
  /// Relinks an existing node under a new gain.
  void relocate(VertexId v, SubsetId i, Weight gain);

  bool contains(VertexId v, SubsetId i) const noexcept { return cell_[slot(v, i)] != kAbsent; }
  std::int64_t cell_of(VertexId v, SubsetId i) const noexcept { return cell_[slot(v, i)]; }

  /// Highest non-empty cell of B_i, or kAbsent when B_i is empty. Lowers
  /// gmax_i to the returned value.
  std::int64_t top(SubsetId i);
  std::int64_t gmax_marker(SubsetId i) const noexcept { return gmax_[i]; }

  VertexId head(SubsetId i, std::int64_t cell) const noexcept { return heads_[flat(i, cell)]; }
  VertexId next(VertexId v, SubsetId i) const noexcept { return next_[slot(v, i)]; }
  VertexId prev(VertexId v, SubsetId i) const noexcept { return prev_[slot(v, i)]; }
  std::int32_t count(SubsetId i, std::int64_t cell) const noexcept { return counts_[flat(i, cell)]; }

  /// Uniformly random member of a non-empty cell.
  VertexId pick(SubsetId i, std::int64_t cell, Rng& rng) const;

  Weight offset() const noexcept { return offset_; }
  std::int64_t cells_per_array() const noexcept { return width_; }
  SubsetId k() const noexcept { return k_; }
  VertexId num_vertices() const noexcept { return n_; }

  std::int64_t index_of(Weight gain) const noexcept { return gain + offset_; }
  Weight gain_at(std::int64_t cell) const noexcept { return cell - offset_; }

 private:
  std::size_t slot(VertexId v, SubsetId i) const noexcept {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i);
  }
  std::size_t flat(SubsetId i, std::int64_t cell) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(cell);
  }
  void link(VertexId v, SubsetId i, std::int64_t cell);
  void unlink(VertexId v, SubsetId i);

  VertexId n_;
  SubsetId k_;
  Weight offset_;
  std::int64_t width_;
  std::vector<VertexId> heads_;
  std::vector<std::int32_t> counts_;
  std::vector<VertexId> next_;
  std::vector<VertexId> prev_;
  std::vector<std::int64_t> cell_;
  std::vector<std::int64_t> gmax_;
};

struct Transfer {
  VertexId vertex;
  SubsetId target;
  Weight gain;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

/// Incumbent solution with its objective, the full single-transfer gain
/// table and the bucket arrays, kept mutually coherent.
class SearchState {
 public:
  /// Computes every gain from scratch and fills the buckets. The graph must
  /// outlive the state.
  SearchState(const Graph& g, Partition p);

  const Graph& graph() const noexcept { return *graph_; }
  const Partition& partition() const noexcept { return partition_; }
  SubsetId k() const noexcept { return partition_.k(); }
  Weight objective() const noexcept { return f_; }
  std::int64_t iteration() const noexcept { return iter_; }

  /// Gain of moving v into subset x; meaningful only for x != partition()[v].
  Weight gain(VertexId v, SubsetId x) const noexcept {
    return delta_[static_cast<std::size_t>(v) * static_cast<std::size_t>(k()) + static_cast<std::size_t>(x)];
  }

  /// Moves v into t and updates f, the gains of v and its neighbors, and the
  /// affected bucket nodes. Throws std::invalid_argument if t is v's subset
  /// or out of range.
  void apply_single_transfer(VertexId v, SubsetId t);

  /// Uniformly random vertex from the top cell of B_i, or nothing when every
  /// vertex is in subset i.
  std::optional<Transfer> best_in_array(SubsetId i, Rng& rng);

  /// A maximum-gain single transfer over all (v, t != subset of v). Ties:
  /// uniform over the arrays attaining the maximum, then uniform within the
  /// cell. Requires k >= 2.
  Transfer best_single_transfer(Rng& rng);

  GainBuckets& buckets() noexcept { return buckets_; }
  const GainBuckets& buckets() const noexcept { return buckets_; }

  /// Full consistency check of objective, gain table and bucket structure
  /// against the partition. Returns one message per violation. O(nk + m).
  std::vector<std::string> audit() const;

 private:
  Weight& gain_ref(VertexId v, SubsetId x) noexcept {
    return delta_[static_cast<std::size_t>(v) * static_cast<std::size_t>(k()) + static_cast<std::size_t>(x)];
  }
  void set_gain(VertexId v, SubsetId x, Weight value) {
    gain_ref(v, x) = value;
    buckets_.relocate(v, x, value);
  }

  const Graph* graph_;
  Partition partition_;
  Weight f_ = 0;
  std::int64_t iter_ = 0;
  std::vector<Weight> delta_;
  GainBuckets buckets_;
};

}  // namespace mkcut
