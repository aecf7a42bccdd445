#pragma once

#include <span>
#include <string>
#include <vector>

#include "mkcut/graph.hpp"
#include "mkcut/rng.hpp"
#include "mkcut/types.hpp"

namespace mkcut {

/// A k-cut: every vertex belongs to exactly one of k subsets. Subsets may be
/// empty; only random_initial() guarantees non-emptiness.
class Partition {
 public:
  /// All vertices in subset 0.
  Partition(VertexId n, SubsetId k);
  /// Throws std::invalid_argument when an entry is outside 0..k-1 or k < 1.
  Partition(SubsetId k, std::vector<SubsetId> assign);

  SubsetId k() const noexcept { return k_; }
  VertexId num_vertices() const noexcept { return static_cast<VertexId>(assign_.size()); }
  SubsetId operator[](VertexId v) const noexcept { return assign_[v]; }
  std::span<const SubsetId> assignment() const noexcept { return assign_; }
  std::span<const VertexId> sizes() const noexcept { return sizes_; }
  VertexId size_of(SubsetId s) const noexcept { return sizes_[s]; }

  /// Moves v to subset `to` and keeps sizes consistent.
  void move(VertexId v, SubsetId to) noexcept {
    --sizes_[assign_[v]];
    ++sizes_[to];
    assign_[v] = to;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  friend struct PartitionTestAccess;

  SubsetId k_;
  std::vector<SubsetId> assign_;
  std::vector<VertexId> sizes_;
};

/// Uniform random assignment followed by repair: while some subset is empty
/// a vertex is taken from a subset holding at least two vertices.
/// Throws std::invalid_argument unless 2 <= k <= n.
Partition random_initial(const Graph& g, SubsetId k, Rng& rng);

/// Total weight of edges whose endpoints lie in different subsets.
Weight evaluate(const Graph& g, const Partition& p);

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

/// Checks range and size bookkeeping. Empty subsets are reported as warnings.
Diagnostics validate(const Graph& g, const Partition& p);

/// Same checks on a raw assignment, before it is turned into a Partition.
Diagnostics validate_assignment(const Graph& g, SubsetId k, std::span<const SubsetId> assign);

}  // namespace mkcut
