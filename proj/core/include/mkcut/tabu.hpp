#pragma once

#include <cstdint>
#include <vector>

#include "mkcut/rng.hpp"
#include "mkcut/types.hpp"

namespace mkcut {

/// Forbidden (vertex, subset) returns with per-record expiry iterations.
///
/// A record made at iteration t with tenure λ forbids the pair during
/// iterations t+1 .. t+λ inclusive: is_forbidden(v, s, i) is expiry > i.
class TabuList {
 public:
  /// Tenure is drawn uniformly from [low, max(low, high)]; when high is not
  /// given it defaults to floor(n / 10).
  TabuList(VertexId n, SubsetId k, std::int64_t tenure_low = 3, std::int64_t tenure_high = -1);

  /// Forbids v from returning to `origin`. Returns the drawn tenure.
  std::int64_t record(VertexId v, SubsetId origin, std::int64_t iter, Rng& rng);
  void record_with_tenure(VertexId v, SubsetId origin, std::int64_t iter, std::int64_t tenure);

  bool is_forbidden(VertexId v, SubsetId target, std::int64_t iter) const noexcept {
    return expiry_[slot(v, target)] > iter;
  }

  void clear();
  bool empty() const noexcept { return touched_.empty(); }

  std::int64_t tenure_low() const noexcept { return low_; }
  std::int64_t tenure_high() const noexcept { return high_; }

 private:
  std::size_t slot(VertexId v, SubsetId s) const noexcept {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(s);
  }

  SubsetId k_;
  std::int64_t low_;
  std::int64_t high_;
  std::vector<std::int64_t> expiry_;
  std::vector<std::size_t> touched_;
};

}  // namespace mkcut
