#include "mkcut/exact.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mkcut {

namespace {

class Enumerator {
 public:
  Enumerator(const Graph& g, SubsetId k)
      : g_(g), k_(k), n_(g.num_vertices()), assign_(static_cast<std::size_t>(n_), 0),
        best_assign_(assign_), suffix_positive_(static_cast<std::size_t>(n_) + 1, 0) {
    // suffix_positive_[i]: total positive weight of edges whose later
    // endpoint is >= i. Bounds what vertices i.. can still add to the cut.
    std::vector<Weight> positive_by_later(static_cast<std::size_t>(n_), 0);
    for (const Edge& e : g.edges())
      if (e.w > 0) positive_by_later[std::max(e.u, e.v)] += e.w;
    for (VertexId i = n_ - 1; i >= 0; --i)
      suffix_positive_[i] = suffix_positive_[i + 1] + positive_by_later[i];
  }

  void run() {
    best_ = evaluate_assignment();  // all in subset 0
    best_assign_ = assign_;
    if (n_ > 1) extend(1, 1, 0);
  }

  Weight best() const { return best_; }
  const std::vector<SubsetId>& best_assign() const { return best_assign_; }

 private:
  Weight evaluate_assignment() const {
    Weight f = 0;
    for (const Edge& e : g_.edges())
      if (assign_[e.u] != assign_[e.v]) f += e.w;
    return f;
  }

  // Places vertex i; `used` labels are in play, `cut` is the weight between
  // vertices 0..i-1.
  void extend(VertexId i, SubsetId used, Weight cut) {
    if (i == n_) {
      if (cut > best_) {
        best_ = cut;
        best_assign_ = assign_;
      }
      return;
    }
    if (cut + suffix_positive_[i] <= best_) return;
    const SubsetId limit = std::min<SubsetId>(used + 1, k_);
    for (SubsetId s = 0; s < limit; ++s) {
      assign_[i] = s;
      Weight added = 0;
      for (const Neighbor& nb : g_.neighbors(i))
        if (nb.vertex < i && assign_[nb.vertex] != s) added += nb.weight;
      extend(i + 1, std::max<SubsetId>(used, s + 1), cut + added);
    }
    assign_[i] = 0;
  }

  const Graph& g_;
  SubsetId k_;
  VertexId n_;
  std::vector<SubsetId> assign_;
  Weight best_ = 0;
  std::vector<SubsetId> best_assign_;
  std::vector<Weight> suffix_positive_;
};

}  // namespace

ExactResult exact_max_kcut(const Graph& g, SubsetId k, ExactLimits limits) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (g.num_vertices() > limits.max_vertices || k > limits.max_subsets)
    throw ExactGuardError("exact enumeration limited to n <= " + std::to_string(limits.max_vertices) +
                          " and k <= " + std::to_string(limits.max_subsets) + " (got n = " +
                          std::to_string(g.num_vertices()) + ", k = " + std::to_string(k) + ")");
  Enumerator e(g, k);
  e.run();
  return ExactResult{e.best(), Partition(k, e.best_assign())};
}

}  // namespace mkcut
