#include "mkcut/partition.hpp"

#include <stdexcept>
#include <utility>

namespace mkcut {

Partition::Partition(VertexId n, SubsetId k)
    : k_(k), assign_(static_cast<std::size_t>(n), 0), sizes_(static_cast<std::size_t>(k), 0) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  sizes_[0] = n;
}

Partition::Partition(SubsetId k, std::vector<SubsetId> assign)
    : k_(k), assign_(std::move(assign)) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  sizes_.assign(static_cast<std::size_t>(k), 0);
  for (std::size_t v = 0; v < assign_.size(); ++v) {
    if (assign_[v] < 0 || assign_[v] >= k)
      throw std::invalid_argument("subset id " + std::to_string(assign_[v]) + " of vertex " +
                                  std::to_string(v) + " outside 0.." + std::to_string(k - 1));
    ++sizes_[assign_[v]];
  }
}

Partition random_initial(const Graph& g, SubsetId k, Rng& rng) {
  const VertexId n = g.num_vertices();
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (k > n) throw std::invalid_argument("k must not exceed the number of vertices");

  std::vector<SubsetId> assign(static_cast<std::size_t>(n));
  for (auto& s : assign) s = static_cast<SubsetId>(rng.below(static_cast<std::uint64_t>(k)));
  Partition p(k, std::move(assign));

  for (SubsetId empty = 0; empty < k; ++empty) {
    if (p.size_of(empty) != 0) continue;
    // Draw donors until one comes from a subset that can spare a vertex.
    // Since k <= n such a subset exists whenever one is empty.
    while (true) {
      auto v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
      if (p.size_of(p[v]) >= 2) {
        p.move(v, empty);
        break;
      }
    }
  }
  return p;
}

Weight evaluate(const Graph& g, const Partition& p) {
  Weight f = 0;
  for (const Edge& e : g.edges())
    if (p[e.u] != p[e.v]) f += e.w;
  return f;
}

Diagnostics validate_assignment(const Graph& g, SubsetId k, std::span<const SubsetId> assign) {
  Diagnostics d;
  if (k < 1) {
    d.errors.push_back("k must be positive");
    return d;
  }
  if (static_cast<VertexId>(assign.size()) != g.num_vertices()) {
    d.errors.push_back("assignment has " + std::to_string(assign.size()) + " entries, graph has " +
                       std::to_string(g.num_vertices()) + " vertices");
    return d;
  }
  std::vector<VertexId> count(static_cast<std::size_t>(k), 0);
  for (std::size_t v = 0; v < assign.size(); ++v) {
    if (assign[v] < 0 || assign[v] >= k) {
      d.errors.push_back("vertex " + std::to_string(v + 1) + " has subset id " +
                         std::to_string(assign[v]) + " outside 0.." + std::to_string(k - 1));
      continue;
    }
    ++count[assign[v]];
  }
  if (d.ok())
    for (SubsetId s = 0; s < k; ++s)
      if (count[s] == 0) d.warnings.push_back("empty subset " + std::to_string(s));
  return d;
}

Diagnostics validate(const Graph& g, const Partition& p) {
  Diagnostics d = validate_assignment(g, p.k(), p.assignment());
  if (!d.ok()) return d;
  std::vector<VertexId> count(static_cast<std::size_t>(p.k()), 0);
  for (SubsetId s : p.assignment()) ++count[s];
  for (SubsetId s = 0; s < p.k(); ++s) {
    if (count[s] != p.size_of(s)) {
      d.errors.push_back("sizes mismatch for subset " + std::to_string(s) + ": recorded " +
                         std::to_string(p.size_of(s)) + ", counted " + std::to_string(count[s]));
    }
  }
  return d;
}

}  // namespace mkcut
