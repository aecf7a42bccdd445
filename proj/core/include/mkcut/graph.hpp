#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mkcut/types.hpp"

namespace mkcut {

struct Edge {
  VertexId u;
  VertexId v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  VertexId vertex;
  Weight weight;
};

/// Raised by parse_instance; the message carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable weighted undirected graph. Vertices are 0..n-1.
///
/// Adjacency is stored in CSR form with each neighbor list sorted by vertex
/// id, so edge_weight() is a binary search. Edges keep the order and
/// orientation they were given in, which makes write_instance() reproduce
/// the parsed file.
class Graph {
 public:
  /// Throws std::invalid_argument on self-loops, duplicate pairs, ids out
  /// of range or |w| > kMaxAbsEdgeWeight.
  Graph(VertexId n, std::vector<Edge> edges);

  VertexId num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(VertexId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Weight of edge {u, v}, or 0 when the pair is not adjacent.
  Weight edge_weight(VertexId u, VertexId v) const noexcept;

  /// d: the maximum vertex degree.
  std::size_t max_degree() const noexcept { return max_degree_; }
  /// W: max over v of the sum of |w| over edges incident to v. Bounds every
  /// single-transfer gain in absolute value.
  Weight max_abs_incident_weight() const noexcept { return max_abs_incident_; }
  /// max |w| over all edges.
  Weight max_abs_edge_weight() const noexcept { return max_abs_edge_; }
  /// Sum of all edge weights.
  Weight total_weight() const noexcept { return total_weight_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  VertexId n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::size_t max_degree_ = 0;
  Weight max_abs_incident_ = 0;
  Weight max_abs_edge_ = 0;
  Weight total_weight_ = 0;
};

/// Parses the G-set edge-list format: a header "n m" followed by m lines
/// "u v w" with 1-indexed vertex ids. Blank lines are ignored.
Graph parse_instance(std::istream& in);
Graph parse_instance(std::string_view text);
Graph load_instance(const std::string& path);

/// Writes g in the same format parse_instance() reads.
void write_instance(std::ostream& out, const Graph& g);

struct GraphStats {
  VertexId n = 0;
  std::size_t m = 0;
  double density = 0.0;
  std::optional<Weight> min_weight;
  std::optional<Weight> max_weight;
  std::size_t max_degree = 0;
  Weight max_abs_incident_weight = 0;
};

GraphStats graph_stats(const Graph& g);

}  // namespace mkcut
