#include "mkcut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace mkcut {

Graph::Graph(VertexId n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("graph must have at least one vertex");

  std::vector<std::size_t> degree(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u + 1));
    if (e.w > kMaxAbsEdgeWeight || e.w < -kMaxAbsEdgeWeight)
      throw std::invalid_argument("edge weight magnitude too large");
    ++degree[e.u];
    ++degree[e.v];
  }

  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (VertexId v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.w};
    adjacency_[fill[e.v]++] = {e.u, e.w};
    total_weight_ += e.w;
    max_abs_edge_ = std::max(max_abs_edge_, std::abs(e.w));
  }

  for (VertexId v = 0; v < n_; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    auto dup = std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
      return a.vertex == b.vertex;
    });
    if (dup != last)
      throw std::invalid_argument("duplicate edge {" + std::to_string(v + 1) + ", " +
                                  std::to_string(dup->vertex + 1) + "}");
    Weight incident = 0;
    for (auto it = first; it != last; ++it) incident += std::abs(it->weight);
    max_abs_incident_ = std::max(max_abs_incident_, incident);
    max_degree_ = std::max(max_degree_, degree[v]);
  }
}

Weight Graph::edge_weight(VertexId u, VertexId v) const noexcept {
  auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Neighbor& a, VertexId id) { return a.vertex < id; });
  return (it != adj.end() && it->vertex == v) ? it->weight : 0;
}

namespace {

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Splits a line into whitespace-separated 64-bit integers.
std::vector<std::int64_t> integers(std::string_view line, std::size_t lineno) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    std::size_t end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    std::int64_t value = 0;
    const char* first = line.data() + pos;
    const char* last = line.data() + end;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ParseError("invalid integer '" + std::string(line.substr(pos, end - pos)) + "'", lineno);
    out.push_back(value);
    pos = end;
  }
  return out;
}

}  // namespace

Graph parse_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<VertexId, VertexId>> seen;
  std::vector<std::size_t> edge_lines;

  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto values = integers(line, lineno);
    if (!have_header) {
      if (values.size() != 2) throw ParseError("malformed header, expected \"n m\"", lineno);
      n = values[0];
      m = values[1];
      if (n < 1 || n > std::numeric_limits<VertexId>::max() - 1)
        throw ParseError("vertex count out of range", lineno);
      if (m < 0) throw ParseError("negative edge count", lineno);
      edges.reserve(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 24)));
      have_header = true;
      continue;
    }
    if (values.size() != 3) throw ParseError("malformed edge line, expected \"u v w\"", lineno);
    if (static_cast<std::int64_t>(edges.size()) == m)
      throw ParseError("edge count mismatch: header declares " + std::to_string(m) + " edges", lineno);
    for (int i = 0; i < 2; ++i)
      if (values[i] < 1 || values[i] > n) throw ParseError("vertex id out of range", lineno);
    if (values[0] == values[1]) throw ParseError("self-loop", lineno);
    if (values[2] > kMaxAbsEdgeWeight || values[2] < -kMaxAbsEdgeWeight)
      throw ParseError("edge weight magnitude too large", lineno);
    auto u = static_cast<VertexId>(values[0] - 1);
    auto v = static_cast<VertexId>(values[1] - 1);
    edges.push_back({u, v, values[2]});
    seen.emplace_back(std::min(u, v), std::max(u, v));
    edge_lines.push_back(lineno);
  }

  if (!have_header) throw ParseError("empty instance", lineno == 0 ? 1 : lineno);
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw ParseError("edge count mismatch: header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()),
                     lineno);

  // Duplicates are reported at the line of the later occurrence.
  std::vector<std::size_t> order(seen.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seen[a] < seen[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (seen[order[i]] == seen[order[i - 1]]) {
      throw ParseError("duplicate edge {" + std::to_string(seen[order[i]].first + 1) + ", " +
                           std::to_string(seen[order[i]].second + 1) + "}",
                       edge_lines[order[i]]);
    }
  }

  return Graph(static_cast<VertexId>(n), std::move(edges));
}

Graph parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Graph load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.n = g.num_vertices();
  s.m = g.num_edges();
  if (s.n >= 2)
    s.density = 2.0 * static_cast<double>(s.m) / (static_cast<double>(s.n) * (s.n - 1));
  for (const Edge& e : g.edges()) {
    s.min_weight = s.min_weight ? std::min(*s.min_weight, e.w) : e.w;
    s.max_weight = s.max_weight ? std::max(*s.max_weight, e.w) : e.w;
  }
  s.max_degree = g.max_degree();
  s.max_abs_incident_weight = g.max_abs_incident_weight();
  return s;
}

}  // namespace mkcut
