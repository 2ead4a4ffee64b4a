#pragma once

// Simple undirected graphs carrying a positive weight per vertex and a
// positive length per edge, plus the family constructors, minor operations
// and separator utilities built on them.
//
// Vertices are 0-based inside the library. The JSON/CLI layer converts to
// and from the 1-based ids used in files.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotdim/error.hpp"

namespace rotdim {

using Vertex = std::size_t;

/// Undirected edge in canonical form (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge together with its length, used when building a graph.
struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  double length = 1.0;
};

class Graph {
 public:
  Graph() = default;

  /// Validates simplicity and positivity. Connectivity is *not* required
  /// here so that intermediate minors can be represented; see new_graph().
  Graph(std::size_t n, std::vector<WeightedEdge> edges, std::vector<double> s)
      : n_(n), s_(std::move(s)) {
    if (s_.size() != n_) {
      throw Error(ErrorCode::LengthMismatch,
                  "vertex weight count " + std::to_string(s_.size()) +
                      " does not match n = " + std::to_string(n_));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(s_[i] > 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter,
                    "vertex weight s(" + std::to_string(i) + ") must be positive");
      }
    }
    std::vector<std::pair<Edge, double>> tmp;
    tmp.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.u >= n_ || e.v >= n_) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      }
      if (e.u == e.v) {
        throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(e.u));
      }
      if (!(e.length > 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") must have positive length");
      }
      tmp.emplace_back(Edge(e.u, e.v), e.length);
    }
    std::sort(tmp.begin(), tmp.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < tmp.size(); ++k) {
      if (tmp[k].first == tmp[k - 1].first) {
        throw Error(ErrorCode::DuplicateEdge, "(" + std::to_string(tmp[k].first.u) + "," +
                                                  std::to_string(tmp[k].first.v) + ")");
      }
    }
    edges_.reserve(tmp.size());
    l_.reserve(tmp.size());
    for (const auto& [e, len] : tmp) {
      edges_.push_back(e);
      l_.push_back(len);
    }
    adj_.assign(n_, {});
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      adj_[edges_[k].u].push_back({edges_[k].v, k});
      adj_[edges_[k].v].push_back({edges_[k].u, k});
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
  }

  struct Incidence {
    Vertex neighbor;
    std::size_t edge;
    friend auto operator<=>(const Incidence&, const Incidence&) = default;
  };

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> vertex_weights() const { return s_; }
  std::span<const double> lengths() const { return l_; }
  double s(Vertex i) const { return s_[i]; }
  double length(std::size_t edge) const { return l_[edge]; }
  std::span<const Incidence> incident(Vertex i) const { return adj_[i]; }
  std::size_t degree(Vertex i) const { return adj_[i].size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& row : adj_) d = std::max(d, row.size());
    return d;
  }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    if (a == b || a >= n_ || b >= n_) return std::nullopt;
    const Edge key(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  bool adjacent(Vertex a, Vertex b) const { return edge_index(a, b).has_value(); }

  bool is_connected() const {
    if (n_ == 0) return false;
    return component_of(0, {}).size() == n_;
  }

  /// Vertices reachable from `start` without entering `blocked`.
  std::vector<Vertex> component_of(Vertex start, const std::vector<bool>& blocked) const {
    std::vector<bool> seen(n_, false);
    std::vector<Vertex> out;
    std::queue<Vertex> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      out.push_back(x);
      for (const auto& inc : adj_[x]) {
        const Vertex y = inc.neighbor;
        if (seen[y] || (!blocked.empty() && blocked[y])) continue;
        seen[y] = true;
        q.push(y);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Edge list with lengths, in canonical order.
  std::vector<WeightedEdge> weighted_edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edges_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      out.push_back({edges_[k].u, edges_[k].v, l_[k]});
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.s_ == b.s_ && a.l_ == b.l_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> s_;
  std::vector<double> l_;
  std::vector<std::vector<Incidence>> adj_;
};

/// Validated connected graph; the entry point used by solvers and the CLI.
inline Graph new_graph(std::size_t n, std::vector<WeightedEdge> edges, std::vector<double> s) {
  if (n == 0) throw Error(ErrorCode::Disconnected, "graph has no vertices");
  Graph g(n, std::move(edges), std::move(s));
  if (!g.is_connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
  return g;
}

inline void require_connected(const Graph& g) {
  if (!g.is_connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

inline Graph complete_graph(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::ParameterOutOfRange, "complete_graph needs n >= 2");
  std::vector<WeightedEdge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return new_graph(n, std::move(edges), std::vector<double>(n, 1.0));
}

/// K_n with the edge between the last two vertices removed. Vertices
/// 0..n-3 form the shared clique of the two K_{n-1}'s.
inline Graph complete_minus_edge(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "complete_minus_edge needs n >= 3");
  std::vector<WeightedEdge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (!(i == n - 2 && j == n - 1)) edges.push_back({i, j, 1.0});
  return new_graph(n, std::move(edges), std::vector<double>(n, 1.0));
}

/// G(m,k): a clique on vertices 0..m-1 plus k pairwise non-adjacent
/// satellites m..m+k-1, each joined to every clique vertex.
inline Graph clique_sum_family(std::size_t m, std::size_t k) {
  if (m < 2 || k < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "clique_sum_family needs m >= 2, k >= 1");
  }
  std::vector<WeightedEdge> edges;
  for (Vertex i = 0; i < m; ++i)
    for (Vertex j = i + 1; j < m; ++j) edges.push_back({i, j, 1.0});
  for (Vertex t = m; t < m + k; ++t)
    for (Vertex i = 0; i < m; ++i) edges.push_back({i, t, 1.0});
  return new_graph(m + k, std::move(edges), std::vector<double>(m + k, 1.0));
}

// ---------------------------------------------------------------------------
// Minor operations. Results may be disconnected; they are validated for
// simplicity and positivity only.

inline Graph delete_edge(const Graph& g, Vertex a, Vertex b) {
  const auto idx = g.edge_index(a, b);
  if (!idx) throw Error(ErrorCode::MissingEdge, std::to_string(a) + "-" + std::to_string(b));
  std::vector<WeightedEdge> edges;
  for (const auto& e : g.weighted_edges())
    if (Edge(e.u, e.v) != Edge(a, b)) edges.push_back(e);
  return Graph(g.vertex_count(), std::move(edges),
               {g.vertex_weights().begin(), g.vertex_weights().end()});
}

/// Merges the endpoints of edge (a,b) into the smaller id; vertices above the
/// larger id shift down by one. The merged vertex weight is s(a)+s(b). When
/// both endpoints were adjacent to the same vertex, the edge incident to the
/// kept endpoint survives with its length.
inline Graph contract_edge(const Graph& g, Vertex a, Vertex b) {
  if (!g.edge_index(a, b)) {
    throw Error(ErrorCode::MissingEdge, std::to_string(a) + "-" + std::to_string(b));
  }
  const Vertex keep = std::min(a, b);
  const Vertex gone = std::max(a, b);
  auto relabel = [&](Vertex x) -> Vertex {
    if (x == gone) return keep;
    return x > gone ? x - 1 : x;
  };
  std::vector<double> s;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    if (i == gone) continue;
    s.push_back(i == keep ? g.s(a) + g.s(b) : g.s(i));
  }
  std::vector<WeightedEdge> edges;
  std::vector<Edge> present;
  auto add = [&](const WeightedEdge& e) {
    const Vertex x = relabel(e.u), y = relabel(e.v);
    if (x == y) return;
    const Edge key(x, y);
    if (std::find(present.begin(), present.end(), key) != present.end()) return;
    present.push_back(key);
    edges.push_back({key.u, key.v, e.length});
  };
  const auto all = g.weighted_edges();
  // Edges not touching the removed endpoint take precedence over its parallels.
  for (const auto& e : all)
    if (e.u != gone && e.v != gone) add(e);
  for (const auto& e : all)
    if (e.u == gone || e.v == gone) add(e);
  return Graph(g.vertex_count() - 1, std::move(edges), std::move(s));
}

inline Graph delete_isolated_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) throw Error(ErrorCode::VertexOutOfRange, std::to_string(v));
  if (g.degree(v) != 0) throw Error(ErrorCode::NotIsolated, "vertex " + std::to_string(v));
  std::vector<double> s;
  for (Vertex i = 0; i < g.vertex_count(); ++i)
    if (i != v) s.push_back(g.s(i));
  std::vector<WeightedEdge> edges;
  for (auto e : g.weighted_edges()) {
    if (e.u > v) --e.u;
    if (e.v > v) --e.v;
    edges.push_back(e);
  }
  return Graph(g.vertex_count() - 1, std::move(edges), std::move(s));
}

// ---------------------------------------------------------------------------

struct Separator {
  std::vector<Vertex> vertices;                 // sorted
  std::vector<std::vector<Vertex>> components;  // ordered by smallest member
};

inline Separator components_after_removal(const Graph& g, std::vector<Vertex> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::vector<bool> blocked(g.vertex_count(), false);
  for (Vertex x : S) {
    if (x >= g.vertex_count()) throw Error(ErrorCode::VertexOutOfRange, std::to_string(x));
    blocked[x] = true;
  }
  Separator sep{S, {}};
  std::vector<bool> seen = blocked;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    if (seen[i]) continue;
    auto comp = g.component_of(i, blocked);
    for (Vertex x : comp) seen[x] = true;
    sep.components.push_back(std::move(comp));
  }
  if (sep.components.size() < 2) {
    throw Error(ErrorCode::NotASeparator, "removing the set leaves " +
                                              std::to_string(sep.components.size()) +
                                              " component(s)");
  }
  return sep;
}

}  // namespace rotdim
