#pragma once

// Closed-form optimal weights and embeddings for complete graphs, complete
// graphs minus an edge, and the clique-sum family G(m,k); plus the clique
// number, chordality and the rotational-dimension bounds derived from them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotdim/embedding.hpp"
#include "rotdim/error.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/spectral.hpp"

namespace rotdim {

/// m points with pairwise distance 1 and barycenter at the origin, in
/// dimension max(1, m-1). Each new point is raised over the centroid of the
/// previous ones along a fresh axis.
inline std::vector<Vector> regular_simplex(std::size_t m) {
  if (m < 1) throw Error(ErrorCode::ParameterOutOfRange, "regular_simplex needs m >= 1");
  if (m == 1) return {Vector{0.0}};
  std::vector<Vector> pts{Vector{-0.5}, Vector{0.5}};
  for (std::size_t count = 3; count <= m; ++count) {
    // Previous points: count-1 of them, circumradius R, centered at 0.
    const double prev = static_cast<double>(count - 1);
    const double circum_sq = (prev - 1.0) / (2.0 * prev);
    const double height = std::sqrt(1.0 - circum_sq);
    const double shift = height / static_cast<double>(count);
    for (auto& p : pts) p.push_back(-shift);
    Vector apex(pts.front().size(), 0.0);
    apex.back() = height - shift;
    pts.push_back(std::move(apex));
  }
  return pts;
}

struct AnalyticSolution {
  Graph graph;
  EdgeWeightVector w;
  double lambda1 = 0.0;
  Embedding embedding;
  std::size_t claimed_dim = 0;
  std::optional<std::size_t> rotdim_claim;
};

namespace detail {

inline Embedding pad_embedding(std::vector<Vector> coords) {
  std::size_t dim = 1;
  for (const auto& c : coords) dim = std::max(dim, c.size());
  for (auto& c : coords) c.resize(dim, 0.0);
  return Embedding{dim, std::move(coords)};
}

/// Weights a on clique-clique edges (both ends < m) and b on the others.
inline EdgeWeightVector two_level_weights(const Graph& g, std::size_t m, double a, double b) {
  Vector w(g.edge_count());
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) w[e] = (edges[e].v < m) ? a : b;
  return EdgeWeightVector(std::move(w));
}

}  // namespace detail

inline AnalyticSolution analytic_complete(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::ParameterOutOfRange, "analytic_complete needs n >= 2");
  AnalyticSolution sol;
  sol.graph = complete_graph(n);
  const double nn = static_cast<double>(n);
  sol.w = EdgeWeightVector(Vector(sol.graph.edge_count(), 2.0 / (nn * (nn - 1.0))));
  sol.lambda1 = 2.0 / (nn - 1.0);
  sol.embedding = detail::pad_embedding(regular_simplex(n));
  sol.claimed_dim = n - 1;
  sol.rotdim_claim = n - 1;
  return sol;
}

/// K_n minus an edge with m = n-2: the clique 0..m-1 forms a unit simplex
/// and the two remaining vertices sit at +-r on an orthogonal axis.
inline AnalyticSolution analytic_kn_minus_edge(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "analytic_kn_minus_edge needs n >= 3");
  const std::size_t m = n - 2;
  const double md = static_cast<double>(m);
  const double denom = md * md + md + 2.0;
  AnalyticSolution sol;
  sol.graph = complete_minus_edge(n);
  // With m = 1 there are no clique edges and the formula for a is unused.
  const double a = m >= 2 ? 2.0 * (md - 2.0) / (md * denom) : 0.0;
  const double b = 2.0 / denom;
  sol.w = detail::two_level_weights(sol.graph, m, a, b);
  sol.lambda1 = 2.0 * md / denom;

  auto coords = regular_simplex(m);
  const double r = std::sqrt((md + 1.0) / (2.0 * md));
  for (auto& c : coords) c.push_back(0.0);
  Vector up(coords.front().size(), 0.0), down(coords.front().size(), 0.0);
  up.back() = r;
  down.back() = -r;
  coords.push_back(std::move(up));
  coords.push_back(std::move(down));
  sol.embedding = detail::pad_embedding(std::move(coords));
  sol.claimed_dim = n - 2;
  sol.rotdim_claim = n - 2;
  return sol;
}

/// G(2,3): the clique edge gets zero weight and collapses to the origin;
/// the three satellites sit on the unit circle.
inline AnalyticSolution analytic_g23_remark() {
  AnalyticSolution sol;
  sol.graph = clique_sum_family(2, 3);
  sol.w = detail::two_level_weights(sol.graph, 2, 0.0, 1.0 / 6.0);
  sol.lambda1 = 1.0 / 3.0;
  std::vector<Vector> coords{{0.0, 0.0}, {0.0, 0.0}};
  for (int i = 1; i <= 3; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 3.0;
    coords.push_back({std::cos(angle), std::sin(angle)});
  }
  sol.embedding = detail::pad_embedding(std::move(coords));
  sol.claimed_dim = 2;
  return sol;
}

/// G(m,k) for m > k >= 2 (k = 1 is K_{m+1}; (2,3) is the zero-weight case).
/// The satellites lie on a circle of radius r orthogonal to the clique's
/// simplex: antipodal pairs for even k, one point plus mirrored pairs at
/// x = -r/(k-1) for odd k. Even k spans m dimensions, odd k spans m+1.
inline AnalyticSolution analytic_gmk(std::size_t m, std::size_t k) {
  if (k == 1 && m >= 1) return analytic_complete(m + 1);
  if (m == 2 && k == 3) return analytic_g23_remark();
  if (k < 1 || m <= k) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "analytic_gmk needs m > k >= 2 (got m=" + std::to_string(m) +
                    ", k=" + std::to_string(k) + ")");
  }
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double denom = md * md + (kd - 1.0) * md + kd;
  AnalyticSolution sol;
  sol.graph = clique_sum_family(m, k);
  sol.w = detail::two_level_weights(sol.graph, m, 2.0 * (md - kd) / (md * denom), 2.0 / denom);
  sol.lambda1 = 2.0 * md / denom;

  auto coords = regular_simplex(m);
  const std::size_t simplex_dim = coords.front().size();
  const std::size_t extra = (k % 2 == 0) ? 1 : 2;
  for (auto& c : coords) c.resize(simplex_dim + extra, 0.0);
  const double r = std::sqrt((md + 1.0) / (2.0 * md));
  auto satellite = [&](double x, double y) {
    Vector p(simplex_dim + extra, 0.0);
    p[simplex_dim] = x;
    if (extra == 2) p[simplex_dim + 1] = y;
    return p;
  };
  if (k % 2 == 0) {
    for (std::size_t i = 1; i <= k; ++i) coords.push_back(satellite(i % 2 == 1 ? r : -r, 0.0));
  } else {
    coords.push_back(satellite(r, 0.0));
    const double x = -r / (kd - 1.0);
    const double y = std::sqrt(r * r - x * x);
    for (std::size_t i = 1; i + 1 <= k; ++i) coords.push_back(satellite(x, i % 2 == 1 ? y : -y));
  }
  sol.embedding = detail::pad_embedding(std::move(coords));
  sol.claimed_dim = (k % 2 == 0) ? m : m + 1;
  if (k >= 3 && m >= 4) sol.rotdim_claim = m + 1;
  if (k == 2) sol.rotdim_claim = m;
  return sol;
}

// ---------------------------------------------------------------------------
// Invariants.

inline constexpr std::size_t kCliqueVertexCap = 60;

namespace detail {

using Mask = std::uint64_t;

inline void bron_kerbosch(const std::vector<Mask>& nbr, Mask R, Mask P, Mask X, std::size_t& best) {
  if (P == 0 && X == 0) {
    best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(R)));
    return;
  }
  if (static_cast<std::size_t>(std::popcount(R) + std::popcount(P)) <= best) return;
  // Pivot on the vertex of P|X with the most neighbours in P.
  const Mask PX = P | X;
  std::size_t pivot = 0;
  int most = -1;
  for (Mask rest = PX; rest; rest &= rest - 1) {
    const auto u = static_cast<std::size_t>(std::countr_zero(rest));
    const int c = std::popcount(P & nbr[u]);
    if (c > most) {
      most = c;
      pivot = u;
    }
  }
  for (Mask cand = P & ~nbr[pivot]; cand; cand &= cand - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(cand));
    const Mask bit = Mask{1} << v;
    bron_kerbosch(nbr, R | bit, P & nbr[v], X & nbr[v], best);
    P &= ~bit;
    X |= bit;
  }
}

}  // namespace detail

/// Exact maximum clique size (Bron-Kerbosch with pivoting).
inline std::size_t clique_number(const Graph& g, std::size_t cap = kCliqueVertexCap) {
  const std::size_t n = g.vertex_count();
  if (n > cap || n > 64) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(n) + " vertices exceeds the clique cap " + std::to_string(cap));
  }
  if (n == 0) return 0;
  std::vector<detail::Mask> nbr(n, 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= detail::Mask{1} << e.v;
    nbr[e.v] |= detail::Mask{1} << e.u;
  }
  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;
  std::size_t best = 1;
  detail::bron_kerbosch(nbr, 0, all, 0, best);
  return best;
}

struct ChordalityResult {
  bool chordal = false;
  std::vector<Vertex> elimination_order;  // perfect elimination order when chordal
};

/// Lexicographic BFS followed by a perfect-elimination check.
inline ChordalityResult is_chordal(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> label(n);
  std::vector<bool> numbered(n, false);
  std::vector<Vertex> visit;  // LexBFS visiting order
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (Vertex v = 0; v < n; ++v) {
      if (numbered[v]) continue;
      if (pick == n || label[v] > label[pick]) pick = v;
    }
    numbered[pick] = true;
    visit.push_back(pick);
    for (const auto& inc : g.incident(pick)) {
      if (!numbered[inc.neighbor]) label[inc.neighbor].push_back(n - step);
    }
  }
  ChordalityResult out;
  out.elimination_order.assign(visit.rbegin(), visit.rend());
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[out.elimination_order[p]] = p;

  // Each vertex's later neighbours must form a clique; it suffices that the
  // earliest later neighbour is adjacent to all the others.
  for (Vertex v : out.elimination_order) {
    std::vector<Vertex> later;
    for (const auto& inc : g.incident(v))
      if (position[inc.neighbor] > position[v]) later.push_back(inc.neighbor);
    if (later.size() < 2) continue;
    const Vertex parent = *std::min_element(
        later.begin(), later.end(), [&](Vertex a, Vertex b) { return position[a] < position[b]; });
    for (Vertex u : later) {
      if (u != parent && !g.adjacent(parent, u)) {
        out.elimination_order.clear();
        return out;
      }
    }
  }
  out.chordal = true;
  return out;
}

struct InvariantBounds {
  std::size_t clique_number = 0;
  bool chordal = false;
  std::optional<std::size_t> treewidth;  // omega - 1, known only for chordal graphs
  std::size_t lower = 0;                 // omega - 1
  std::optional<std::size_t> upper;      // treewidth + 1
};

inline InvariantBounds invariant_bounds(const Graph& g) {
  InvariantBounds b;
  b.clique_number = clique_number(g);
  b.chordal = is_chordal(g).chordal;
  b.lower = b.clique_number == 0 ? 0 : b.clique_number - 1;
  if (b.chordal) {
    b.treewidth = b.lower;
    b.upper = *b.treewidth + 1;
  }
  return b;
}

enum class LowDimClass { Edgeless, DisjointPaths, Other };

inline const char* to_string(LowDimClass c) {
  switch (c) {
    case LowDimClass::Edgeless: return "edgeless";
    case LowDimClass::DisjointPaths: return "disjoint_paths";
    case LowDimClass::Other: return "other";
  }
  return "other";
}

/// edgeless <=> rotdim 0; disjoint union of paths <=> rotdim <= 1.
inline LowDimClass low_rotdim_class(const Graph& g) {
  if (g.edge_count() == 0) return LowDimClass::Edgeless;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 2) return LowDimClass::Other;
  std::size_t components = 0;
  std::vector<bool> seen(g.vertex_count(), false);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (seen[v]) continue;
    ++components;
    for (Vertex x : g.component_of(v, {})) seen[x] = true;
  }
  // A forest has exactly n - c edges.
  return g.edge_count() + components == g.vertex_count() ? LowDimClass::DisjointPaths
                                                         : LowDimClass::Other;
}

}  // namespace rotdim
