#pragma once

// Graph embeddings v: V -> R^d for the dual problem
//
//   maximize sum_i s_i |v_i|^2
//   s.t.     sum_i s_i v_i = 0,   |v_i - v_j| <= l_ij for every edge,
//
// their extraction from the lambda1-eigenspace, and the optimality
// certificate pairing them with edge weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "rotdim/error.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/linalg.hpp"
#include "rotdim/numfmt.hpp"
#include "rotdim/spectral.hpp"

namespace rotdim {

struct Embedding {
  std::size_t dim = 1;
  std::vector<Vector> coords;  // one d-vector per vertex

  std::size_t rank(double tol = 1e-7) const { return numerical_rank(coords, tol); }
};

inline double embedding_objective(const Graph& g, const Embedding& v) {
  if (v.coords.size() != g.vertex_count()) {
    throw Error(ErrorCode::LengthMismatch, "embedding does not cover every vertex");
  }
  double total = 0.0;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    double sq = 0.0;
    for (double x : v.coords[i]) sq += x * x;
    total += g.s(i) * sq;
  }
  return total;
}

namespace detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return acc;
}

/// Rotates an orthonormal basis of an eigenspace so that it also
/// diagonalizes the vertex-degree operator restricted to that space. This
/// splits vertex classes of different degree onto separate directions.
inline std::vector<Vector> align_with_degrees(const Graph& g, const std::vector<Vector>& basis) {
  const std::size_t d = basis.size();
  if (d < 2) return basis;
  SymmetricMatrix restricted(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double acc = 0.0;
      for (Vertex i = 0; i < g.vertex_count(); ++i)
        acc += basis[a][i] * static_cast<double>(g.degree(i)) * basis[b][i];
      restricted.set(a, b, acc);
    }
  const auto eig = jacobi_eigendecomposition(restricted);
  std::vector<Vector> out(d, Vector(g.vertex_count(), 0.0));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t a = 0; a < d; ++a)
      for (Vertex i = 0; i < g.vertex_count(); ++i)
        out[c][i] += eig.eigenvectors[c][a] * basis[a][i];
  return out;
}

}  // namespace detail

struct ExtractionResult {
  Embedding embedding;
  Vector beta;             // squared scale per retained eigen-direction
  double objective = 0.0;  // sum of beta
};

inline constexpr double kBetaDropThreshold = 1e-12;

/// Builds an embedding inside the lambda1-eigenspace. With eigen-directions
/// q_d(i) = u_d(i)/sqrt(s_i), the LP
///   maximize sum_d beta_d  s.t.  sum_d beta_d (q_d(i) - q_d(j))^2 <= l_ij^2,
/// picks the scales and v(i)_d = sqrt(beta_d) q_d(i). Equilibrium holds
/// because each u_d is orthogonal to (sqrt s_i).
inline ExtractionResult extract_embedding_detailed(const Graph& g, const EdgeWeightVector& w,
                                                   const SpectrumReport& spectrum) {
  if (w.size() != g.edge_count()) throw Error(ErrorCode::LengthMismatch, "weight vector size");
  if (spectrum.multiplicity == 0 || spectrum.eigenbasis.empty()) {
    throw Error(ErrorCode::DegenerateSpectrum, "lambda1 cluster is empty");
  }
  const std::size_t n = g.vertex_count();
  const auto basis = detail::align_with_degrees(g, spectrum.eigenbasis);
  const std::size_t d = basis.size();

  std::vector<Vector> q(d, Vector(n));
  for (std::size_t a = 0; a < d; ++a)
    for (Vertex i = 0; i < n; ++i) q[a][i] = basis[a][i] / std::sqrt(g.s(i));

  LinearProgram lp;
  lp.c.assign(d, 1.0);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    Vector row(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double diff = q[a][edges[e].u] - q[a][edges[e].v];
      row[a] = diff * diff;
    }
    lp.A.push_back(std::move(row));
    lp.b.push_back(g.length(e) * g.length(e));
  }
  const auto sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal) {
    throw Error(ErrorCode::LPInfeasible, "embedding LP did not reach an optimum");
  }

  ExtractionResult out;
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < d; ++a) {
    if (sol.x[a] > kBetaDropThreshold) kept.push_back(a);
  }
  out.embedding.dim = std::max<std::size_t>(1, kept.size());
  out.embedding.coords.assign(n, Vector(out.embedding.dim, 0.0));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const double beta = sol.x[kept[c]];
    out.beta.push_back(beta);
    out.objective += beta;
    const double scale = std::sqrt(beta);
    for (Vertex i = 0; i < n; ++i) out.embedding.coords[i][c] = scale * q[kept[c]][i];
  }
  return out;
}

inline Embedding extract_embedding(const Graph& g, const EdgeWeightVector& w,
                                   const SpectrumReport& spectrum) {
  return extract_embedding_detailed(g, w, spectrum).embedding;
}

/// Residuals of the primal/dual feasibility and complementary slackness
/// conditions. All are zero exactly at a jointly optimal (w, v).
struct KKTReport {
  double slackness_residual = 0.0;      // max_e |w_e (l_e^2 - |v_i - v_j|^2)|
  double stationarity_residual = 0.0;   // max_i |sum_k w_ik (v_i - v_k) - lambda1 s_i v_i|_inf
  double equilibrium_residual = 0.0;    // |sum_i s_i v_i|_inf
  double distance_violation = 0.0;      // max_e max(0, |v_i - v_j| - l_e)
  double weight_feasibility_residual = 0.0;  // max(|sum l^2 w - 1|, max_e -w_e)

  double max_residual() const {
    return std::max({slackness_residual, stationarity_residual, equilibrium_residual,
                     distance_violation, weight_feasibility_residual});
  }
};

inline KKTReport kkt_residuals(const Graph& g, const EdgeWeightVector& w, const Embedding& v,
                               double lambda1) {
  const std::size_t n = g.vertex_count();
  if (w.size() != g.edge_count()) throw Error(ErrorCode::LengthMismatch, "weight vector size");
  if (v.coords.size() != n) throw Error(ErrorCode::LengthMismatch, "embedding vertex count");
  const std::size_t d = v.dim;
  for (const auto& x : v.coords) {
    if (x.size() != d) throw Error(ErrorCode::LengthMismatch, "embedding coordinate dimension");
  }

  KKTReport r;
  std::vector<Vector> flow(n, Vector(d, 0.0));
  const auto edges = g.edges();
  double budget = 0.0;
  double negativity = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    const double dist2 = detail::squared_distance(v.coords[i], v.coords[j]);
    const double len = g.length(e);
    r.slackness_residual = std::max(r.slackness_residual, std::abs(w[e] * (len * len - dist2)));
    r.distance_violation = std::max(r.distance_violation, std::max(0.0, std::sqrt(dist2) - len));
    budget += len * len * w[e];
    negativity = std::max(negativity, -w[e]);
    for (std::size_t a = 0; a < d; ++a) {
      const double diff = v.coords[i][a] - v.coords[j][a];
      flow[i][a] += w[e] * diff;
      flow[j][a] -= w[e] * diff;
    }
  }
  r.weight_feasibility_residual = std::max(std::abs(budget - 1.0), negativity);

  Vector barycenter(d, 0.0);
  for (Vertex i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      barycenter[a] += g.s(i) * v.coords[i][a];
      const double res = flow[i][a] - lambda1 * g.s(i) * v.coords[i][a];
      r.stationarity_residual = std::max(r.stationarity_residual, std::abs(res));
    }
  }
  for (double x : barycenter) r.equilibrium_residual = std::max(r.equilibrium_residual, std::abs(x));
  return r;
}

/// Index of the first component of `sep` all of whose vertices lie in the
/// shadow of the separator's hull as seen from the origin, if any.
inline std::optional<std::size_t> separator_shadow_check(const Graph& g, const Separator& sep,
                                                         const Embedding& v, double tol = 1e-9) {
  if (v.coords.size() != g.vertex_count()) {
    throw Error(ErrorCode::LengthMismatch, "embedding does not cover every vertex");
  }
  std::vector<Vector> hull;
  for (Vertex s : sep.vertices) hull.push_back(v.coords[s]);
  for (std::size_t c = 0; c < sep.components.size(); ++c) {
    const bool shadowed = std::all_of(
        sep.components[c].begin(), sep.components[c].end(),
        [&](Vertex i) { return segment_hull_intersects(v.coords[i], hull, tol); });
    if (shadowed) return c;
  }
  return std::nullopt;
}

/// CSV with header "vertex,x1,...,xd" and 1-based vertex ids.
inline void write_embedding_csv(std::ostream& out, const Embedding& v) {
  out << "vertex";
  for (std::size_t a = 1; a <= v.dim; ++a) out << ",x" << a;
  out << '\n';
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    out << (i + 1);
    for (double x : v.coords[i]) out << ',' << format_g17(x);
    out << '\n';
  }
}

}  // namespace rotdim
