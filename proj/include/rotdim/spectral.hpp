#pragma once

// The vertex-weighted Laplacian L(G;(w,s)) = D (sum_ij w_ij E_ij) D with
// D = diag(s)^{-1/2}, and its first nonzero eigenvalue.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rotdim/error.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/linalg.hpp"

namespace rotdim {

/// Nonnegative weight per edge, in the graph's canonical edge order.
struct EdgeWeightVector {
  Vector values;

  EdgeWeightVector() = default;
  explicit EdgeWeightVector(Vector v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }

  friend bool operator==(const EdgeWeightVector&, const EdgeWeightVector&) = default;
};

/// sum_ij l_ij^2 w_ij, the left side of the weight budget.
inline double weight_budget(const Graph& g, const EdgeWeightVector& w) {
  double total = 0.0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) total += g.length(k) * g.length(k) * w[k];
  return total;
}

inline SymmetricMatrix build_laplacian(const Graph& g, const EdgeWeightVector& w) {
  if (w.size() != g.edge_count()) {
    throw Error(ErrorCode::LengthMismatch, "weight vector has " + std::to_string(w.size()) +
                                               " entries for " +
                                               std::to_string(g.edge_count()) + " edges");
  }
  const std::size_t n = g.vertex_count();
  SymmetricMatrix L(n);
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [i, j] = edges[k];
    L.add(i, i, w[k] / g.s(i));
    L.add(j, j, w[k] / g.s(j));
    L.add(i, j, -w[k] / std::sqrt(g.s(i) * g.s(j)));
  }
  return L;
}

/// Unit vector spanning the kernel of the Laplacian: (sqrt s_i) normalized.
inline Vector null_direction(const Graph& g) {
  Vector d(g.vertex_count());
  double norm = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = std::sqrt(g.s(i));
    norm += g.s(i);
  }
  norm = std::sqrt(norm);
  for (double& x : d) x /= norm;
  return d;
}

/// Connectivity of (V, {ij : w_ij > 0}).
inline std::size_t support_component_count(const Graph& g, const EdgeWeightVector& w) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!(w[k] > 0.0)) continue;
    const auto a = find(edges[k].u), b = find(edges[k].v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

struct SpectrumReport {
  double lambda1 = 0.0;
  std::size_t multiplicity = 0;
  std::vector<Vector> eigenbasis;  // orthonormal, orthogonal to null_direction
  std::size_t null_multiplicity = 0;
  bool w_support_connected = false;
  Vector eigenvalues;  // full ascending spectrum, for diagnostics
};

inline constexpr double kDefaultClusterTol = 1e-6;

/// Second-smallest eigenvalue of the Laplacian and the eigenvectors of its
/// cluster (all eigenvalues within cluster_tol * max(1, lambda1)).
inline SpectrumReport first_nonzero_eigenvalue(const Graph& g, const EdgeWeightVector& w,
                                               double cluster_tol = kDefaultClusterTol) {
  require_connected(g);
  const auto L = build_laplacian(g, w);
  auto eig = jacobi_eigendecomposition(L);
  const std::size_t n = g.vertex_count();

  SpectrumReport report;
  report.eigenvalues = eig.eigenvalues;
  if (n < 2) {
    report.null_multiplicity = 1;
    report.w_support_connected = true;
    return report;
  }
  const std::size_t components = support_component_count(g, w);
  report.w_support_connected = components == 1;

  if (report.w_support_connected) {
    report.null_multiplicity = 1;
    report.lambda1 = std::max(0.0, eig.eigenvalues[1]);
    const double width = cluster_tol * std::max(1.0, report.lambda1);
    // Single-linkage: a near-degenerate group is never split at the boundary.
    for (std::size_t k = 1; k < n; ++k) {
      if (k > 1 && eig.eigenvalues[k] - eig.eigenvalues[k - 1] > width) break;
      report.eigenbasis.push_back(eig.eigenvectors[k]);
    }
    report.multiplicity = report.eigenbasis.size();
    return report;
  }

  // Disconnected support: the kernel has one dimension per support component.
  // Report lambda1 = 0 with the kernel minus the global null direction.
  report.null_multiplicity = components;
  report.lambda1 = 0.0;
  const Vector null = null_direction(g);
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < components; ++k) {
    Vector x = eig.eigenvectors[k];
    auto project_out = [&](const Vector& dir) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += dir[i] * x[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * dir[i];
    };
    project_out(null);
    for (const auto& b : basis) project_out(b);
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& xi : x) xi /= norm;
    basis.push_back(std::move(x));
    if (basis.size() + 1 == components) break;
  }
  report.eigenbasis = std::move(basis);
  report.multiplicity = report.eigenbasis.size();
  return report;
}

}  // namespace rotdim
