#pragma once

// Projected supergradient ascent for
//
//   maximize lambda1(L(G;(w,s)))  subject to  sum l_ij^2 w_ij <= 1,  w >= 0.
//
// lambda1 is concave in w, and the quadratic form of a lambda1-eigenvector
// against each edge pattern is a supergradient. The solver ascends a
// log-sum-exp smoothing of the spectrum, which keeps degenerate eigenvalue
// groups together instead of chasing one eigenvector at a time.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "rotdim/error.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/spectral.hpp"

namespace rotdim {

struct SolverConfig {
  std::size_t max_iters = 20000;
  double step_scale = 0.0;  // initial step; 0 selects 1 / max degree
  double tol = 1e-6;
  std::uint64_t seed = 0;   // 0 starts from exactly uniform weights
  double cluster_tol = kDefaultClusterTol;
};

struct SolveResult {
  EdgeWeightVector w_star;
  double lambda1 = 0.0;
  std::size_t iterations = 0;
  std::vector<double> best_history;
  bool converged = false;
};

/// Per-edge supergradient of w -> lambda1 at w. The quadratic forms
/// (u(i)/sqrt s_i - u(j)/sqrt s_j)^2 are averaged over the eigenbasis of the
/// lambda1 cluster; with a simple eigenvalue this is the single-vector form.
inline Vector supergradient(const Graph& g, const EdgeWeightVector& w,
                            const SpectrumReport& spectrum) {
  if (w.size() != g.edge_count()) throw Error(ErrorCode::LengthMismatch, "weight vector size");
  if (!spectrum.w_support_connected) {
    throw Error(ErrorCode::DisconnectedSupport, "weight support does not connect the graph");
  }
  if (spectrum.eigenbasis.empty()) throw Error(ErrorCode::DegenerateSpectrum, "empty eigenbasis");
  Vector grad(g.edge_count(), 0.0);
  const auto edges = g.edges();
  for (const auto& u : spectrum.eigenbasis) {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [i, j] = edges[k];
      const double diff = u[i] / std::sqrt(g.s(i)) - u[j] / std::sqrt(g.s(j));
      grad[k] += diff * diff;
    }
  }
  const double scale = 1.0 / static_cast<double>(spectrum.eigenbasis.size());
  for (double& x : grad) x *= scale;
  return grad;
}

/// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}
/// by the sort-and-threshold method.
inline Vector project_to_simplex(std::span<const double> y) {
  Vector sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  Vector x(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) x[k] = std::max(0.0, y[k] - tau);
  return x;
}

/// Projects w_raw onto {w >= 0 : sum l^2 w = 1} through the change of
/// variables x = l^2 w, in which the feasible set is the standard simplex.
inline EdgeWeightVector project_to_feasible(std::span<const double> w_raw,
                                            std::span<const double> lengths) {
  if (w_raw.size() != lengths.size()) throw Error(ErrorCode::LengthMismatch, "w vs l size");
  Vector x(w_raw.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(lengths[k] > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "edge length");
    x[k] = lengths[k] * lengths[k] * w_raw[k];
  }
  x = project_to_simplex(x);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] /= lengths[k] * lengths[k];
  return EdgeWeightVector(std::move(x));
}

inline EdgeWeightVector initial_weights(const Graph& g, std::uint64_t seed) {
  double budget = 0.0;
  for (double l : g.lengths()) budget += l * l;
  Vector w(g.edge_count(), 1.0 / budget);
  if (seed == 0) return EdgeWeightVector(std::move(w));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  for (double& x : w) x *= jitter(rng);
  return project_to_feasible(w, g.lengths());
}

/// Value and gradient of the smoothed minimum of the nonzero spectrum,
///   f_mu(w) = lambda1 - mu * log sum_{k>=1} exp(-(lambda_k - lambda1) / mu),
/// which satisfies lambda1 - mu log(n-1) <= f_mu <= lambda1. Its gradient is
/// the softmax-weighted average of the per-eigenvector quadratic forms, an
/// (mu log(n-1))-supergradient of lambda1.
struct SmoothedEvaluation {
  double lambda1 = 0.0;
  double value = 0.0;
  Vector gradient;
  bool support_connected = false;
};

inline SmoothedEvaluation smoothed_supergradient(const Graph& g, const EdgeWeightVector& w,
                                                 double mu) {
  const auto eig = jacobi_eigendecomposition(build_laplacian(g, w));
  const std::size_t n = g.vertex_count();
  SmoothedEvaluation out;
  out.gradient.assign(g.edge_count(), 0.0);
  out.support_connected = support_component_count(g, w) == 1;
  out.lambda1 = out.support_connected ? std::max(0.0, eig.eigenvalues[1]) : 0.0;
  const double base = eig.eigenvalues[1];
  const auto edges = g.edges();
  double mass = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double p = std::exp(-(eig.eigenvalues[k] - base) / mu);
    if (p < 1e-18) break;
    mass += p;
    const auto& u = eig.eigenvectors[k];
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [i, j] = edges[e];
      const double diff = u[i] / std::sqrt(g.s(i)) - u[j] / std::sqrt(g.s(j));
      out.gradient[e] += p * diff * diff;
    }
  }
  for (double& x : out.gradient) x /= mass;
  out.value = base - mu * std::log(mass);
  return out;
}

/// Projected ascent on the smoothed objective with backtracking steps and
/// a smoothing parameter that halves whenever the projected step stalls.
/// Every iterate lies exactly on the weight budget; the best iterate by
/// lambda1 is returned.
inline SolveResult maximize_lambda1(const Graph& g, const SolverConfig& cfg = {}) {
  require_connected(g);
  if (cfg.max_iters < 1) throw Error(ErrorCode::ParameterOutOfRange, "max_iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "tol must be positive");
  if (cfg.step_scale < 0.0) throw Error(ErrorCode::ParameterOutOfRange, "step_scale < 0");

  SolveResult result;
  if (g.edge_count() == 0) {
    result.converged = true;
    result.best_history.push_back(0.0);
    result.iterations = 1;
    return result;
  }
  const auto lengths = g.lengths();
  double step = cfg.step_scale > 0.0 ? cfg.step_scale : 1.0 / static_cast<double>(g.max_degree());
  constexpr double kMaxStep = 1e3;
  constexpr double kMinStep = 1e-300;

  EdgeWeightVector w = initial_weights(g, cfg.seed);
  double mu = 1.0;
  auto current = smoothed_supergradient(g, w, mu);
  const double mu_floor = 1e-10 * std::max(current.lambda1, 1e-12);
  mu = std::max(0.05 * current.lambda1, mu_floor);
  current = smoothed_supergradient(g, w, mu);

  result.w_star = w;
  result.lambda1 = current.lambda1;
  result.best_history.reserve(cfg.max_iters);
  result.best_history.push_back(result.lambda1);
  bool stationary = false;

  // Steps are taken in x = l^2 w, where the feasible set is the standard
  // simplex and the gradient is g / l^2.
  for (std::size_t t = 2; t <= cfg.max_iters; ++t) {
    Vector raw(w.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const double l2 = lengths[k] * lengths[k];
      raw[k] = l2 * w[k] + step * current.gradient[k] / l2;
    }
    const Vector x = project_to_simplex(raw);
    EdgeWeightVector trial(Vector(x.size()));
    double linear = 0.0, moved = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double l2 = lengths[k] * lengths[k];
      trial[k] = x[k] / l2;
      const double d = x[k] - l2 * w[k];
      linear += current.gradient[k] / l2 * d;
      moved += d * d;
    }
    auto next = smoothed_supergradient(g, trial, mu);

    const bool accept =
        next.support_connected && next.value >= current.value + linear - moved / (2.0 * step) - 1e-15;
    if (accept) {
      w = std::move(trial);
      current = std::move(next);
      if (current.lambda1 > result.lambda1) {
        result.lambda1 = current.lambda1;
        result.w_star = w;
      }
      step = std::min(step * 1.2, kMaxStep);
      // Gradient-mapping norm small relative to the smoothing: tighten it.
      if (std::sqrt(moved) / step < 0.1 * mu) {
        if (mu <= mu_floor) {
          stationary = true;
        } else {
          mu = std::max(0.5 * mu, mu_floor);
          current = smoothed_supergradient(g, w, mu);
        }
      }
    } else {
      step *= 0.5;
      if (step < kMinStep) stationary = true;
    }
    result.best_history.push_back(result.lambda1);
    if (stationary) break;
  }
  result.iterations = result.best_history.size();

  const std::size_t T = result.best_history.size();
  const std::size_t window_start = static_cast<std::size_t>(0.8 * static_cast<double>(T));
  const double gain = result.best_history.back() - result.best_history[std::min(window_start, T - 1)];
  // The plateau test needs a history long enough to have a meaningful tail.
  constexpr std::size_t kMinPlateauHistory = 100;
  result.converged = stationary || (T >= kMinPlateauHistory && gain < cfg.tol);
  return result;
}

}  // namespace rotdim
