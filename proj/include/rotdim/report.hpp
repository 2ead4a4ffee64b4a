#pragma once

// The end-to-end pipeline behind the CLI: solve for optimal weights, extract
// and certify an embedding, compute the invariant bounds, and compare with
// the closed form when the input is one of the known families.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rotdim/embedding.hpp"
#include "rotdim/families.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/io.hpp"
#include "rotdim/optimizer.hpp"
#include "rotdim/spectral.hpp"

namespace rotdim {

inline constexpr const char* kReportSchema = "1";

struct AnalysisOptions {
  SolverConfig solver;
  double rank_tol = 1e-7;
};

/// A named family together with its parameters.
struct FamilySpec {
  std::string name;  // complete | kn-minus-e | gmk | g23
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
};

inline AnalyticSolution analytic_solution(const FamilySpec& f) {
  if (f.name == "complete") return analytic_complete(f.n);
  if (f.name == "kn-minus-e") return analytic_kn_minus_edge(f.n);
  if (f.name == "gmk") return analytic_gmk(f.m, f.k);
  if (f.name == "g23") return analytic_g23_remark();
  throw Error(ErrorCode::ParameterOutOfRange, "unknown family '" + f.name + "'");
}

inline Json family_params_json(const FamilySpec& f) {
  Json j = Json::object();
  if (f.name == "complete" || f.name == "kn-minus-e") j["n"] = f.n;
  if (f.name == "gmk") {
    j["m"] = f.m;
    j["k"] = f.k;
  }
  return j;
}

namespace detail {

inline bool unit_parameters(const Graph& g) {
  return std::all_of(g.vertex_weights().begin(), g.vertex_weights().end(),
                     [](double x) { return x == 1.0; }) &&
         std::all_of(g.lengths().begin(), g.lengths().end(), [](double x) { return x == 1.0; });
}

inline bool same_edges(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() &&
         std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

}  // namespace detail

/// Recognizes the families by identity labeling and unit parameters, when a
/// closed form exists for the instance.
inline std::optional<FamilySpec> match_family(const Graph& g) {
  if (!detail::unit_parameters(g)) return std::nullopt;
  const std::size_t n = g.vertex_count();
  if (n >= 2 && g.edge_count() == n * (n - 1) / 2) return FamilySpec{"complete", n, 0, 0};
  if (n >= 3 && detail::same_edges(g, complete_minus_edge(n))) {
    return FamilySpec{"kn-minus-e", n, 0, 0};
  }
  for (std::size_t m = 2; m + 1 < n; ++m) {
    const std::size_t k = n - m;
    if (!detail::same_edges(g, clique_sum_family(m, k))) continue;
    if (m == 2 && k == 3) return FamilySpec{"g23", 0, 0, 0};
    if (m > k && k >= 2) return FamilySpec{"gmk", 0, m, k};
  }
  return std::nullopt;
}

struct FamilyComparison {
  FamilySpec family;
  double analytic_lambda1 = 0.0;
  double lambda1_delta = 0.0;  // numeric - analytic
  double w_max_delta = 0.0;
  std::size_t analytic_rank = 0;
  std::size_t numeric_rank = 0;
  std::size_t claimed_dim = 0;
  std::optional<std::size_t> rotdim_claim;
};

struct AnalysisReport {
  Graph graph;
  SolveResult solve;
  SpectrumReport spectrum;
  ExtractionResult extraction;
  std::size_t embedding_rank = 0;
  double duality_gap = 0.0;  // |objective * lambda1 - 1|
  KKTReport kkt;
  InvariantBounds bounds;
  std::optional<FamilyComparison> family;
};

inline AnalysisReport analyze_graph(const Graph& g, const AnalysisOptions& opts = {}) {
  require_connected(g);
  if (g.vertex_count() < 2) {
    throw Error(ErrorCode::ParameterOutOfRange, "the problem needs at least two vertices");
  }
  AnalysisReport r;
  r.graph = g;
  r.solve = maximize_lambda1(g, opts.solver);
  r.spectrum = first_nonzero_eigenvalue(g, r.solve.w_star, opts.solver.cluster_tol);
  r.extraction = extract_embedding_detailed(g, r.solve.w_star, r.spectrum);
  r.embedding_rank = r.extraction.embedding.rank(opts.rank_tol);
  r.duality_gap = std::abs(r.extraction.objective * r.spectrum.lambda1 - 1.0);
  r.kkt = kkt_residuals(g, r.solve.w_star, r.extraction.embedding, r.spectrum.lambda1);
  if (g.vertex_count() <= kCliqueVertexCap) r.bounds = invariant_bounds(g);

  if (auto fam = match_family(g)) {
    const auto sol = analytic_solution(*fam);
    FamilyComparison cmp;
    cmp.family = *fam;
    cmp.analytic_lambda1 = sol.lambda1;
    cmp.lambda1_delta = r.spectrum.lambda1 - sol.lambda1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      cmp.w_max_delta = std::max(cmp.w_max_delta, std::abs(r.solve.w_star[e] - sol.w[e]));
    }
    cmp.analytic_rank = sol.embedding.rank(opts.rank_tol);
    cmp.numeric_rank = r.embedding_rank;
    cmp.claimed_dim = sol.claimed_dim;
    cmp.rotdim_claim = sol.rotdim_claim;
    r.family = cmp;
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON rendering.

inline Json embedding_to_json(const Embedding& v) {
  Json rows = Json::array();
  for (const auto& c : v.coords) rows.push_back(c);
  return rows;
}

inline Embedding embedding_from_json(const Json& rows) {
  Embedding v;
  try {
    for (const auto& row : rows) v.coords.push_back(row.get<Vector>());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, ex.what());
  }
  if (v.coords.empty()) throw Error(ErrorCode::Parse, "empty embedding");
  v.dim = v.coords.front().size();
  for (const auto& c : v.coords) {
    if (c.size() != v.dim || v.dim == 0) throw Error(ErrorCode::Parse, "ragged embedding rows");
  }
  return v;
}

inline Json kkt_to_json(const KKTReport& k) {
  Json j;
  j["slackness_residual"] = k.slackness_residual;
  j["stationarity_residual"] = k.stationarity_residual;
  j["equilibrium_residual"] = k.equilibrium_residual;
  j["distance_violation"] = k.distance_violation;
  j["weight_feasibility_residual"] = k.weight_feasibility_residual;
  return j;
}

inline Json bounds_to_json(const InvariantBounds& b) {
  Json j;
  j["clique_number"] = b.clique_number;
  j["chordal"] = b.chordal;
  j["treewidth"] = b.treewidth ? Json(*b.treewidth) : Json(nullptr);
  j["lower"] = b.lower;
  j["upper"] = b.upper ? Json(*b.upper) : Json(nullptr);
  return j;
}

inline Json report_to_json(const AnalysisReport& r) {
  const Graph& g = r.graph;
  Json j;
  j["schema"] = kReportSchema;

  Json input;
  input["n"] = g.vertex_count();
  input["edge_count"] = g.edge_count();
  const auto [s_min, s_max] = std::minmax_element(g.vertex_weights().begin(), g.vertex_weights().end());
  input["s_min"] = *s_min;
  input["s_max"] = *s_max;
  if (g.edge_count() > 0) {
    const auto [l_min, l_max] = std::minmax_element(g.lengths().begin(), g.lengths().end());
    input["l_min"] = *l_min;
    input["l_max"] = *l_max;
  }
  input["graph"] = graph_to_json(g);
  j["input"] = std::move(input);

  Json solver;
  solver["lambda1"] = r.solve.lambda1;
  solver["iterations"] = r.solve.iterations;
  solver["converged"] = r.solve.converged;
  solver["w"] = r.solve.w_star.values;
  j["solver"] = std::move(solver);

  Json spectrum;
  spectrum["lambda1"] = r.spectrum.lambda1;
  spectrum["multiplicity"] = r.spectrum.multiplicity;
  j["spectrum"] = std::move(spectrum);

  Json emb;
  emb["dimension"] = r.extraction.embedding.dim;
  emb["rank"] = r.embedding_rank;
  emb["objective"] = r.extraction.objective;
  emb["duality_gap"] = r.duality_gap;
  emb["coords"] = embedding_to_json(r.extraction.embedding);
  j["embedding"] = std::move(emb);

  j["kkt"] = kkt_to_json(r.kkt);
  j["bounds"] = bounds_to_json(r.bounds);

  if (r.family) {
    const auto& f = *r.family;
    Json fam;
    fam["name"] = f.family.name;
    fam["params"] = family_params_json(f.family);
    fam["analytic_lambda1"] = f.analytic_lambda1;
    fam["lambda1_delta"] = f.lambda1_delta;
    fam["w_max_delta"] = f.w_max_delta;
    fam["analytic_rank"] = f.analytic_rank;
    fam["numeric_rank"] = f.numeric_rank;
    fam["rank_agreement"] = f.analytic_rank == f.numeric_rank;
    Json claims;
    claims["claimed_dim"] = f.claimed_dim;
    claims["rotdim"] = f.rotdim_claim ? Json(*f.rotdim_claim) : Json(nullptr);
    fam["claims"] = std::move(claims);
    j["family"] = std::move(fam);
  } else {
    j["family"] = nullptr;
  }
  return j;
}

inline Json analytic_to_json(const AnalyticSolution& sol, double rank_tol) {
  Json j;
  j["lambda1"] = sol.lambda1;
  j["w"] = sol.w.values;
  j["objective"] = embedding_objective(sol.graph, sol.embedding);
  j["rank"] = sol.embedding.rank(rank_tol);
  j["claimed_dim"] = sol.claimed_dim;
  j["rotdim_claim"] = sol.rotdim_claim ? Json(*sol.rotdim_claim) : Json(nullptr);
  j["kkt"] = kkt_to_json(kkt_residuals(sol.graph, sol.w, sol.embedding, sol.lambda1));
  j["coords"] = embedding_to_json(sol.embedding);
  return j;
}

}  // namespace rotdim
