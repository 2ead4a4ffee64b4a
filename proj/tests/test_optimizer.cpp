#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "rotdim/families.hpp"
#include "rotdim/optimizer.hpp"
#include "test_support.hpp"

using namespace rotdim;

TEST(Supergradient, TriangleAveragesTheCluster) {
  // Over an orthonormal basis of the complement of the constants, the
  // quadratic forms sum to 2 on every edge; averaging over two vectors gives 1.
  const Graph g = complete_graph(3);
  const EdgeWeightVector w(Vector(3, 1.0 / 3.0));
  const auto grad = supergradient(g, w, first_nonzero_eigenvalue(g, w));
  for (double x : grad) EXPECT_NEAR(x, 1.0, 1e-13);
  EXPECT_NEAR(std::accumulate(grad.begin(), grad.end(), 0.0), 3.0, 1e-12);
}

TEST(Supergradient, SimpleEigenvalueOnPath) {
  const Graph g = new_graph(3, {{0, 1, 1}, {1, 2, 1}}, {1, 1, 1});
  const EdgeWeightVector w(Vector{0.5, 0.5});
  // Eigenvector (1, 0, -1)/sqrt 2 gives (1/sqrt 2)^2 on each edge.
  const auto grad = supergradient(g, w, first_nonzero_eigenvalue(g, w));
  EXPECT_NEAR(grad[0], 0.5, 1e-13);
  EXPECT_NEAR(grad[1], 0.5, 1e-13);
}

TEST(Supergradient, Errors) {
  const Graph g = new_graph(3, {{0, 1, 1}, {1, 2, 1}}, {1, 1, 1});
  const EdgeWeightVector w(Vector{1.0, 0.0});
  EXPECT_THROW(supergradient(g, w, first_nonzero_eigenvalue(g, w)), Error);
  EXPECT_THROW(supergradient(g, EdgeWeightVector(Vector{1.0}), SpectrumReport{}), Error);
}

TEST(Projection, SimplexExamples) {
  EXPECT_EQ(project_to_simplex(Vector{0.2, 0.3, 0.5}), (Vector{0.2, 0.3, 0.5}));
  const auto x = project_to_simplex(Vector{2.0, 0.0});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
  const auto y = project_to_simplex(Vector{0.0, 0.0, 0.0, 0.0});
  for (double v : y) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Projection, FeasibleSetUsesSquaredLengths) {
  const Vector lengths{1.0, 2.0};
  const auto w = project_to_feasible(Vector{1.0, 1.0}, lengths);
  EXPECT_NEAR(w[0] + 4.0 * w[1], 1.0, 1e-15);
  EXPECT_GE(w[1], 0.0);
  EXPECT_THROW(project_to_feasible(Vector{1.0}, lengths), Error);
}

TEST(InitialWeights, UniformAndSeeded) {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 2.0}}, {1, 1, 1});
  const auto w0 = initial_weights(g, 0);
  EXPECT_DOUBLE_EQ(w0[0], 0.2);
  EXPECT_DOUBLE_EQ(w0[1], 0.2);
  const auto w1 = initial_weights(g, 7);
  EXPECT_NEAR(weight_budget(g, w1), 1.0, 1e-14);
  EXPECT_EQ(w1, initial_weights(g, 7));
}

TEST(Maximize, SingleEdge) {
  // One edge: w = 1/l^2 and lambda1 = w (1/s_1 + 1/s_2).
  const Graph g = new_graph(2, {{0, 1, 1.0}}, {1, 1});
  const auto r = maximize_lambda1(g);
  EXPECT_NEAR(r.lambda1, 2.0, 1e-12);
  EXPECT_TRUE(r.converged);
  const Graph h = new_graph(2, {{0, 1, 2.0}}, {1, 3});
  EXPECT_NEAR(maximize_lambda1(h).lambda1, 0.25 * (1.0 + 1.0 / 3.0), 1e-12);
}

TEST(Maximize, PathOnThreeVertices) {
  // lambda1(a, b) = 1 - sqrt(1 - 3ab) on a + b = 1, maximized at a = b.
  const Graph g = new_graph(3, {{0, 1, 1}, {1, 2, 1}}, {1, 1, 1});
  SolverConfig cfg;
  cfg.seed = 3;
  const auto r = maximize_lambda1(g, cfg);
  EXPECT_NEAR(r.lambda1, 0.5, 1e-7);
  EXPECT_NEAR(r.w_star[0], 0.5, 1e-4);
}

TEST(Maximize, MatchesClosedForms) {
  EXPECT_NEAR(maximize_lambda1(complete_graph(5)).lambda1, 0.5, 1e-8);
  EXPECT_NEAR(maximize_lambda1(complete_minus_edge(5)).lambda1, 3.0 / 7.0, 1e-6);
  EXPECT_NEAR(maximize_lambda1(clique_sum_family(4, 3)).lambda1, 8.0 / 27.0, 1e-6);
}

TEST(Maximize, IteratesStayFeasible) {
  const auto r = maximize_lambda1(complete_minus_edge(6));
  EXPECT_NEAR(weight_budget(complete_minus_edge(6), r.w_star), 1.0, 1e-12);
  for (double x : r.w_star.values) EXPECT_GE(x, 0.0);
  EXPECT_EQ(r.best_history.size(), r.iterations);
  EXPECT_TRUE(std::is_sorted(r.best_history.begin(), r.best_history.end()));
}

TEST(Maximize, LengthScaling) {
  // Multiplying every length by c divides the optimum by c^2.
  const double c = 1.7;
  const Graph g = complete_minus_edge(5);
  std::vector<WeightedEdge> scaled;
  for (auto e : g.weighted_edges()) {
    e.length *= c;
    scaled.push_back(e);
  }
  const Graph h = new_graph(5, scaled, std::vector<double>(5, 1.0));
  EXPECT_NEAR(maximize_lambda1(h).lambda1, maximize_lambda1(g).lambda1 / (c * c), 1e-7);
}

TEST(Maximize, Deterministic) {
  std::mt19937_64 rng(11);
  const Graph g = testkit::random_connected_graph(rng, 6, 0.4);
  SolverConfig cfg;
  cfg.seed = 5;
  const auto a = maximize_lambda1(g, cfg);
  const auto b = maximize_lambda1(g, cfg);
  EXPECT_EQ(a.w_star, b.w_star);
  EXPECT_EQ(a.lambda1, b.lambda1);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Maximize, BadConfig) {
  SolverConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(maximize_lambda1(complete_graph(3), cfg), Error);
  cfg = {};
  cfg.tol = 0.0;
  EXPECT_THROW(maximize_lambda1(complete_graph(3), cfg), Error);
  EXPECT_THROW(maximize_lambda1(Graph(2, {}, {1, 1})), Error);
}

TEST(Maximize, IterationCapReportsNoProgress) {
  SolverConfig cfg;
  cfg.max_iters = 3;
  cfg.tol = 1e-14;
  cfg.seed = 9;
  const auto r = maximize_lambda1(complete_minus_edge(7), cfg);
  EXPECT_LE(r.iterations, 3u);
  EXPECT_FALSE(r.converged);
}

TEST(Maximize, WeakDuality) {
  // Any feasible embedding's objective bounds 1/lambda1(w) from below for every feasible w.
  std::mt19937_64 rng(2);
  const auto sol = analytic_kn_minus_edge(6);
  for (int t = 0; t < 20; ++t) {
    const auto w = testkit::random_feasible_weights(rng, sol.graph);
    EXPECT_LE(testkit::lambda1_of(sol.graph, w) * embedding_objective(sol.graph, sol.embedding),
              1.0 + 1e-12);
  }
}

TEST(Maximize, NonUnitLengthsMatchOneDimensionalScan) {
  // Path with lengths 1 and 2: lambda1(a, b) = a + b - sqrt(a^2 - ab + b^2)
  // on a + 4b = 1. The oracle is a fine scan over b.
  const Graph g = new_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}}, {1, 1, 1});
  double best = 0.0;
  for (int i = 1; i < 200000; ++i) {
    const double b = 0.25 * i / 200000.0, a = 1.0 - 4.0 * b;
    best = std::max(best, a + b - std::sqrt(a * a - a * b + b * b));
  }
  EXPECT_NEAR(maximize_lambda1(g).lambda1, best, 1e-8);
}
