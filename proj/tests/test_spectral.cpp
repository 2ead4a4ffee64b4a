#include <gtest/gtest.h>

#include <cmath>

#include "rotdim/families.hpp"
#include "rotdim/spectral.hpp"

using namespace rotdim;

namespace {

EdgeWeightVector uniform(const Graph& g, double value) {
  return EdgeWeightVector(Vector(g.edge_count(), value));
}

}  // namespace

TEST(Laplacian, KernelIsSqrtS) {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 2.0}}, {1.0, 4.0, 9.0});
  const EdgeWeightVector w(Vector{0.3, 0.7});
  const auto L = build_laplacian(g, w);
  const auto y = L.multiply(Vector{1.0, 2.0, 3.0});
  for (double x : y) EXPECT_NEAR(x, 0.0, 1e-15);
  const auto d = null_direction(g);
  EXPECT_NEAR(d[0] * d[0] + d[1] * d[1] + d[2] * d[2], 1.0, 1e-15);
}

TEST(Laplacian, EntriesForUnitVertexWeights) {
  const Graph g = complete_graph(3);
  const auto L = build_laplacian(g, EdgeWeightVector(Vector{1, 2, 3}));
  EXPECT_DOUBLE_EQ(L(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(L(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(L(2, 2), 5.0);
  EXPECT_DOUBLE_EQ(L(0, 1), -1.0);
  EXPECT_DOUBLE_EQ(L(1, 2), -3.0);
}

TEST(Laplacian, LengthMismatch) {
  EXPECT_THROW(build_laplacian(complete_graph(3), EdgeWeightVector(Vector{1, 1})), Error);
}

TEST(WeightBudget, UsesSquaredLengths) {
  const Graph g(3, {{0, 1, 2.0}, {1, 2, 1.0}}, {1, 1, 1});
  EXPECT_DOUBLE_EQ(weight_budget(g, EdgeWeightVector(Vector{0.25, 0.5})), 1.5);
}

TEST(FirstNonzero, TriangleUniform) {
  // (1/3)(3I - J): spectrum {0, 1, 1}.
  const Graph g = complete_graph(3);
  const auto r = first_nonzero_eigenvalue(g, uniform(g, 1.0 / 3.0));
  EXPECT_NEAR(r.lambda1, 1.0, 1e-14);
  EXPECT_EQ(r.multiplicity, 2u);
  EXPECT_TRUE(r.w_support_connected);
  EXPECT_EQ(r.null_multiplicity, 1u);
}

TEST(FirstNonzero, CompleteMinusEdgeOptimalWeights) {
  const Graph g = complete_minus_edge(5);
  Vector w(g.edge_count());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = g.edges()[e].v < 3 ? 1.0 / 21.0 : 1.0 / 7.0;
  const auto r = first_nonzero_eigenvalue(g, EdgeWeightVector(w));
  EXPECT_NEAR(r.lambda1, 3.0 / 7.0, 1e-13);
  EXPECT_EQ(r.multiplicity, 3u);
}

TEST(FirstNonzero, BipartiteZeroCliqueWeights) {
  const Graph g = clique_sum_family(2, 3);
  Vector w(g.edge_count(), 1.0 / 6.0);
  w[*g.edge_index(0, 1)] = 0.0;
  const auto r = first_nonzero_eigenvalue(g, EdgeWeightVector(w));
  EXPECT_TRUE(r.w_support_connected);
  EXPECT_NEAR(r.lambda1, 1.0 / 3.0, 1e-14);
  EXPECT_EQ(r.multiplicity, 2u);
}

TEST(FirstNonzero, PathHandSolution) {
  // Path on three vertices with weights 1/2: spectrum {0, 1/2, 3/2}.
  const Graph g = new_graph(3, {{0, 1, 1}, {1, 2, 1}}, {1, 1, 1});
  const auto r = first_nonzero_eigenvalue(g, uniform(g, 0.5));
  EXPECT_NEAR(r.lambda1, 0.5, 1e-14);
  EXPECT_EQ(r.multiplicity, 1u);
  ASSERT_EQ(r.eigenvalues.size(), 3u);
  EXPECT_NEAR(r.eigenvalues[2], 1.5, 1e-14);
}

TEST(FirstNonzero, DisconnectedSupport) {
  const Graph g = new_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}, {1, 1, 1, 1});
  const auto r = first_nonzero_eigenvalue(g, EdgeWeightVector(Vector{0.5, 0.0, 0.5}));
  EXPECT_FALSE(r.w_support_connected);
  EXPECT_EQ(r.lambda1, 0.0);
  EXPECT_EQ(r.null_multiplicity, 2u);
  EXPECT_EQ(r.multiplicity, 1u);
  ASSERT_EQ(r.eigenbasis.size(), 1u);
  const auto d = null_direction(g);
  double dot = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dot += d[i] * r.eigenbasis[0][i];
  EXPECT_NEAR(dot, 0.0, 1e-12);
}

TEST(FirstNonzero, DisconnectedGraphRejected) {
  const Graph g(4, {{0, 1, 1}, {2, 3, 1}}, {1, 1, 1, 1});
  EXPECT_THROW(first_nonzero_eigenvalue(g, uniform(g, 0.5)), Error);
}

TEST(FirstNonzero, ClusterToleranceControlsMultiplicity) {
  // Two close but distinct eigenvalues merge under a loose tolerance.
  const Graph g = complete_graph(3);
  const EdgeWeightVector w(Vector{1.0 / 3.0, 1.0 / 3.0 + 1e-5, 1.0 / 3.0 - 1e-5});
  EXPECT_EQ(first_nonzero_eigenvalue(g, w, 1e-9).multiplicity, 1u);
  EXPECT_EQ(first_nonzero_eigenvalue(g, w, 1e-3).multiplicity, 2u);
}

TEST(FirstNonzero, MultiplicityBelowN) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const Graph g = complete_graph(n);
    const auto r = first_nonzero_eigenvalue(g, uniform(g, 1.0));
    EXPECT_EQ(r.multiplicity, n - 1);
    EXPECT_LE(r.multiplicity, n - 1);
  }
}

TEST(SupportComponents, Count) {
  const Graph g = complete_graph(4);
  Vector w(g.edge_count(), 0.0);
  EXPECT_EQ(support_component_count(g, EdgeWeightVector(w)), 4u);
  w[0] = 1.0;
  EXPECT_EQ(support_component_count(g, EdgeWeightVector(w)), 3u);
}
