#include <gtest/gtest.h>

#include <cmath>

#include "rotdim/linalg.hpp"

using namespace rotdim;

TEST(SymmetricMatrix, SharedStorage) {
  SymmetricMatrix a(3);
  a.set(0, 2, 4.0);
  EXPECT_EQ(a(2, 0), 4.0);
  a.add(2, 0, 1.0);
  EXPECT_EQ(a(0, 2), 5.0);
  EXPECT_EQ(a.norm_inf(), 5.0);
  const auto y = a.multiply(Vector{1, 0, 1});
  EXPECT_EQ(y, (Vector{5, 0, 5}));
}

TEST(Jacobi, TwoByTwo) {
  SymmetricMatrix a(2);
  a.set(0, 0, 2);
  a.set(1, 1, 2);
  a.set(0, 1, 1);
  const auto eig = jacobi_eigendecomposition(a);
  EXPECT_NEAR(eig.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues[1], 3.0, 1e-14);
  // Sign convention: largest-magnitude entry is positive.
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(eig.eigenvectors[1][0], h, 1e-14);
  EXPECT_NEAR(eig.eigenvectors[1][1], h, 1e-14);
}

TEST(Jacobi, DiagonalSortedAscending) {
  SymmetricMatrix a(3);
  a.set(0, 0, 3);
  a.set(1, 1, -1);
  a.set(2, 2, 2);
  const auto eig = jacobi_eigendecomposition(a);
  EXPECT_EQ(eig.eigenvalues, (Vector{-1, 2, 3}));
}

TEST(Jacobi, DeterministicForSameInput) {
  SymmetricMatrix a(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, std::sin(1.0 + i * 3.0 + j));
  const auto x = jacobi_eigendecomposition(a);
  const auto y = jacobi_eigendecomposition(a);
  EXPECT_EQ(x.eigenvalues, y.eigenvalues);
  EXPECT_EQ(x.eigenvectors, y.eigenvectors);
}

TEST(NumericalRank, Basics) {
  std::vector<Vector> pts{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}};
  EXPECT_EQ(numerical_rank(pts), 2u);
  std::vector<Vector> zeros{{0, 0}, {0, 0}};
  EXPECT_EQ(numerical_rank(zeros), 0u);
  EXPECT_EQ(numerical_rank(std::vector<Vector>{}), 0u);
  std::vector<Vector> nearly{{1, 0}, {0, 1e-6}};
  EXPECT_EQ(numerical_rank(nearly, 1e-7), 1u);  // 1e-12 relative Gram eigenvalue
  EXPECT_EQ(numerical_rank(nearly, 1e-13), 2u);
  std::vector<Vector> ragged{{1, 0}, {1}};
  EXPECT_THROW(numerical_rank(ragged), Error);
}

TEST(Simplex, TextbookProblem) {
  // max 3x + 5y ; x <= 4, 2y <= 12, 3x + 2y <= 18.
  LinearProgram lp{{3, 5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}};
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 36.0, 1e-9);
  EXPECT_NEAR(r.x[0], 2.0, 1e-9);
  EXPECT_NEAR(r.x[1], 6.0, 1e-9);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne) {
  // max -x - y ; -x - y <= -2, x <= 3  -> optimum -2.
  LinearProgram lp{{-1, -1}, {{-1, -1}, {1, 0}}, {-2, 3}};
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, -2.0, 1e-9);
  EXPECT_NEAR(r.x[0] + r.x[1], 2.0, 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram infeasible{{1}, {{1}, {-1}}, {1, -2}};
  EXPECT_EQ(solve_lp(infeasible).status, LPStatus::Infeasible);
  LinearProgram unbounded{{1, 1}, {{1, -1}}, {1}};
  EXPECT_EQ(solve_lp(unbounded).status, LPStatus::Unbounded);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example cycles under the textbook rule; Bland's rule terminates.
  LinearProgram lp{{0.75, -150, 0.02, -6},
                   {{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}},
                   {0, 0, 1}};
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 0.05, 1e-9);
}

TEST(SegmentHull, Cases) {
  const std::vector<Vector> hull{{1, -1}, {1, 1}};
  EXPECT_TRUE(segment_hull_intersects(Vector{2, 0}, hull));   // crosses x = 1
  EXPECT_FALSE(segment_hull_intersects(Vector{0.5, 0}, hull));  // stops short
  EXPECT_FALSE(segment_hull_intersects(Vector{2, 5}, hull));  // passes above
  EXPECT_FALSE(segment_hull_intersects(Vector{1, 1}, std::vector<Vector>{}));
  const std::vector<Vector> origin{{0, 0}};
  EXPECT_TRUE(segment_hull_intersects(Vector{3, 4}, origin));
}
