#pragma once

// Small dense linear algebra: packed symmetric matrices, a cyclic Jacobi
// eigensolver, Gram-matrix numerical rank, and a two-phase simplex LP solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotdim/error.hpp"

namespace rotdim {

using Vector = std::vector<double>;

/// Dense symmetric matrix storing only the lower triangle, so that
/// (i,j) and (j,i) always refer to the same value.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order)
      : order_(order), data_(order * (order + 1) / 2, 0.0) {}

  static SymmetricMatrix identity(std::size_t order) {
    SymmetricMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
  }

  std::size_t order() const { return order_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) { data_[index(i, j)] = value; }
  void add(std::size_t i, std::size_t j, double value) { data_[index(i, j)] += value; }

  /// Largest absolute row sum (the induced infinity norm).
  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < order_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < order_; ++j) row += std::abs((*this)(i, j));
      best = std::max(best, row);
    }
    return best;
  }

  Vector multiply(std::span<const double> x) const {
    Vector y(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < order_; ++j) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t order_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  Vector eigenvalues;                // ascending
  std::vector<Vector> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]
};

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigendecomposition. Sweeps until the off-diagonal
/// Frobenius norm falls below tol times the Frobenius norm of A.
inline EigenDecomposition jacobi_eigendecomposition(const SymmetricMatrix& A,
                                                    double tol = 1e-15) {
  const std::size_t n = A.order();
  std::vector<Vector> a(n, Vector(n));
  std::vector<Vector> v(n, Vector(n, 0.0));
  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = A(i, j);
      if (!std::isfinite(a[i][j])) {
        throw Error(ErrorCode::NoConvergence, "matrix has non-finite entries");
      }
      fro += a[i][j] * a[i][j];
    }
  }
  fro = std::sqrt(fro);
  const double target = tol * fro;

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a[i][j] * a[i][j];
    return std::sqrt(off);
  };

  bool converged = n < 2 || fro == 0.0;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_norm() <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_norm() > target) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(a[k][k]);
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
    // Fix the sign so the largest-magnitude entry is positive.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(col[i]) > std::abs(col[arg]) + 1e-12) arg = i;
    if (n > 0 && col[arg] < 0.0)
      for (double& x : col) x = -x;
    out.eigenvectors.push_back(std::move(col));
  }
  return out;
}

/// Dimension of the span of `vectors`: the number of Gram eigenvalues above
/// tol times the largest one (or above tol when all vanish).
inline std::size_t numerical_rank(std::span<const Vector> vectors, double tol = 1e-7) {
  if (vectors.empty()) return 0;
  const std::size_t d = vectors.front().size();
  for (const auto& x : vectors) {
    if (x.size() != d) throw Error(ErrorCode::LengthMismatch, "vectors differ in dimension");
  }
  // The d x d scatter matrix shares its nonzero spectrum with the Gram matrix.
  SymmetricMatrix scatter(d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      double acc = 0.0;
      for (const auto& x : vectors) acc += x[p] * x[q];
      scatter.set(p, q, acc);
    }
  const auto eig = jacobi_eigendecomposition(scatter);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  const double threshold = tol * (top > 0.0 ? top : 1.0);
  return static_cast<std::size_t>(
      std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                    [&](double lam) { return lam > threshold; }));
}

// ---------------------------------------------------------------------------
// Linear programming: maximize c.x subject to A x <= b, x >= 0.

struct LinearProgram {
  Vector c;
  std::vector<Vector> A;
  Vector b;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Vector x;
  double value = 0.0;
};

namespace detail {

class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp)
      : m_(lp.b.size()), n_(lp.c.size()) {
    artificial_begin_ = n_ + m_;
    std::size_t nart = 0;
    for (double bi : lp.b)
      if (bi < 0.0) ++nart;
    cols_ = n_ + m_ + nart;
    rows_.assign(m_, Vector(cols_ + 1, 0.0));
    basis_.assign(m_, 0);
    std::size_t next_art = artificial_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sign * lp.A[i][j];
      rows_[i][n_ + i] = sign;
      rows_[i][cols_] = sign * lp.b[i];
      if (sign < 0.0) {
        rows_[i][next_art] = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
    scale_ = 1.0;
    for (const auto& row : rows_)
      for (double x : row) scale_ = std::max(scale_, std::abs(x));
  }

  LPResult solve(const Vector& c) {
    LPResult result;
    if (cols_ > artificial_begin_) {
      // Phase 1: maximize -(sum of artificials).
      Vector cost(cols_, 0.0);
      for (std::size_t j = artificial_begin_; j < cols_; ++j) cost[j] = -1.0;
      set_objective(cost);
      if (!optimize(cols_)) throw Error(ErrorCode::NoConvergence, "phase 1 unbounded");
      if (-objective_value() > kFeasTol * scale_) {
        result.status = LPStatus::Infeasible;
        return result;
      }
      drive_out_artificials();
    }
    Vector cost(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
    set_objective(cost);
    if (!optimize(artificial_begin_)) {
      result.status = LPStatus::Unbounded;
      return result;
    }
    result.status = LPStatus::Optimal;
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) result.x[basis_[i]] = std::max(0.0, rows_[i][cols_]);
    result.value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) result.value += c[j] * result.x[j];
    return result;
  }

 private:
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kCostTol = 1e-12;
  static constexpr double kFeasTol = 1e-9;
  static constexpr int kMaxPivots = 100000;

  void set_objective(const Vector& cost) {
    reduced_.assign(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  double objective_value() const { return -reduced_[cols_]; }

  /// Bland's rule. Returns false when unbounded.
  bool optimize(std::size_t column_limit) {
    for (int it = 0; it < kMaxPivots; ++it) {
      std::size_t enter = column_limit;
      for (std::size_t j = 0; j < column_limit; ++j) {
        if (reduced_[j] > kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == column_limit) return true;
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double aij = rows_[i][enter];
        if (aij <= kPivotTol) continue;
        const double ratio = rows_[i][cols_] / aij;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave < m_ && basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::NoConvergence, "simplex pivot limit reached");
  }

  void pivot(std::size_t r, std::size_t c) {
    Vector& prow = rows_[r];
    const double inv = 1.0 / prow[c];
    for (double& x : prow) x *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = rows_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * prow[j];
      rows_[i][c] = 0.0;
    }
    const double f = reduced_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= f * prow[j];
      reduced_[c] = 0.0;
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < artificial_begin_) continue;
      for (std::size_t j = 0; j < artificial_begin_; ++j) {
        if (std::abs(rows_[i][j]) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
      // A row with no usable pivot is redundant; its artificial stays at zero.
    }
  }

  std::size_t m_, n_, cols_ = 0, artificial_begin_ = 0;
  double scale_ = 1.0;
  std::vector<Vector> rows_;
  Vector reduced_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's anti-cycling rule.
inline LPResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.b.size();
  if (lp.A.size() != m) throw Error(ErrorCode::LengthMismatch, "A rows != b size");
  for (const auto& row : lp.A) {
    if (row.size() != lp.c.size()) throw Error(ErrorCode::LengthMismatch, "A columns != c size");
  }
  for (double bi : lp.b) {
    if (!std::isfinite(bi)) throw Error(ErrorCode::Parse, "non-finite right-hand side");
  }
  detail::SimplexTableau tableau(lp);
  return tableau.solve(lp.c);
}

/// True iff the segment [0, p] meets conv(hull_points), up to `tol` on each
/// coordinate of the equality t*p = sum lambda_s h_s.
inline bool segment_hull_intersects(std::span<const double> p, std::span<const Vector> hull_points,
                                    double tol = 1e-9) {
  if (hull_points.empty()) return false;
  const std::size_t d = p.size();
  for (const auto& h : hull_points) {
    if (h.size() != d) throw Error(ErrorCode::LengthMismatch, "hull point dimension");
  }
  // Variables: t, lambda_1..lambda_k.
  const std::size_t k = hull_points.size();
  LinearProgram lp;
  lp.c.assign(k + 1, 0.0);
  auto add_row = [&](Vector row, double rhs) {
    lp.A.push_back(std::move(row));
    lp.b.push_back(rhs);
  };
  {
    Vector row(k + 1, 0.0);
    row[0] = 1.0;
    add_row(row, 1.0);
  }
  {
    Vector row(k + 1, 1.0);
    row[0] = 0.0;
    add_row(row, 1.0);
    for (double& x : row) x = -x;
    add_row(row, -1.0);
  }
  for (std::size_t a = 0; a < d; ++a) {
    Vector row(k + 1, 0.0);
    row[0] = p[a];
    for (std::size_t s = 0; s < k; ++s) row[s + 1] = -hull_points[s][a];
    add_row(row, tol);
    for (double& x : row) x = -x;
    add_row(row, tol);
  }
  return solve_lp(lp).status != LPStatus::Infeasible;
}

}  // namespace rotdim
