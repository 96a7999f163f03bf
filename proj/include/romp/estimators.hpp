#pragma once

// Sparse regression estimators: trimmed inner product and RoMP, orthogonal
// matching pursuit, Lasso, Justice Pursuit with its two preprocessing
// variants, and the exhaustive brute-force estimator.

#include <cstdint>
#include <functional>
#include <vector>

#include "romp/model.hpp"

namespace romp {

struct Diagnostics {
  int iterations = 0;
  double objective = 0.0;
  bool converged = true;
  double wall_time_s = 0.0;
};

struct EstimatorResult {
  Vector beta_hat;
  SupportSet support_hat;
  Diagnostics diagnostics;
};

/// Sum of a_i b_i over the N - n1 products of smallest magnitude.
///
/// Kept products are chosen by (|a_i b_i|, i) ascending, so ties go to the
/// smaller index, and are summed in ascending index order.
double trimmed_inner_product(const Vector& a, const Vector& b, Index n1);

/// Indices of the k largest |v_i|, ties broken toward the smaller index.
SupportSet top_k_support(const Vector& v, Index k);

/// Robust matching pursuit: h(j) = trimmed_inner_product(y, X_j, n1), keep the
/// k largest |h(j)| and set beta_j = h(j) there.
EstimatorResult romp(const Matrix& X, const Vector& y, Index k, Index n1);

/// The per-column statistics h(j) that romp() thresholds.
Vector trimmed_correlations(const Matrix& X, const Vector& y, Index n1);

/// Classic orthogonal matching pursuit with k greedy steps.
EstimatorResult matching_pursuit_omp(const Matrix& X, const Vector& y, Index k);

struct CoordinateDescentOptions {
  double tolerance = 1e-8;
  int max_sweeps = 10000;
  /// Called after every sweep with the objective value; tests use it to
  /// check monotone descent.
  std::function<void(int sweep, double objective)> on_sweep;
};

struct LassoResult {
  Vector beta_hat;
  Diagnostics diagnostics;
};

/// min_beta 1/2 ||y - X beta||^2 + lambda ||beta||_1 by cyclic coordinate
/// descent. Throws ConvergenceError (carrying beta) after max_sweeps.
LassoResult lasso(const Matrix& X, const Vector& y, double lambda,
                  const CoordinateDescentOptions& options = {},
                  const Vector* warm_start = nullptr);

struct JusticePursuitResult {
  Vector beta_hat;
  Vector z_hat;
  Diagnostics diagnostics;
  /// Rows removed before solving (JP-row only); z_hat is 0 on these rows.
  std::vector<Index> discarded_rows;
};

/// min 1/2 ||X beta - y - z||^2 + lambda ||beta||_1 + gamma ||z||_1, jointly
/// over (beta, z) by coordinate descent. ConvergenceError carries [beta; z].
JusticePursuitResult justice_pursuit(const Matrix& X, const Vector& y, double lambda,
                                     double gamma,
                                     const CoordinateDescentOptions& options = {},
                                     const Vector* warm_beta = nullptr,
                                     const Vector* warm_z = nullptr);

/// Objective value of the squared-loss Justice Pursuit program.
double justice_pursuit_objective(const Matrix& X, const Vector& y, const Vector& beta,
                                 const Vector& z, double lambda, double gamma);

/// Cells (row-major flat indices) of the floor(n1 / n * rows * cols) entries of
/// largest magnitude, n = rows - n1. Ties go to the smaller flat index.
std::vector<Index> largest_entries(const Matrix& X, Index n1);

/// X with the largest_entries() cells replaced by fill_scale * sign(X_ij).
Matrix fill_large_entries(const Matrix& X, Index n1, double fill_scale = 1.0);

/// The n1 rows holding the most largest_entries() cells, ties to smaller row.
std::vector<Index> rows_to_discard(const Matrix& X, Index n1);

JusticePursuitResult jp_fill(const Matrix& X, const Vector& y, Index n1, double lambda,
                             double gamma, double fill_scale = 1.0,
                             const CoordinateDescentOptions& options = {});

JusticePursuitResult jp_row(const Matrix& X, const Vector& y, Index n1, double lambda,
                            double gamma, const CoordinateDescentOptions& options = {});

/// Number of (row subset, column subset) pairs brute_force() would visit.
double brute_force_candidates(Index total_rows, Index n, Index p, Index k);

struct BruteForceResult {
  EstimatorResult estimate;
  std::vector<Index> rows_hat;
  std::uint64_t candidates = 0;
  /// Candidates whose submatrix was rank deficient; scored with a
  /// minimum-norm solution.
  std::uint64_t degenerate = 0;
};

/// Exhaustive minimization of ||y^S - X^S_L theta|| over |S| = n, |L| = k.
/// Throws SizeGuardError when the candidate count exceeds size_guard.
BruteForceResult brute_force(const Matrix& X, const Vector& y, Index n, Index k,
                             double size_guard = 1e7);

/// min_theta ||b - A theta||^2, tolerant of rank deficiency.
double min_residual_sq(const Matrix& A, const Vector& b, Vector* theta = nullptr);

}  // namespace romp
