#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "romp/errors.hpp"
#include "romp/estimators.hpp"

namespace romp {
namespace {

double binomial(Index n, Index k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (Index i = 1; i <= k; ++i) {
    acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(acc);
}

// Advances idx to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<Index>& idx, Index n) {
  const Index k = idx.size();
  for (Index pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (Index q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

double brute_force_candidates(Index total_rows, Index n, Index p, Index k) {
  return binomial(total_rows, n) * binomial(p, k);
}

double min_residual_sq(const Matrix& A, const Vector& b, Vector* theta) {
  if (A.cols() == 0) {
    if (theta) theta->resize(0);
    return b.squaredNorm();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  Vector sol;
  if (qr.rank() == A.cols()) {
    sol = qr.solve(b);
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    sol = cod.solve(b);
  }
  const double rss = (b - A * sol).squaredNorm();
  if (theta) *theta = std::move(sol);
  return rss;
}

BruteForceResult brute_force(const Matrix& X, const Vector& y, Index n, Index k,
                             double size_guard) {
  if (X.rows() != y.size()) throw InvalidArgument("brute_force: response length != rows");
  const auto rows = static_cast<Index>(X.rows());
  const auto p = static_cast<Index>(X.cols());
  if (n > rows || n == 0) throw InvalidArgument("brute_force: need 1 <= n <= rows");
  if (k == 0 || k > p) throw InvalidArgument("brute_force: need 1 <= k <= p");
  const double count = brute_force_candidates(rows, n, p, k);
  if (count > size_guard) {
    std::ostringstream msg;
    msg << "brute_force: " << count << " candidate pairs exceed the size guard "
        << size_guard;
    throw SizeGuardError(msg.str(), count);
  }
  const auto start = std::chrono::steady_clock::now();

  BruteForceResult out;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Index> best_rows;
  std::vector<Index> best_cols;

  std::vector<Index> S(n);
  std::iota(S.begin(), S.end(), Index{0});
  Eigen::MatrixXd XS(static_cast<Eigen::Index>(n), X.cols());
  Vector yS(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  do {
    for (Index r = 0; r < n; ++r) {
      XS.row(static_cast<Eigen::Index>(r)) = X.row(static_cast<Eigen::Index>(S[r]));
      yS[static_cast<Eigen::Index>(r)] = y[static_cast<Eigen::Index>(S[r])];
    }
    std::vector<Index> L(k);
    std::iota(L.begin(), L.end(), Index{0});
    do {
      for (Index c = 0; c < k; ++c) {
        A.col(static_cast<Eigen::Index>(c)) = XS.col(static_cast<Eigen::Index>(L[c]));
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
      qr.setThreshold(1e-10);
      double rss;
      if (qr.rank() == static_cast<Eigen::Index>(k)) {
        rss = (yS - A * qr.solve(yS)).squaredNorm();
      } else {
        ++out.degenerate;
        rss = min_residual_sq(Matrix(A), yS);
      }
      ++out.candidates;
      if (rss < best) {
        best = rss;
        best_rows = S;
        best_cols = L;
      }
    } while (next_combination(L, p));
  } while (next_combination(S, rows));

  const SupportSet support(best_cols, p);
  const Matrix Abest = submatrix(X, best_rows, support);
  Vector theta;
  const double rss = min_residual_sq(Abest, subvector(y, best_rows), &theta);

  out.estimate.beta_hat = Vector::Zero(X.cols());
  for (Index c = 0; c < k; ++c) {
    out.estimate.beta_hat[static_cast<Eigen::Index>(best_cols[c])] =
        theta[static_cast<Eigen::Index>(c)];
  }
  out.estimate.support_hat = support;
  out.rows_hat = best_rows;
  out.estimate.diagnostics.iterations = static_cast<int>(
      std::min<std::uint64_t>(out.candidates, std::numeric_limits<int>::max()));
  out.estimate.diagnostics.objective = std::sqrt(rss);
  out.estimate.diagnostics.converged = true;
  out.estimate.diagnostics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace romp
