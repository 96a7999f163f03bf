#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "romp/errors.hpp"
#include "romp/estimators.hpp"

namespace romp {

EstimatorResult matching_pursuit_omp(const Matrix& X, const Vector& y, Index k) {
  if (X.rows() != y.size()) throw InvalidArgument("omp: response length != rows");
  const auto p = static_cast<Index>(X.cols());
  if (k > p) throw InvalidArgument("omp: k exceeds number of columns");
  const auto start = std::chrono::steady_clock::now();

  std::vector<Index> chosen;
  std::vector<char> used(p, 0);
  Vector residual = y;
  Vector theta;
  for (Index step = 0; step < k; ++step) {
    const Vector corr = X.transpose() * residual;
    Index best = p;
    double best_abs = -1.0;
    for (Index j = 0; j < p; ++j) {
      if (used[j]) continue;
      const double a = std::abs(corr[static_cast<Eigen::Index>(j)]);
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    used[best] = 1;
    chosen.push_back(best);
    Matrix sub(X.rows(), static_cast<Eigen::Index>(chosen.size()));
    for (Index c = 0; c < chosen.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = X.col(static_cast<Eigen::Index>(chosen[c]));
    }
    theta = least_squares(sub, y);
    residual = y - sub * theta;
  }

  EstimatorResult out;
  out.beta_hat = Vector::Zero(X.cols());
  for (Index c = 0; c < chosen.size(); ++c) {
    out.beta_hat[static_cast<Eigen::Index>(chosen[c])] = theta[static_cast<Eigen::Index>(c)];
  }
  out.support_hat = SupportSet(chosen, p);
  out.diagnostics.iterations = static_cast<int>(k);
  out.diagnostics.objective = 0.5 * residual.squaredNorm();
  out.diagnostics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<Index> largest_entries(const Matrix& X, Index n1) {
  const auto rows = static_cast<Index>(X.rows());
  if (n1 >= rows) throw InvalidArgument("largest_entries: n1 must be below the row count");
  const Index total = rows * static_cast<Index>(X.cols());
  const double fraction = static_cast<double>(n1) / static_cast<double>(rows - n1);
  const Index count =
      std::min(total, static_cast<Index>(std::floor(fraction * static_cast<double>(total))));
  if (count == 0) return {};
  std::vector<Index> order(total);
  std::iota(order.begin(), order.end(), Index{0});
  const double* data = X.data();
  auto larger = [data](Index l, Index r) {
    const double al = std::abs(data[l]);
    const double ar = std::abs(data[r]);
    return al > ar || (al == ar && l < r);
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count - 1),
                   order.end(), larger);
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

Matrix fill_large_entries(const Matrix& X, Index n1, double fill_scale) {
  Matrix out = X;
  double* data = out.data();
  for (Index flat : largest_entries(X, n1)) {
    const double v = data[flat];
    data[flat] = v > 0.0 ? fill_scale : (v < 0.0 ? -fill_scale : 0.0);
  }
  return out;
}

std::vector<Index> rows_to_discard(const Matrix& X, Index n1) {
  const auto rows = static_cast<Index>(X.rows());
  const auto cols = static_cast<Index>(X.cols());
  std::vector<Index> counts(rows, 0);
  for (Index flat : largest_entries(X, n1)) ++counts[flat / cols];
  std::vector<Index> order(rows);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&counts](Index l, Index r) { return counts[l] > counts[r]; });
  order.resize(n1);
  std::sort(order.begin(), order.end());
  return order;
}

JusticePursuitResult jp_fill(const Matrix& X, const Vector& y, Index n1, double lambda,
                             double gamma, double fill_scale,
                             const CoordinateDescentOptions& options) {
  if (n1 == 0) return justice_pursuit(X, y, lambda, gamma, options);
  return justice_pursuit(fill_large_entries(X, n1, fill_scale), y, lambda, gamma, options);
}

JusticePursuitResult jp_row(const Matrix& X, const Vector& y, Index n1, double lambda,
                            double gamma, const CoordinateDescentOptions& options) {
  if (n1 >= static_cast<Index>(X.rows())) {
    throw InvalidArgument("jp_row: n1 must be below the row count");
  }
  if (n1 == 0) return justice_pursuit(X, y, lambda, gamma, options);
  const std::vector<Index> dropped = rows_to_discard(X, n1);
  std::vector<Index> kept;
  kept.reserve(static_cast<Index>(X.rows()) - n1);
  for (Index i = 0, d = 0; i < static_cast<Index>(X.rows()); ++i) {
    if (d < dropped.size() && dropped[d] == i) {
      ++d;
    } else {
      kept.push_back(i);
    }
  }
  Matrix Xk(static_cast<Eigen::Index>(kept.size()), X.cols());
  Vector yk(static_cast<Eigen::Index>(kept.size()));
  for (Index r = 0; r < kept.size(); ++r) {
    Xk.row(static_cast<Eigen::Index>(r)) = X.row(static_cast<Eigen::Index>(kept[r]));
    yk[static_cast<Eigen::Index>(r)] = y[static_cast<Eigen::Index>(kept[r])];
  }
  JusticePursuitResult inner = justice_pursuit(Xk, yk, lambda, gamma, options);
  JusticePursuitResult out;
  out.beta_hat = std::move(inner.beta_hat);
  out.z_hat = Vector::Zero(X.rows());
  for (Index r = 0; r < kept.size(); ++r) {
    out.z_hat[static_cast<Eigen::Index>(kept[r])] = inner.z_hat[static_cast<Eigen::Index>(r)];
  }
  out.diagnostics = inner.diagnostics;
  out.discarded_rows = dropped;
  return out;
}

}  // namespace romp
