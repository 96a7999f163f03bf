#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "romp/errors.hpp"
#include "romp/estimators.hpp"

namespace romp {
namespace {

// Reusable scratch space for repeated trimmed sums of equal length.
class Trimmer {
 public:
  explicit Trimmer(Index length) : order_(length), keep_(length), q_(length) {}

  double operator()(const double* a, const double* b, Eigen::Index stride_b, Index n1) {
    const Index N = q_.size();
    for (Index i = 0; i < N; ++i) {
      q_[i] = a[i] * b[static_cast<Eigen::Index>(i) * stride_b];
    }
    if (n1 >= N) return 0.0;
    if (n1 == 0) {
      double sum = 0.0;
      for (Index i = 0; i < N; ++i) sum += q_[i];
      return sum;
    }
    std::iota(order_.begin(), order_.end(), Index{0});
    const Index kept = N - n1;
    auto by_magnitude = [this](Index l, Index r) {
      const double al = std::abs(q_[l]);
      const double ar = std::abs(q_[r]);
      return al < ar || (al == ar && l < r);
    };
    std::nth_element(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(kept),
                     order_.end(), by_magnitude);
    std::fill(keep_.begin(), keep_.end(), char{0});
    for (Index i = 0; i < kept; ++i) keep_[order_[i]] = 1;
    double sum = 0.0;
    for (Index i = 0; i < N; ++i) {
      if (keep_[i]) sum += q_[i];
    }
    return sum;
  }

 private:
  std::vector<Index> order_;
  std::vector<char> keep_;
  std::vector<double> q_;
};

}  // namespace

double trimmed_inner_product(const Vector& a, const Vector& b, Index n1) {
  if (a.size() != b.size()) {
    throw InvalidArgument("trimmed_inner_product: length mismatch");
  }
  const auto N = static_cast<Index>(a.size());
  if (n1 > N) throw InvalidArgument("trimmed_inner_product: n1 exceeds vector length");
  Trimmer trim(N);
  return trim(a.data(), b.data(), 1, n1);
}

SupportSet top_k_support(const Vector& v, Index k) {
  const auto len = static_cast<Index>(v.size());
  if (k > len) throw InvalidArgument("top_k_support: k exceeds vector length");
  std::vector<Index> order(len);
  std::iota(order.begin(), order.end(), Index{0});
  auto larger = [&v](Index l, Index r) {
    const double al = std::abs(v[static_cast<Eigen::Index>(l)]);
    const double ar = std::abs(v[static_cast<Eigen::Index>(r)]);
    return al > ar || (al == ar && l < r);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    larger);
  order.resize(k);
  return SupportSet(std::move(order), len);
}

Vector trimmed_correlations(const Matrix& X, const Vector& y, Index n1) {
  if (X.rows() != y.size()) throw InvalidArgument("romp: response length != rows");
  const auto N = static_cast<Index>(X.rows());
  if (n1 > N) throw InvalidArgument("romp: n1 exceeds number of rows");
  Trimmer trim(N);
  Vector h(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    h[j] = trim(y.data(), X.data() + j, X.cols(), n1);
  }
  return h;
}

EstimatorResult romp(const Matrix& X, const Vector& y, Index k, Index n1) {
  const auto start = std::chrono::steady_clock::now();
  const auto p = static_cast<Index>(X.cols());
  if (k > p) throw InvalidArgument("romp: k exceeds number of columns");
  const Vector h = trimmed_correlations(X, y, n1);
  EstimatorResult out;
  out.support_hat = top_k_support(h, k);
  out.beta_hat = Vector::Zero(X.cols());
  for (Index j : out.support_hat) {
    out.beta_hat[static_cast<Eigen::Index>(j)] = h[static_cast<Eigen::Index>(j)];
  }
  out.diagnostics.iterations = 1;
  out.diagnostics.objective = 0.0;
  out.diagnostics.converged = true;
  out.diagnostics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace romp
