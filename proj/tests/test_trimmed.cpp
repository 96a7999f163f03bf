#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/rng.hpp"

using namespace romp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Full sort by (|q|, index), keep the head, add in index order.
double reference(const Vector& a, const Vector& b, Index n1) {
  const Index N = static_cast<Index>(a.size());
  std::vector<Index> order(N);
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> q(N);
  for (Index i = 0; i < N; ++i) q[i] = a[static_cast<Eigen::Index>(i)] * b[static_cast<Eigen::Index>(i)];
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return std::abs(q[x]) < std::abs(q[y]); });
  if (n1 >= N) return 0.0;
  std::vector<Index> kept(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(N - n1));
  std::sort(kept.begin(), kept.end());
  double s = 0.0;
  for (Index i : kept) s += q[i];
  return s;
}

Vector small_ints(Rng& rng, Index n, int range) {
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = static_cast<double>(static_cast<int>(rng.below(2 * range + 1)) - range);
  return v;
}

}  // namespace

TEST_CASE("trimmed inner product hand examples") {
  CHECK(trimmed_inner_product(vec({1, 2, 3}), vec({1, 1, 1}), 1) == 3.0);
  CHECK(trimmed_inner_product(vec({2, -1, 0, 5}), vec({1, 3, 7, -1}), 2) == 2.0);
  CHECK(trimmed_inner_product(vec({1, 2, 3}), vec({4, 5, 6}), 0) == 32.0);
  CHECK(trimmed_inner_product(vec({1, 2, 3}), vec({4, 5, 6}), 3) == 0.0);
  // ties at |q| = 2: the later index is trimmed
  CHECK(trimmed_inner_product(vec({2, -2, 1}), vec({1, 1, 1}), 1) == 3.0);
  CHECK(trimmed_inner_product(vec({-2, 2, 1}), vec({1, 1, 1}), 1) == -1.0);
  CHECK_THROWS_AS(trimmed_inner_product(vec({1, 2}), vec({1}), 0), InvalidArgument);
  CHECK_THROWS_AS(trimmed_inner_product(vec({1, 2}), vec({1, 2}), 3), InvalidArgument);
}

TEST_CASE("n1 = 0 is the plain inner product") {
  Rng rng(Seed{1});
  for (int t = 0; t < 200; ++t) {
    const Vector a = small_ints(rng, 17, 9), b = small_ints(rng, 17, 9);
    CHECK(trimmed_inner_product(a, b, 0) == a.dot(b));
  }
}

TEST_CASE("matches the sort-based reference exactly, including ties") {
  Rng rng(Seed{2});
  for (int t = 0; t < 5000; ++t) {
    const Index N = 1 + rng.below(40);
    const Index n1 = rng.below(N + 1);
    Vector a, b;
    if (t % 2 == 0) {
      a = small_ints(rng, N, 3);
      b = small_ints(rng, N, 3);
    } else {
      a.resize(static_cast<Eigen::Index>(N));
      b.resize(static_cast<Eigen::Index>(N));
      for (auto& x : a) x = rng.normal();
      for (auto& x : b) x = rng.normal();
    }
    REQUIRE(trimmed_inner_product(a, b, n1) == reference(a, b, n1));
  }
}

TEST_CASE("integer data: full sum minus the n1 largest products") {
  Rng rng(Seed{3});
  for (int t = 0; t < 500; ++t) {
    const Index N = 1 + rng.below(30);
    const Index n1 = rng.below(N + 1);
    const Vector a = small_ints(rng, N, 5), b = small_ints(rng, N, 5);
    std::vector<std::pair<double, Index>> q;
    for (Index i = 0; i < N; ++i) q.push_back({std::abs(a[static_cast<Eigen::Index>(i)] * b[static_cast<Eigen::Index>(i)]), i});
    std::sort(q.begin(), q.end());
    double dropped = 0.0;
    for (Index r = N - n1; r < N; ++r) dropped += a[static_cast<Eigen::Index>(q[r].second)] * b[static_cast<Eigen::Index>(q[r].second)];
    CHECK(trimmed_inner_product(a, b, n1) == a.dot(b) - dropped);
  }
}

TEST_CASE("scaling equivariance and permutation invariance") {
  Rng rng(Seed{4});
  for (int t = 0; t < 300; ++t) {
    const Index N = 2 + rng.below(25);
    const Index n1 = rng.below(N + 1);
    Vector a(static_cast<Eigen::Index>(N)), b(static_cast<Eigen::Index>(N));
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal();
    const double base = trimmed_inner_product(a, b, n1);
    for (double c : {2.0, 0.25, -1.0, -1024.0}) {
      CHECK(trimmed_inner_product(c * a, b, n1) == c * base);
    }
    const Vector ia = small_ints(rng, N, 7), ib = small_ints(rng, N, 7);
    CHECK(trimmed_inner_product(-3.0 * ia, ib, n1) == -3.0 * trimmed_inner_product(ia, ib, n1));

    std::vector<Index> perm(N);
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = N - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    Vector pa(a.size()), pb(b.size());
    for (Index i = 0; i < N; ++i) {
      pa[static_cast<Eigen::Index>(i)] = a[static_cast<Eigen::Index>(perm[i])];
      pb[static_cast<Eigen::Index>(i)] = b[static_cast<Eigen::Index>(perm[i])];
    }
    CHECK(trimmed_inner_product(pa, pb, n1) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("top_k_support") {
  CHECK(top_k_support(vec({0, 5, -7, 1}), 2) == SupportSet({1, 2}, 4));
  CHECK(top_k_support(Vector::Zero(6), 3) == SupportSet({0, 1, 2}, 6));
  CHECK(top_k_support(vec({1, -1, 1, -1}), 2) == SupportSet({0, 1}, 4));
  Rng rng(Seed{5});
  Vector v(50);
  for (auto& x : v) x = rng.normal();
  std::vector<Index> idx(50);
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index x, Index y) {
    return std::abs(v[static_cast<Eigen::Index>(x)]) > std::abs(v[static_cast<Eigen::Index>(y)]);
  });
  idx.resize(7);
  CHECK(top_k_support(v, 7) == SupportSet(idx, 50));
  CHECK_THROWS_AS(top_k_support(v, 51), InvalidArgument);
}

TEST_CASE("romp examples") {
  const Matrix I = Matrix::Identity(4, 4);
  const EstimatorResult r = romp::romp(I, vec({5, 0, 0, 0}), 1, 0);
  CHECK(r.support_hat == SupportSet({0}, 4));
  CHECK(r.beta_hat == vec({5, 0, 0, 0}));

  const EstimatorResult full = romp::romp(I, vec({5, 1, 2, 3}), 2, 4);
  CHECK(full.support_hat == SupportSet({0, 1}, 4));
  CHECK(full.beta_hat == Vector::Zero(4));

  CHECK_THROWS_AS(romp::romp(I, vec({1, 2, 3, 4}), 5, 0), InvalidArgument);
}

TEST_CASE("romp support is invariant to positive scaling of y") {
  Rng rng(Seed{6});
  Matrix X(60, 30);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  Vector y(60);
  for (auto& x : y) x = rng.normal();
  const SupportSet base = romp::romp(X, y, 4, 5).support_hat;
  for (double c : {0.001, 0.5, 3.0, 1e6}) CHECK(romp::romp(X, c * y, 4, 5).support_hat == base);
  const Vector h = trimmed_correlations(X, y, 5);
  CHECK(h[3] == trimmed_inner_product(y, X.col(3), 5));
}
