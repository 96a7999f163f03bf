#include <cmath>

#include "doctest.h"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/rng.hpp"

using namespace romp;

namespace {

Matrix gaussian(Index r, Index c, std::uint64_t seed) {
  Rng rng(Seed{seed});
  Matrix X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  return X;
}

}  // namespace

TEST_CASE("omp recovers a noiseless signal on orthonormal columns") {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(gaussian(12, 8, 1)));
  const Matrix Q = Eigen::MatrixXd(qr.householderQ()).leftCols(8);
  Vector beta = Vector::Zero(8);
  beta[2] = 3.0;
  beta[5] = -1.5;
  beta[6] = 0.5;
  const EstimatorResult r = matching_pursuit_omp(Q, Q * beta, 3);
  CHECK(r.support_hat == SupportSet({2, 5, 6}, 8));
  CHECK((r.beta_hat - beta).norm() < 1e-12);
}

TEST_CASE("omp edge cases") {
  const Matrix X = gaussian(10, 6, 2);
  const EstimatorResult zero = matching_pursuit_omp(X, Vector::Zero(10), 2);
  CHECK(zero.support_hat == SupportSet({0, 1}, 6));
  CHECK(zero.beta_hat == Vector::Zero(6));

  Rng rng(Seed{3});
  Vector y(10);
  for (auto& v : y) v = rng.normal();
  const Vector corr = X.transpose() * y;
  Eigen::Index best = 0;
  corr.cwiseAbs().maxCoeff(&best);
  CHECK(matching_pursuit_omp(X, y, 1).support_hat == SupportSet({static_cast<Index>(best)}, 6));

  Matrix twin(3, 2);
  twin << 1, 1, 0, 0, 0, 0;
  Vector target(3);
  target << 1, 0, 0;
  CHECK_THROWS_AS(matching_pursuit_omp(twin, target, 2), DegenerateSystemError);
  CHECK_THROWS_AS(matching_pursuit_omp(X, y, 7), InvalidArgument);
}

TEST_CASE("largest_entries takes floor(n1/n * entries) cells") {
  Matrix X(5, 4);
  for (int i = 0; i < 20; ++i) X.data()[i] = i + 1.0;
  // n1 = 1, n = 4: 1/4 of 20 = 5 cells
  CHECK(largest_entries(X, 1) == std::vector<Index>{15, 16, 17, 18, 19});
  CHECK(largest_entries(X, 0).empty());
  Matrix ties = Matrix::Ones(3, 3);
  // n1 = 1, n = 2: floor(9 / 2) = 4 cells, ties to smaller flat index
  CHECK(largest_entries(ties, 1) == std::vector<Index>{0, 1, 2, 3});
  CHECK_THROWS_AS(largest_entries(X, 5), InvalidArgument);
}

TEST_CASE("fill_large_entries keeps signs and unit magnitude") {
  Matrix X(4, 3);
  X << 0.1, -9, 0.2, 0.3, 0.1, -0.2, 7, 0.1, 0.1, 0.2, 0.3, -0.1;
  // n1 = 1, n = 3: floor(12 / 3) = 4 cells
  const Matrix F = fill_large_entries(X, 1);
  CHECK(F(0, 1) == -1.0);
  CHECK(F(2, 0) == 1.0);
  CHECK(F(0, 0) == 0.1);
  CHECK((F.array().abs() <= 1.0).all());
  CHECK(fill_large_entries(X, 1, 0.5)(0, 1) == -0.5);
}

TEST_CASE("jp_fill on an equal-magnitude design matches JP on the rescaled design") {
  Rng rng(Seed{4});
  const double c = 0.125;
  Matrix X(12, 6);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = c * rng.sign();
  Vector y(12);
  for (auto& v : y) v = rng.normal();
  // n1 = 6 of 12 rows selects every entry
  const Matrix F = fill_large_entries(X, 6);
  CHECK(F == X / c);
  const auto filled = jp_fill(X, y, 6, 0.3, 0.2);
  const auto scaled = justice_pursuit(X / c, y, 0.3, 0.2);
  CHECK(top_k_support(filled.beta_hat, 2) == top_k_support(scaled.beta_hat, 2));
  CHECK((filled.beta_hat - scaled.beta_hat).norm() < 1e-9);
}

TEST_CASE("n1 = 0 preprocessing is plain JP") {
  const Matrix X = gaussian(20, 10, 5);
  Rng rng(Seed{6});
  Vector y(20);
  for (auto& v : y) v = rng.normal();
  const auto base = justice_pursuit(X, y, 0.5, 0.4);
  CHECK(jp_fill(X, y, 0, 0.5, 0.4).beta_hat == base.beta_hat);
  CHECK(jp_row(X, y, 0, 0.5, 0.4).beta_hat == base.beta_hat);
  CHECK(jp_row(X, y, 0, 0.5, 0.4).z_hat == base.z_hat);
}

TEST_CASE("jp_row discards an obviously huge row") {
  Matrix X = gaussian(30, 8, 7) / std::sqrt(30.0);
  X.row(11) *= 1e4;
  Rng rng(Seed{8});
  Vector y(30);
  for (auto& v : y) v = rng.normal();
  CHECK(rows_to_discard(X, 1) == std::vector<Index>{11});
  const auto r = jp_row(X, y, 1, 0.1, 0.1);
  CHECK(r.discarded_rows == std::vector<Index>{11});
  CHECK(r.z_hat[11] == 0.0);
  CHECK(r.z_hat.size() == 30);
  CHECK_THROWS_AS(jp_row(X, y, 30, 0.1, 0.1), InvalidArgument);
}
