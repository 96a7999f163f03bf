#include <cmath>

#include "doctest.h"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/rng.hpp"

using namespace romp;

namespace {

Matrix gaussian(Index r, Index c, std::uint64_t seed, double scale = 1.0) {
  Rng rng(Seed{seed});
  Matrix X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = scale * rng.normal();
  return X;
}

Vector noise(Index n, std::uint64_t seed) {
  Rng rng(Seed{seed});
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = rng.normal();
  return v;
}

double soft(double v, double t) { return v > t ? v - t : (v < -t ? v + t : 0.0); }

void check_kkt(const Matrix& X, const Vector& r, const Vector& coef, double weight,
               double tol = 1e-6) {
  const Vector g = X.transpose() * r;
  for (Eigen::Index j = 0; j < coef.size(); ++j) {
    if (coef[j] != 0.0) {
      CHECK(std::abs(g[j] - weight * (coef[j] > 0 ? 1.0 : -1.0)) <= tol);
    } else {
      CHECK(std::abs(g[j]) <= weight + tol);
    }
  }
}

}  // namespace

TEST_CASE("lasso with lambda = 0 on a square full-rank X is least squares") {
  const Matrix X = gaussian(6, 6, 1) + 4.0 * Matrix::Identity(6, 6);
  const Vector y = noise(6, 2);
  const Vector beta = lasso(X, y, 0.0).beta_hat;
  CHECK((beta - least_squares(X, y)).norm() < 1e-6);
}

TEST_CASE("lasso on orthonormal columns is soft-thresholding") {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(gaussian(20, 7, 3)));
  const Matrix Q = Eigen::MatrixXd(qr.householderQ()).leftCols(7);
  const Vector y = noise(20, 4);
  const Vector corr = Q.transpose() * y;
  const double lambda = 0.4;
  const Vector beta = lasso(Q, y, lambda).beta_hat;
  for (Eigen::Index j = 0; j < 7; ++j) CHECK(std::abs(beta[j] - soft(corr[j], lambda)) < 1e-9);
}

TEST_CASE("lasso returns zero above lambda_max") {
  const Matrix X = gaussian(15, 9, 5);
  const Vector y = noise(15, 6);
  const double lmax = (X.transpose() * y).cwiseAbs().maxCoeff();
  CHECK(lasso(X, y, lmax).beta_hat.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(lasso(X, y, 2.0 * lmax).beta_hat == Vector::Zero(9));
}

TEST_CASE("lasso KKT conditions and monotone objective") {
  const Matrix X = gaussian(80, 120, 7, 1.0 / std::sqrt(80.0));
  Vector beta_true = Vector::Zero(120);
  beta_true[3] = 1;
  beta_true[50] = -1;
  beta_true[99] = 1;
  const Vector y = X * beta_true + 0.1 * noise(80, 8);
  for (double lambda : {0.01, 0.05, 0.2}) {
    std::vector<double> trace;
    CoordinateDescentOptions opt;
    opt.on_sweep = [&](int, double obj) { trace.push_back(obj); };
    const LassoResult res = lasso(X, y, lambda, opt);
    CHECK(res.diagnostics.converged);
    for (std::size_t s = 1; s < trace.size(); ++s) {
      CHECK(trace[s] <= trace[s - 1] * (1 + 1e-14) + 1e-300);
    }
    // a relative objective change of 1e-8 leaves gradient errors near 1e-5
    check_kkt(X, y - X * res.beta_hat, res.beta_hat, lambda, 1e-4);
    CoordinateDescentOptions tight;
    tight.tolerance = 1e-15;
    const Vector fine = lasso(X, y, lambda, tight).beta_hat;
    check_kkt(X, y - X * fine, fine, lambda, 1e-7);
  }
}

TEST_CASE("lasso warm start reaches the same solution") {
  const Matrix X = gaussian(40, 30, 9, 0.2);
  const Vector y = noise(40, 10);
  CoordinateDescentOptions tight;
  tight.tolerance = 1e-15;
  const Vector cold = lasso(X, y, 0.05, tight).beta_hat;
  const Vector start = lasso(X, y, 0.5).beta_hat;
  const Vector warm = lasso(X, y, 0.05, tight, &start).beta_hat;
  CHECK((cold - warm).norm() < 1e-6);
  const auto loose = lasso(X, y, 0.05, {}, &start);
  const double best = lasso(X, y, 0.05, tight).diagnostics.objective;
  CHECK(loose.diagnostics.objective <= best * (1 + 1e-6));
}

TEST_CASE("convergence failure carries the last iterate") {
  const Matrix X = gaussian(40, 30, 11, 0.2);
  const Vector y = noise(40, 12);
  CoordinateDescentOptions opt;
  opt.max_sweeps = 1;
  opt.tolerance = 0.0;
  try {
    lasso(X, y, 0.01, opt);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == 30);
    CHECK(e.iterations() == 1);
  }
  try {
    justice_pursuit(X, y, 0.01, 0.1, opt);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == 70);
  }
  CHECK_THROWS_AS(lasso(X, y, -1.0), InvalidArgument);
}

TEST_CASE("justice pursuit with a large gamma reduces to lasso") {
  const Matrix X = gaussian(30, 20, 13, 0.3);
  const Vector y = noise(30, 14);
  const double gamma = y.norm() * 1.01;
  const auto jp = justice_pursuit(X, y, 0.1, gamma);
  CHECK(jp.z_hat == Vector::Zero(30));
  CHECK((jp.beta_hat - lasso(X, y, 0.1).beta_hat).norm() < 1e-6);
}

TEST_CASE("justice pursuit separable closed forms") {
  const Vector y = noise(12, 15);
  const double gamma = 0.5;
  const auto zero_x = justice_pursuit(Matrix::Zero(12, 4), y, 0.3, gamma);
  CHECK(zero_x.beta_hat == Vector::Zero(4));
  for (Eigen::Index i = 0; i < 12; ++i) CHECK(zero_x.z_hat[i] == doctest::Approx(soft(-y[i], gamma)));

  const Matrix X = gaussian(12, 5, 16);
  const auto big_lambda = justice_pursuit(X, y, 1e6, gamma);
  CHECK(big_lambda.beta_hat == Vector::Zero(5));
  for (Eigen::Index i = 0; i < 12; ++i) {
    CHECK(big_lambda.z_hat[i] == doctest::Approx(soft(-y[i], gamma)));
  }
}

TEST_CASE("justice pursuit KKT conditions and monotone objective") {
  const Matrix X = gaussian(60, 90, 17, 1.0 / std::sqrt(60.0));
  Vector beta_true = Vector::Zero(90);
  beta_true[1] = 1;
  beta_true[40] = -1;
  Vector y = X * beta_true + 0.05 * noise(60, 18);
  y[5] += 3.0;
  y[17] -= 4.0;
  std::vector<double> trace;
  CoordinateDescentOptions opt;
  opt.on_sweep = [&](int, double obj) { trace.push_back(obj); };
  const double lambda = 0.02, gamma = 0.1;
  const auto res = justice_pursuit(X, y, lambda, gamma, opt);
  for (std::size_t s = 1; s < trace.size(); ++s) {
    CHECK(trace[s] <= trace[s - 1] * (1 + 1e-14) + 1e-300);
  }
  CoordinateDescentOptions tight;
  tight.tolerance = 1e-15;
  const auto fine = justice_pursuit(X, y, lambda, gamma, tight);
  const Vector r = y + fine.z_hat - X * fine.beta_hat;
  check_kkt(X, r, fine.beta_hat, lambda, 1e-7);
  // d/dz of 1/2||y + z - X beta||^2 is r; the z-block KKT uses -r
  check_kkt(Matrix::Identity(60, 60), -r, fine.z_hat, gamma, 1e-7);
  CHECK(res.z_hat[5] < 0.0);
  CHECK(res.z_hat[17] > 0.0);
  CHECK(justice_pursuit_objective(X, y, res.beta_hat, res.z_hat, lambda, gamma) ==
        doctest::Approx(res.diagnostics.objective).epsilon(1e-12));
}
