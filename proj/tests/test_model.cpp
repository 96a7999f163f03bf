#include <cmath>

#include "doctest.h"
#include "romp/errors.hpp"
#include "romp/model.hpp"
#include "romp/rng.hpp"

using namespace romp;

namespace {

Matrix make(Index r, Index c, std::initializer_list<double> v) {
  Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  auto it = v.begin();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = *it++;
  return m;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("SupportSet sorts and validates") {
  SupportSet s({4, 1, 2}, 5);
  CHECK(std::vector<Index>(s.begin(), s.end()) == std::vector<Index>{1, 2, 4});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(3));
  CHECK(s.complement() == SupportSet({0, 3}, 5));
  CHECK(s.intersection_size(SupportSet({2, 3, 4}, 5)) == 2);
  CHECK(SupportSet::prefix(3, 6) == SupportSet({0, 1, 2}, 6));
  CHECK_THROWS_AS(SupportSet({1, 1}, 3), InvalidArgument);
  CHECK_THROWS_AS(SupportSet({3}, 3), InvalidArgument);
}

TEST_CASE("submatrix") {
  const Matrix I = Matrix::Identity(2, 2);
  const std::vector<Index> both{0, 1};
  CHECK(submatrix(I, both, SupportSet({0, 1}, 2)) == I);

  Matrix X(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) X(i, j) = 3 * i + j;
  const std::vector<Index> rows{0, 2};
  const Matrix col = submatrix(X, rows, SupportSet({1}, 3));
  CHECK(col.rows() == 2);
  CHECK(col.cols() == 1);
  CHECK(col(0, 0) == 1.0);
  CHECK(col(1, 0) == 7.0);

  const std::vector<Index> none;
  const Matrix empty = submatrix(X, none, SupportSet({0, 2}, 3));
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 2);

  const std::vector<Index> all{0, 1, 2};
  CHECK(submatrix(X, all, SupportSet::prefix(3, 3)) == X);

  const std::vector<Index> bad{0, 3};
  CHECK_THROWS_AS(submatrix(X, bad, SupportSet({0}, 3)), InvalidArgument);
  CHECK_THROWS_AS(submatrix(X, all, SupportSet({0}, 4)), InvalidArgument);
}

TEST_CASE("dense expansion and sparsify") {
  CHECK(SparseSignal(SupportSet({1}, 4), vec({5})).dense() == vec({0, 5, 0, 0}));
  CHECK(SparseSignal(SupportSet({}, 3), Vector(0)).dense() == Vector::Zero(3));
  const SparseSignal s(SupportSet({0, 4}, 5), vec({1, -1}));
  CHECK(s.dense() == vec({1, 0, 0, 0, -1}));
  CHECK(SparseSignal::sparsify(s.dense()).dense() == s.dense());
  CHECK(SparseSignal::sparsify(s.dense()).support() == s.support());
  CHECK_THROWS_AS(SparseSignal(SupportSet({0}, 2), vec({0.0})), InvalidArgument);
  CHECK_THROWS_AS(SparseSignal(SupportSet({0, 1}, 2), vec({1.0})), InvalidArgument);
}

TEST_CASE("least_squares examples") {
  const Vector b = vec({3, -1, 2});
  CHECK((least_squares(Matrix::Identity(3, 3), b) - b).norm() < 1e-14);
  CHECK(std::abs(least_squares(make(2, 1, {1, 1}), vec({1, 3}))[0] - 2.0) < 1e-14);
  const Vector theta = least_squares(make(3, 2, {1, 0, 0, 1, 1, 1}), vec({1, 1, 2}));
  CHECK(std::abs(theta[0] - 1.0) < 1e-14);
  CHECK(std::abs(theta[1] - 1.0) < 1e-14);
  CHECK_THROWS_AS(least_squares(make(3, 2, {1, 2, 2, 4, 3, 6}), b), DegenerateSystemError);
}

TEST_CASE("least_squares optimality against random candidates") {
  Rng rng(Seed{11});
  Matrix A(30, 5);
  Vector b(30);
  for (Eigen::Index i = 0; i < 30; ++i) {
    b[i] = rng.normal();
    for (Eigen::Index j = 0; j < 5; ++j) A(i, j) = rng.normal();
  }
  const Vector theta = least_squares(A, b);
  const Vector residual = b - A * theta;
  CHECK((A.transpose() * residual).norm() <= 1e-8 * A.norm() * b.norm());
  for (int t = 0; t < 100; ++t) {
    Vector cand = theta;
    for (Eigen::Index j = 0; j < 5; ++j) cand[j] += 0.1 * rng.normal();
    CHECK(residual.norm() <= (b - A * cand).norm() + 1e-8);
  }
}

TEST_CASE("ledger accounting") {
  CorruptionLedger row;
  row.model = CorruptionModel::row;
  row.budget = 2;
  row.rows = {1, 3};
  CHECK_NOTHROW(row.validate(5, 4));
  CHECK(row.covers(3, 2));
  CHECK(row.covers(3, Cell::kResponse));
  CHECK_FALSE(row.covers(2, 0));
  row.rows = {0, 1, 3};
  CHECK_THROWS_AS(row.validate(5, 4), InvalidArgument);

  CorruptionLedger dist;
  dist.model = CorruptionModel::distributed;
  dist.budget = 1;
  dist.cells = {{0, Cell::kResponse}, {0, 2}, {1, 1}};
  CHECK_NOTHROW(dist.validate(3, 3));
  CHECK(dist.covers(0, 2));
  CHECK_FALSE(dist.covers(0, 1));
  dist.cells = {{0, 2}, {1, 2}};
  CHECK_THROWS_AS(dist.validate(3, 3), InvalidArgument);

  CorruptionLedger none;
  CHECK_NOTHROW(none.validate(2, 2));
  none.rows = {0};
  CHECK_THROWS_AS(none.validate(2, 2), InvalidArgument);
}

TEST_CASE("corruption model names round-trip") {
  for (auto m : {CorruptionModel::none, CorruptionModel::row, CorruptionModel::distributed}) {
    CHECK(corruption_model_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(corruption_model_from_string("columns"), InvalidArgument);
}
