#include <cmath>

#include "doctest.h"
#include "romp/datagen.hpp"
#include "romp/errors.hpp"

using namespace romp;

TEST_CASE("gaussian design variance at the full experimental scale") {
  const Matrix X = sample_design(1600, 4000, {DesignKind::gaussian, 1600}, Seed{1});
  const double var = X.squaredNorm() / static_cast<double>(X.size());
  CHECK(std::abs(var * 1600.0 - 1.0) < 0.05);
  const double mean = X.sum() / static_cast<double>(X.size());
  // within 3 standard errors of zero
  CHECK(std::abs(mean) < 3.0 * std::sqrt(1.0 / 1600.0 / static_cast<double>(X.size())));
}

TEST_CASE("rademacher entries are exactly +-1/sqrt(n)") {
  const Matrix X = sample_design(4, 50, {DesignKind::rademacher, 4}, Seed{2});
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    CHECK(std::abs(X.data()[i]) == 0.5);
  }
  CHECK((X.array() > 0).count() > 0);
  CHECK((X.array() < 0).count() > 0);
}

TEST_CASE("design is deterministic per seed") {
  const DesignDistribution d{DesignKind::gaussian, 10};
  CHECK(sample_design(7, 9, d, Seed{3}) == sample_design(7, 9, d, Seed{3}));
  CHECK(sample_design(7, 9, d, Seed{3}) != sample_design(7, 9, d, Seed{4}));
  CHECK_THROWS_AS(sample_design(0, 9, d, Seed{3}), InvalidArgument);
}

TEST_CASE("signal schemes") {
  SignalScheme ones{SignalKind::ones, 3, std::vector<Index>{0, 1, 2}, {}};
  const SparseSignal s = sample_signal(6, ones, Seed{1});
  CHECK(s.support() == SupportSet({0, 1, 2}, 6));
  CHECK(s.values() == Vector::Ones(3));

  SignalScheme pm{SignalKind::pm_one, 10, std::nullopt, {}};
  const SparseSignal b = sample_signal(4000, pm, Seed{2});
  CHECK(b.dense().squaredNorm() == 10.0);
  CHECK(b.sparsity() == 10);

  SignalScheme fixed{SignalKind::fixed_values, 2, std::vector<Index>{3, 7}, {2.0, -3.0}};
  const Vector f = sample_signal(10, fixed, Seed{3}).dense();
  CHECK(f[3] == 2.0);
  CHECK(f[7] == -3.0);
  CHECK(f.cwiseAbs().sum() == 5.0);

  SignalScheme too_big{SignalKind::pm_one, 5, std::nullopt, {}};
  CHECK_THROWS_AS(sample_signal(4, too_big, Seed{1}), InvalidArgument);
}

TEST_CASE("random support is uniform over columns") {
  std::vector<int> hits(20, 0);
  SignalScheme pm{SignalKind::pm_one, 4, std::nullopt, {}};
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const SparseSignal sig = sample_signal(20, pm, Seed{static_cast<std::uint64_t>(t)});
    for (Index j : sig.support()) ++hits[j];
  }
  // each column is included with probability k/p = 0.2
  const double expected = 0.2 * trials;
  const double sd = std::sqrt(trials * 0.2 * 0.8);
  for (int h : hits) CHECK(std::abs(h - expected) < 4.5 * sd);
}

TEST_CASE("assemble_instance") {
  InstanceParams params;
  params.n = 400;
  params.n1 = 0;
  params.p = 50;
  params.signal = {SignalKind::pm_one, 5, std::nullopt, {}};
  params.noise_sigma = 0.0;
  const RegressionInstance clean = assemble_instance(params, Seed{4});
  CHECK(clean.num_rows() == 400);
  CHECK((clean.y - clean.X * clean.truth.dense()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(clean.outlier_rows().empty());
  CHECK(clean.ledger.model == CorruptionModel::none);

  params.noise_sigma = 2.0;
  params.n1 = 40;
  const RegressionInstance noisy = assemble_instance(params, Seed{5});
  CHECK(noisy.num_rows() == 440);
  CHECK(noisy.authentic_rows.size() == 400);
  CHECK(noisy.outlier_rows().size() == 40);
  const Vector e = noisy.y - noisy.X * noisy.truth.dense();
  const double sd = std::sqrt(e.squaredNorm() / static_cast<double>(e.size()));
  CHECK(std::abs(sd / (2.0 / std::sqrt(400.0)) - 1.0) < 0.1);
  CHECK_NOTHROW(noisy.validate());

  const RegressionInstance again = assemble_instance(params, Seed{5});
  CHECK(again.X == noisy.X);
  CHECK(again.y == noisy.y);
  CHECK(again.authentic_rows == noisy.authentic_rows);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {DesignKind::gaussian, DesignKind::rademacher}) {
    CHECK(design_kind_from_string(to_string(k)) == k);
  }
  for (auto k : {SignalKind::pm_one, SignalKind::fixed_values, SignalKind::ones}) {
    CHECK(signal_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(design_kind_from_string("cauchy"), InvalidArgument);
}
