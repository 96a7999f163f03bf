#include "romp/datagen.hpp"

#include <cmath>

#include "romp/errors.hpp"

namespace romp {

double DesignDistribution::scale() const {
  if (n == 0) throw InvalidArgument("design normalization n must be positive");
  return 1.0 / std::sqrt(static_cast<double>(n));
}

std::string to_string(DesignKind kind) {
  return kind == DesignKind::gaussian ? "gaussian" : "rademacher";
}

DesignKind design_kind_from_string(const std::string& name) {
  if (name == "gaussian") return DesignKind::gaussian;
  if (name == "rademacher") return DesignKind::rademacher;
  throw InvalidArgument("unknown design distribution: " + name);
}

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::pm_one: return "pm_one";
    case SignalKind::fixed_values: return "fixed_values";
    case SignalKind::ones: return "ones";
  }
  return "pm_one";
}

SignalKind signal_kind_from_string(const std::string& name) {
  if (name == "pm_one") return SignalKind::pm_one;
  if (name == "fixed_values") return SignalKind::fixed_values;
  if (name == "ones") return SignalKind::ones;
  throw InvalidArgument("unknown signal scheme: " + name);
}

Matrix sample_design(Index rows, Index cols, const DesignDistribution& dist, Seed seed) {
  if (rows == 0 || cols == 0) throw InvalidArgument("sample_design: rows and cols must be >= 1");
  const double s = dist.scale();
  Rng rng(seed);
  Matrix X(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  double* data = X.data();
  const Index count = rows * cols;
  if (dist.kind == DesignKind::gaussian) {
    for (Index i = 0; i < count; ++i) data[i] = s * rng.normal();
  } else {
    for (Index i = 0; i < count; ++i) data[i] = s * rng.sign();
  }
  return X;
}

SparseSignal sample_signal(Index p, const SignalScheme& scheme, Seed seed) {
  if (scheme.k > p) throw InvalidArgument("sample_signal: k exceeds p");
  Rng rng(seed.derive("support"));
  std::vector<Index> support;
  if (scheme.support) {
    support = *scheme.support;
    if (support.size() != scheme.k) {
      throw InvalidArgument("sample_signal: prescribed support size differs from k");
    }
  } else {
    support = rng.subset(p, scheme.k);
  }
  SupportSet set(std::move(support), p);

  Vector values(static_cast<Eigen::Index>(scheme.k));
  Rng value_rng(seed.derive("values"));
  for (Index i = 0; i < scheme.k; ++i) {
    const auto ei = static_cast<Eigen::Index>(i);
    switch (scheme.kind) {
      case SignalKind::pm_one: values[ei] = value_rng.sign(); break;
      case SignalKind::ones: values[ei] = 1.0; break;
      case SignalKind::fixed_values:
        if (scheme.values.size() != scheme.k) {
          throw InvalidArgument("sample_signal: fixed_values needs exactly k values");
        }
        values[ei] = scheme.values[i];
        break;
    }
  }
  if (scheme.kind == SignalKind::fixed_values && scheme.support) {
    // Values follow the caller's support order, which may not be sorted.
    const auto& given = *scheme.support;
    for (Index i = 0; i < scheme.k; ++i) {
      for (Index pos = 0; pos < set.size(); ++pos) {
        if (set[pos] == given[i]) values[static_cast<Eigen::Index>(pos)] = scheme.values[i];
      }
    }
  }
  return SparseSignal(std::move(set), std::move(values));
}

RegressionInstance assemble_instance(const InstanceParams& params, Seed seed) {
  if (params.n == 0 || params.p == 0) {
    throw InvalidArgument("assemble_instance: n and p must be positive");
  }
  if (params.noise_sigma < 0.0 || !std::isfinite(params.noise_sigma)) {
    throw InvalidArgument("assemble_instance: noise sigma must be finite and >= 0");
  }
  const Index rows = params.n + params.n1;
  RegressionInstance inst;
  inst.n = params.n;
  inst.noise_sigma = params.noise_sigma;
  inst.truth = sample_signal(params.p, params.signal, seed.derive("signal"));
  inst.X = sample_design(rows, params.p, DesignDistribution{params.design, params.n},
                         seed.derive("design"));

  inst.y.resize(static_cast<Eigen::Index>(rows));
  const auto& support = inst.truth.support();
  const Vector& values = inst.truth.values();
  for (Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (Index s = 0; s < support.size(); ++s) {
      acc += inst.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(support[s])) *
             values[static_cast<Eigen::Index>(s)];
    }
    inst.y[static_cast<Eigen::Index>(i)] = acc;
  }
  if (params.noise_sigma > 0.0) {
    Rng noise(seed.derive("noise"));
    const double sd = params.noise_sigma / std::sqrt(static_cast<double>(params.n));
    for (Index i = 0; i < rows; ++i) inst.y[static_cast<Eigen::Index>(i)] += sd * noise.normal();
  }

  Rng split(seed.derive("authentic"));
  inst.authentic_rows = split.subset(rows, params.n);
  inst.ledger.model = CorruptionModel::none;
  inst.ledger.budget = params.n1;
  return inst;
}

}  // namespace romp
