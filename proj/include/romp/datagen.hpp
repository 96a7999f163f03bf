#pragma once

// Authentic data under the sub-Gaussian design model.

#include <optional>
#include <string>
#include <vector>

#include "romp/model.hpp"
#include "romp/rng.hpp"

namespace romp {

enum class DesignKind { gaussian, rademacher };

/// Entry distribution of the design. Entries have variance exactly 1/n.
struct DesignDistribution {
  DesignKind kind = DesignKind::gaussian;
  Index n = 1;

  double scale() const;
};

enum class SignalKind { pm_one, fixed_values, ones };

struct SignalScheme {
  SignalKind kind = SignalKind::pm_one;
  Index k = 0;
  /// Prescribed support; a uniformly random k-subset when absent.
  std::optional<std::vector<Index>> support;
  /// Values for fixed_values, in support order.
  std::vector<double> values;
};

std::string to_string(DesignKind kind);
DesignKind design_kind_from_string(const std::string& name);
std::string to_string(SignalKind kind);
SignalKind signal_kind_from_string(const std::string& name);

Matrix sample_design(Index rows, Index cols, const DesignDistribution& dist, Seed seed);

SparseSignal sample_signal(Index p, const SignalScheme& scheme, Seed seed);

struct InstanceParams {
  Index n = 0;
  Index n1 = 0;
  Index p = 0;
  DesignKind design = DesignKind::gaussian;
  SignalScheme signal;
  double noise_sigma = 0.0;
};

/// n + n1 rows, all generated authentically: y = X beta* + e with
/// e ~ N(0, sigma_e^2 / n). A uniformly random n-subset is labelled
/// authentic; the remaining n1 rows are the ones attacks may overwrite.
RegressionInstance assemble_instance(const InstanceParams& params, Seed seed);

}  // namespace romp
