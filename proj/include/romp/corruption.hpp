#pragma once

// Adversarial corruption of regression instances. Every attack returns a new
// instance whose ledger records exactly which rows or cells were written.

#include <optional>
#include <string>
#include <vector>

#include "romp/estimators.hpp"
#include "romp/model.hpp"
#include "romp/rng.hpp"

namespace romp {

/// Decoy-support attack against convex estimators.
///
/// Picks k decoy columns disjoint from the true support and the alternative
/// regressor beta_hat that carries beta*'s values on them. Corrupted rows are
/// zero except on the decoy columns, which hold magnitude * (+-1) / sqrt(n),
/// and y^O = X^O beta_hat.
RegressionInstance attack_sco(const RegressionInstance& inst, double magnitude, Seed seed);

/// The decoy columns chosen by attack_sco for this seed (ascending).
SupportSet sco_decoy_columns(const RegressionInstance& inst, Seed seed);

/// Attack against the exhaustive estimator (beta* must be all ones on its
/// support): y^O = sqrt(k), X^O zero except one designated off-support column
/// equal to y^O.
RegressionInstance attack_bruteforce(const RegressionInstance& inst);

/// Smallest column index outside the true support.
Index designated_column(const RegressionInstance& inst);

/// The competing solution that the brute-force attack makes attractive.
struct AlternativeSolution {
  std::vector<Index> rows;
  SupportSet columns;
  Vector theta;
};
AlternativeSolution bruteforce_alternative(const RegressionInstance& inst);

/// Euclidean projection onto {x : ||x||_1 <= radius} (sorting method).
Vector project_l1_ball(const Vector& v, double radius);

struct ProjectedGradientOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
};

struct ThetaStarResult {
  Vector theta;
  /// 1/2 ||y^A - X^A_{complement} theta||^2
  double objective = 0.0;
  int iterations = 0;
};

/// argmin over ||theta||_1 <= ||beta*||_1 of ||y^A - X^A_{(support)^c} theta||_2,
/// by projected gradient descent with backtracking.
ThetaStarResult solve_theta_star(const RegressionInstance& inst,
                                 const ProjectedGradientOptions& options = {});

/// The ledger-bounded "feasible outlier" attack: corrupted rows put
/// (3 / sqrt(n)) * (+-1) on the support, y^O = -X^O_support beta*, and an
/// off-support slice chosen so that X^O_{i,complement} theta* = y^O_i exactly.
RegressionInstance attack_feasibility(const RegressionInstance& inst, Seed seed,
                                      const Vector* theta_star = nullptr);

/// Distributed-model adversary: for n1 rows, plants same-sign products
/// X_ij y_i = 2 log(p) / n on k decoy columns and the response.
RegressionInstance corrupt_distributed(const RegressionInstance& inst, Index n1, Seed seed);

/// Baseline adversary: n1 outlier rows replaced by i.i.d. N(0, scale^2).
RegressionInstance random_row_corruption(const RegressionInstance& inst, Index n1,
                                         double scale, Seed seed);

enum class AttackName { sco, bruteforce, feasibility, random_rows, distributed_mass };

std::string to_string(AttackName name);
AttackName attack_name_from_string(const std::string& name);

struct AttackSpec {
  AttackName name = AttackName::feasibility;
  /// sco only.
  std::optional<double> magnitude;
  /// random_rows only.
  std::optional<double> scale;
  /// distributed_mass only: per-column budget.
  std::optional<Index> n1;
  Seed seed{};

  /// Throws InvalidArgument when a parameter is missing or meaningless.
  void validate() const;
};

RegressionInstance apply_attack(const RegressionInstance& inst, const AttackSpec& spec);

}  // namespace romp
