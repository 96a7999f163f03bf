#include "romp/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "romp/errors.hpp"

namespace romp {
namespace {

void require_clean(const RegressionInstance& inst, const char* who) {
  if (inst.ledger.model != CorruptionModel::none) {
    throw InvalidArgument(std::string(who) + ": instance already carries an attack ('" +
                          inst.ledger.attack_name + "')");
  }
}

void mark_rows(RegressionInstance& inst, std::vector<Index> rows, const char* attack) {
  inst.ledger.model = CorruptionModel::row;
  inst.ledger.budget = rows.size();
  inst.ledger.attack_name = attack;
  inst.ledger.rows = std::move(rows);
  inst.ledger.cells.clear();
}

double inv_sqrt_n(const RegressionInstance& inst) {
  if (inst.n == 0) throw InvalidArgument("instance normalization n is zero");
  return 1.0 / std::sqrt(static_cast<double>(inst.n));
}

}  // namespace

SupportSet sco_decoy_columns(const RegressionInstance& inst, Seed seed) {
  const SupportSet& support = inst.truth.support();
  const Index k = support.size();
  const Index p = inst.num_cols();
  if (p < 2 * k) throw InvalidArgument("attack_sco: need p >= 2k for a disjoint decoy set");
  const SupportSet off = support.complement();
  Rng rng(seed.derive("sco-decoy"));
  std::vector<Index> decoy;
  for (Index pos : rng.subset(off.size(), k)) decoy.push_back(off[pos]);
  return SupportSet(std::move(decoy), p);
}

RegressionInstance attack_sco(const RegressionInstance& inst, double magnitude, Seed seed) {
  require_clean(inst, "attack_sco");
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw InvalidArgument("attack_sco: magnitude must be finite and >= 0");
  }
  const std::vector<Index> outliers = inst.outlier_rows();
  if (outliers.empty()) throw InvalidArgument("attack_sco: needs n1 >= 1 outlier rows");
  const SupportSet decoy = sco_decoy_columns(inst, seed);
  const Vector& values = inst.truth.values();
  const double s = magnitude * inv_sqrt_n(inst);

  RegressionInstance out = inst;
  Rng rng(seed.derive("sco-signs"));
  for (Index i : outliers) {
    const auto r = static_cast<Eigen::Index>(i);
    out.X.row(r).setZero();
    double response = 0.0;
    for (Index d = 0; d < decoy.size(); ++d) {
      const double entry = s * rng.sign();
      out.X(r, static_cast<Eigen::Index>(decoy[d])) = entry;
      response += entry * values[static_cast<Eigen::Index>(d)];
    }
    out.y[r] = response;
  }
  mark_rows(out, outliers, "sco");
  return out;
}

Index designated_column(const RegressionInstance& inst) {
  const SupportSet& support = inst.truth.support();
  for (Index j = 0; j < inst.num_cols(); ++j) {
    if (!support.contains(j)) return j;
  }
  throw InvalidArgument("attack_bruteforce: no column outside the support");
}

RegressionInstance attack_bruteforce(const RegressionInstance& inst) {
  require_clean(inst, "attack_bruteforce");
  const Vector& values = inst.truth.values();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] != 1.0) {
      throw InvalidArgument("attack_bruteforce: beta* must be all ones on its support");
    }
  }
  const Index col = designated_column(inst);
  const double root_k = std::sqrt(static_cast<double>(inst.truth.sparsity()));
  const std::vector<Index> outliers = inst.outlier_rows();
  RegressionInstance out = inst;
  for (Index i : outliers) {
    const auto r = static_cast<Eigen::Index>(i);
    out.X.row(r).setZero();
    out.X(r, static_cast<Eigen::Index>(col)) = root_k;
    out.y[r] = root_k;
  }
  mark_rows(out, outliers, "bruteforce");
  return out;
}

AlternativeSolution bruteforce_alternative(const RegressionInstance& inst) {
  const SupportSet& support = inst.truth.support();
  if (support.empty()) throw InvalidArgument("bruteforce_alternative: empty support");
  std::vector<Index> cols(support.begin() + 1, support.end());
  cols.push_back(designated_column(inst));

  const std::vector<Index> outliers = inst.outlier_rows();
  const Index n1 = outliers.size();
  std::vector<Index> rows;
  if (n1 >= inst.authentic_rows.size()) {
    rows.assign(outliers.begin(),
                outliers.begin() + static_cast<std::ptrdiff_t>(inst.authentic_rows.size()));
  } else {
    rows = outliers;
    rows.insert(rows.end(), inst.authentic_rows.begin() + static_cast<std::ptrdiff_t>(n1),
                inst.authentic_rows.end());
    std::sort(rows.begin(), rows.end());
  }
  AlternativeSolution alt{std::move(rows), SupportSet(std::move(cols), inst.num_cols()),
                          Vector::Ones(static_cast<Eigen::Index>(support.size()))};
  return alt;
}

Vector project_l1_ball(const Vector& v, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("project_l1_ball: radius must be >= 0");
  if (v.lpNorm<1>() <= radius) return v;
  if (radius == 0.0) return Vector::Zero(v.size());
  std::vector<double> u(static_cast<Index>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) u[static_cast<Index>(i)] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Index j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  Vector w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double shrunk = std::max(std::abs(v[i]) - tau, 0.0);
    w[i] = v[i] < 0.0 ? -shrunk : shrunk;
  }
  return w;
}

ThetaStarResult solve_theta_star(const RegressionInstance& inst,
                                 const ProjectedGradientOptions& options) {
  const SupportSet off = inst.truth.support().complement();
  const Eigen::MatrixXd A = submatrix(inst.X, inst.authentic_rows, off);
  const Vector b = subvector(inst.y, inst.authentic_rows);
  const double radius = inst.truth.values().lpNorm<1>();

  auto objective = [&](const Vector& theta) { return 0.5 * (b - A * theta).squaredNorm(); };

  ThetaStarResult out;
  Vector theta = Vector::Zero(A.cols());
  double f = objective(theta);
  double step = 1.0;
  bool converged = false;
  int it = 0;
  while (it < options.max_iterations) {
    ++it;
    const Vector grad = A.transpose() * (A * theta - b);
    Vector next;
    double f_next;
    step *= 2.0;
    for (;;) {
      next = project_l1_ball(theta - step * grad, radius);
      f_next = objective(next);
      const Vector diff = next - theta;
      const double model = f + grad.dot(diff) + diff.squaredNorm() / (2.0 * step);
      if (f_next <= model || step < 1e-300) break;
      step *= 0.5;
    }
    const double change = f - f_next;
    theta = std::move(next);
    const double previous = f;
    f = f_next;
    if (change <= options.tolerance * std::max(previous, std::numeric_limits<double>::min())) {
      converged = true;
      break;
    }
  }
  out.theta = std::move(theta);
  out.objective = f;
  out.iterations = it;
  if (!converged) {
    throw ConvergenceError("solve_theta_star: no convergence after " + std::to_string(it) +
                               " iterations",
                           out.theta, it);
  }
  return out;
}

RegressionInstance attack_feasibility(const RegressionInstance& inst, Seed seed,
                                      const Vector* theta_star) {
  require_clean(inst, "attack_feasibility");
  const SupportSet& support = inst.truth.support();
  const SupportSet off = support.complement();
  Vector theta = theta_star ? *theta_star : solve_theta_star(inst).theta;
  if (static_cast<Index>(theta.size()) != off.size()) {
    throw InvalidArgument("attack_feasibility: theta* must have length p - k");
  }
  if (theta.norm() < 1e-10) {
    throw AttackDegenerateError("attack_feasibility: theta* is numerically zero");
  }
  const double s = 3.0 * inv_sqrt_n(inst);
  const Vector& values = inst.truth.values();
  const std::vector<Index> outliers = inst.outlier_rows();

  RegressionInstance out = inst;
  Rng signs(seed.derive("feasibility-signs"));
  Rng gauss(seed.derive("feasibility-directions"));
  Vector B(theta.size());
  for (Index i : outliers) {
    const auto r = static_cast<Eigen::Index>(i);
    double response = 0.0;
    for (Index pos = 0; pos < support.size(); ++pos) {
      const double entry = s * signs.sign();
      out.X(r, static_cast<Eigen::Index>(support[pos])) = entry;
      response -= entry * values[static_cast<Eigen::Index>(pos)];
    }
    out.y[r] = response;
    double projection = 0.0;
    do {
      for (Eigen::Index c = 0; c < B.size(); ++c) B[c] = gauss.normal();
      projection = B.dot(theta);
    } while (std::abs(projection) <= 1e-8);
    const double factor = response / projection;
    for (Index c = 0; c < off.size(); ++c) {
      out.X(r, static_cast<Eigen::Index>(off[c])) = factor * B[static_cast<Eigen::Index>(c)];
    }
  }
  mark_rows(out, outliers, "feasibility");
  return out;
}

RegressionInstance corrupt_distributed(const RegressionInstance& inst, Index n1, Seed seed) {
  require_clean(inst, "corrupt_distributed");
  const Index rows = inst.num_rows();
  const Index p = inst.num_cols();
  if (n1 > rows) throw InvalidArgument("corrupt_distributed: n1 exceeds the row count");

  RegressionInstance out = inst;
  out.ledger.model = CorruptionModel::distributed;
  out.ledger.budget = n1;
  out.ledger.attack_name = "distributed_mass";
  out.ledger.rows.clear();
  out.ledger.cells.clear();
  if (n1 == 0) return out;

  const SupportSet decoy = sco_decoy_columns(inst, seed.derive("distributed-decoy"));
  Rng pick(seed.derive("distributed-rows"));
  const std::vector<Index> chosen = pick.subset(rows, n1);
  Rng signs(seed.derive("distributed-signs"));

  const double log_p = std::log(static_cast<double>(p));
  const double n = static_cast<double>(inst.n);
  const double x_mag = std::sqrt(log_p / n);
  const double y_mag = 2.0 * log_p / n / x_mag;
  for (Index i : chosen) {
    const auto r = static_cast<Eigen::Index>(i);
    const double s = signs.sign();
    out.y[r] = s * y_mag;
    out.ledger.cells.push_back(Cell{i, Cell::kResponse});
    for (Index j : decoy) {
      out.X(r, static_cast<Eigen::Index>(j)) = s * x_mag;
      out.ledger.cells.push_back(Cell{i, static_cast<std::int64_t>(j)});
    }
  }
  std::sort(out.ledger.cells.begin(), out.ledger.cells.end());
  return out;
}

RegressionInstance random_row_corruption(const RegressionInstance& inst, Index n1,
                                         double scale, Seed seed) {
  require_clean(inst, "random_row_corruption");
  if (!(scale >= 0.0)) throw InvalidArgument("random_row_corruption: scale must be >= 0");
  const std::vector<Index> outliers = inst.outlier_rows();
  if (n1 > outliers.size()) {
    throw InvalidArgument("random_row_corruption: n1 exceeds the number of outlier rows");
  }
  Rng pick(seed.derive("random-rows-pick"));
  std::vector<Index> rows;
  for (Index pos : pick.subset(outliers.size(), n1)) rows.push_back(outliers[pos]);

  RegressionInstance out = inst;
  Rng gauss(seed.derive("random-rows-values"));
  for (Index i : rows) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index c = 0; c < out.X.cols(); ++c) out.X(r, c) = scale * gauss.normal();
    out.y[r] = scale * gauss.normal();
  }
  mark_rows(out, std::move(rows), "random_rows");
  out.ledger.budget = outliers.size();
  return out;
}

std::string to_string(AttackName name) {
  switch (name) {
    case AttackName::sco: return "sco";
    case AttackName::bruteforce: return "bruteforce";
    case AttackName::feasibility: return "feasibility";
    case AttackName::random_rows: return "random_rows";
    case AttackName::distributed_mass: return "distributed_mass";
  }
  return "feasibility";
}

AttackName attack_name_from_string(const std::string& name) {
  if (name == "sco") return AttackName::sco;
  if (name == "bruteforce") return AttackName::bruteforce;
  if (name == "feasibility") return AttackName::feasibility;
  if (name == "random_rows") return AttackName::random_rows;
  if (name == "distributed_mass" || name == "distributed") return AttackName::distributed_mass;
  throw InvalidArgument("unknown attack: " + name);
}

void AttackSpec::validate() const {
  const bool wants_magnitude = name == AttackName::sco;
  const bool wants_scale = name == AttackName::random_rows;
  const bool wants_n1 = name == AttackName::distributed_mass;
  if (magnitude.has_value() != wants_magnitude) {
    throw InvalidArgument(wants_magnitude ? "attack 'sco' requires a magnitude"
                                          : "magnitude is only meaningful for 'sco'");
  }
  if (scale.has_value() != wants_scale) {
    throw InvalidArgument(wants_scale ? "attack 'random_rows' requires a scale"
                                      : "scale is only meaningful for 'random_rows'");
  }
  if (n1.has_value() != wants_n1) {
    throw InvalidArgument(wants_n1 ? "attack 'distributed_mass' requires n1"
                                   : "n1 is only meaningful for 'distributed_mass'");
  }
}

RegressionInstance apply_attack(const RegressionInstance& inst, const AttackSpec& spec) {
  spec.validate();
  switch (spec.name) {
    case AttackName::sco: return attack_sco(inst, *spec.magnitude, spec.seed);
    case AttackName::bruteforce: return attack_bruteforce(inst);
    case AttackName::feasibility: return attack_feasibility(inst, spec.seed);
    case AttackName::random_rows:
      return random_row_corruption(inst, inst.outlier_rows().size(), *spec.scale, spec.seed);
    case AttackName::distributed_mass: return corrupt_distributed(inst, *spec.n1, spec.seed);
  }
  throw InvalidArgument("unknown attack");
}

}  // namespace romp
