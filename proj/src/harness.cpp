#include "romp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/parallel.hpp"

namespace romp {

ExperimentConfig ExperimentConfig::desk_default() {
  ExperimentConfig c;
  c.p = 400;
  c.n = 160;
  c.k = 10;
  c.noise_sigma = 2.0;
  c.signal = SignalKind::pm_one;
  c.design = DesignKind::gaussian;
  c.attack.name = AttackName::feasibility;
  c.estimators = {{"romp"}, {"lasso"}, {"jp"}, {"jp_fill"}, {"jp_row"}};
  c.n1_fractions = {0.0, 0.02, 0.04, 0.06, 0.08};
  c.trials = 20;
  return c;
}

ExperimentConfig ExperimentConfig::full_scale() {
  ExperimentConfig c = desk_default();
  c.p = 4000;
  c.n = 1600;
  return c;
}

Index ExperimentConfig::n1_for(double fraction) const {
  return static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
}

void ExperimentConfig::validate() const {
  if (n == 0 || p == 0) throw InvalidArgument("config: n and p must be positive");
  if (k == 0 || k > p) throw InvalidArgument("config: need 1 <= k <= p");
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("config: sigma_e must be >= 0");
  if (estimators.empty()) throw InvalidArgument("config: estimator list is empty");
  if (n1_fractions.empty()) throw InvalidArgument("config: n1 fraction grid is empty");
  if (trials == 0) throw InvalidArgument("config: trials must be >= 1");
  for (double f : n1_fractions) {
    if (!(f >= 0.0) || !(f < 1.0)) throw InvalidArgument("config: n1 fractions must be in [0, 1)");
  }
  for (const auto& e : estimators) {
    static const std::vector<std::string> known = {"romp", "omp",     "lasso",
                                                   "jp",   "jp_fill", "jp_row"};
    if (std::find(known.begin(), known.end(), e.name) == known.end()) {
      throw InvalidArgument("config: unknown estimator '" + e.name + "'");
    }
    if (e.grid_points < 1) throw InvalidArgument("config: grid_points must be >= 1");
  }
  if (attack.name == AttackName::sco && !attack.magnitude) {
    throw InvalidArgument("config: sco attack requires a magnitude");
  }
  if (attack.name == AttackName::random_rows && !attack.scale) {
    throw InvalidArgument("config: random_rows attack requires a scale");
  }
  if (attack.name == AttackName::bruteforce && signal != SignalKind::ones) {
    throw InvalidArgument("config: bruteforce attack requires the 'ones' signal");
  }
}

bool TrialRecord::same_outcome(const TrialRecord& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  return estimator == o.estimator && n1 == o.n1 && n1_fraction == o.n1_fraction &&
         trial == o.trial && seed == o.seed && same(support_recovery, o.support_recovery) &&
         same(relative_l2_error, o.relative_l2_error) && same(lambda, o.lambda) &&
         same(gamma, o.gamma) && failed == o.failed && message == o.message;
}

Index SweepReport::failed_trials() const {
  return static_cast<Index>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.failed; }));
}

double support_recovery(const SupportSet& estimate, const SupportSet& truth) {
  if (truth.empty()) throw InvalidArgument("support_recovery: true support is empty");
  return static_cast<double>(estimate.intersection_size(truth)) /
         static_cast<double>(truth.size());
}

double relative_l2_error(const Vector& beta_hat, const Vector& beta_star) {
  if (beta_hat.size() != beta_star.size()) {
    throw InvalidArgument("relative_l2_error: length mismatch");
  }
  const double denom = beta_star.norm();
  if (!(denom > 0.0)) throw InvalidArgument("relative_l2_error: beta* is zero");
  return (beta_hat - beta_star).norm() / denom;
}

Seed trial_seed(const ExperimentConfig& config, Index grid_index, Index trial) {
  return Seed{config.seed}.derive("grid", grid_index).derive("trial", trial);
}

RegressionInstance build_trial_instance(const ExperimentConfig& config, Index n1, Seed seed) {
  InstanceParams params;
  params.n = config.n;
  params.n1 = n1;
  params.p = config.p;
  params.design = config.design;
  params.signal.kind = config.signal;
  params.signal.k = config.k;
  params.noise_sigma = config.noise_sigma;
  RegressionInstance clean = assemble_instance(params, seed.derive("instance"));
  if (n1 == 0) return clean;
  AttackSpec spec;
  spec.name = config.attack.name;
  spec.seed = seed.derive("attack");
  if (spec.name == AttackName::sco) spec.magnitude = config.attack.magnitude;
  if (spec.name == AttackName::random_rows) spec.scale = config.attack.scale;
  if (spec.name == AttackName::distributed_mass) spec.n1 = n1;
  return apply_attack(clean, spec);
}

namespace {

std::vector<double> log_grid(double top, int points, double decades) {
  std::vector<double> grid;
  if (!(top > 0.0)) return {0.0};
  for (int i = 0; i < points; ++i) {
    const double exponent = points == 1 ? 0.0 : -decades * i / (points - 1);
    grid.push_back(top * std::pow(10.0, exponent));
  }
  return grid;
}

struct Tuned {
  Vector beta;
  double lambda = 0.0;
  double gamma = 0.0;
  double error = std::numeric_limits<double>::infinity();
  int unconverged = 0;
};

Tuned tune_lasso(const Matrix& X, const Vector& y, const Vector& truth,
                 const EstimatorSpec& spec) {
  Tuned best;
  const double top = (X.transpose() * y).cwiseAbs().maxCoeff();
  Vector warm = Vector::Zero(X.cols());
  for (double lambda : log_grid(top, spec.grid_points, spec.grid_decades)) {
    Vector beta;
    try {
      beta = lasso(X, y, lambda, {}, &warm).beta_hat;
    } catch (const ConvergenceError& e) {
      beta = e.last_iterate();
      ++best.unconverged;
    }
    warm = beta;
    const double err = relative_l2_error(beta, truth);
    if (err < best.error) {
      best.error = err;
      best.beta = beta;
      best.lambda = lambda;
    }
  }
  return best;
}

Tuned tune_justice_pursuit(const Matrix& X, const Vector& y, const Vector& truth,
                           const EstimatorSpec& spec) {
  Tuned best;
  const double lambda_top = (X.transpose() * y).cwiseAbs().maxCoeff();
  const double gamma_top = y.cwiseAbs().maxCoeff();
  const auto p = X.cols();
  const auto rows = X.rows();
  for (double gamma : log_grid(gamma_top, spec.grid_points, spec.grid_decades)) {
    Vector warm_beta = Vector::Zero(p);
    Vector warm_z = Vector::Zero(rows);
    for (double lambda : log_grid(lambda_top, spec.grid_points, spec.grid_decades)) {
      Vector beta;
      Vector z;
      try {
        auto res = justice_pursuit(X, y, lambda, gamma, {}, &warm_beta, &warm_z);
        beta = std::move(res.beta_hat);
        z = std::move(res.z_hat);
      } catch (const ConvergenceError& e) {
        beta = e.last_iterate().head(p);
        z = e.last_iterate().tail(rows);
        ++best.unconverged;
      }
      warm_beta = beta;
      warm_z = z;
      const double err = relative_l2_error(beta, truth);
      if (err < best.error) {
        best.error = err;
        best.beta = beta;
        best.lambda = lambda;
        best.gamma = gamma;
      }
    }
  }
  return best;
}

}  // namespace

TrialRecord score_estimator(const ExperimentConfig& config, const EstimatorSpec& estimator,
                            const RegressionInstance& inst, Index n1) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.estimator = estimator.name;
  rec.n1 = n1;
  const Vector truth = inst.truth.dense();
  const SupportSet& support = inst.truth.support();
  try {
    Vector beta;
    SupportSet chosen;
    if (estimator.name == "romp") {
      auto res = romp(inst.X, inst.y, config.k, n1);
      beta = std::move(res.beta_hat);
      chosen = std::move(res.support_hat);
    } else if (estimator.name == "omp") {
      auto res = matching_pursuit_omp(inst.X, inst.y, config.k);
      beta = std::move(res.beta_hat);
      chosen = std::move(res.support_hat);
    } else {
      Tuned tuned;
      if (estimator.name == "lasso") {
        tuned = tune_lasso(inst.X, inst.y, truth, estimator);
      } else if (estimator.name == "jp") {
        tuned = tune_justice_pursuit(inst.X, inst.y, truth, estimator);
      } else if (estimator.name == "jp_fill") {
        const Matrix filled =
            n1 == 0 ? inst.X : fill_large_entries(inst.X, n1, estimator.fill_scale);
        tuned = tune_justice_pursuit(filled, inst.y, truth, estimator);
      } else if (estimator.name == "jp_row") {
        if (n1 == 0) {
          tuned = tune_justice_pursuit(inst.X, inst.y, truth, estimator);
        } else {
          const std::vector<Index> dropped = rows_to_discard(inst.X, n1);
          std::vector<Index> kept;
          for (Index i = 0, d = 0; i < inst.num_rows(); ++i) {
            if (d < dropped.size() && dropped[d] == i) {
              ++d;
            } else {
              kept.push_back(i);
            }
          }
          const Matrix Xk = submatrix(inst.X, kept, SupportSet::prefix(inst.num_cols(),
                                                                        inst.num_cols()));
          tuned = tune_justice_pursuit(Xk, subvector(inst.y, kept), truth, estimator);
        }
      } else {
        throw InvalidArgument("unknown estimator '" + estimator.name + "'");
      }
      beta = std::move(tuned.beta);
      chosen = top_k_support(beta, config.k);
      rec.lambda = tuned.lambda;
      rec.gamma = tuned.gamma;
      if (tuned.unconverged > 0) {
        rec.message = std::to_string(tuned.unconverged) + " grid point(s) hit the sweep cap";
      }
    }
    rec.support_recovery = support_recovery(chosen, support);
    rec.relative_l2_error = relative_l2_error(beta, truth);
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.message = e.what();
    rec.support_recovery = std::numeric_limits<double>::quiet_NaN();
    rec.relative_l2_error = std::numeric_limits<double>::quiet_NaN();
  }
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

TrialRecord run_trial(const ExperimentConfig& config, const EstimatorSpec& estimator, Index n1,
                      Seed seed) {
  TrialRecord rec;
  try {
    const RegressionInstance inst = build_trial_instance(config, n1, seed);
    rec = score_estimator(config, estimator, inst, n1);
  } catch (const std::exception& e) {
    rec.estimator = estimator.name;
    rec.n1 = n1;
    rec.failed = true;
    rec.message = e.what();
    rec.support_recovery = std::numeric_limits<double>::quiet_NaN();
    rec.relative_l2_error = std::numeric_limits<double>::quiet_NaN();
  }
  rec.seed = seed.value;
  return rec;
}

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records) {
  std::map<std::pair<std::string, Index>, std::vector<const TrialRecord*>> groups;
  std::vector<std::pair<std::string, Index>> order;
  for (const auto& r : records) {
    auto key = std::pair{r.estimator, r.n1};
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<Aggregate> out;
  for (const auto& key : order) {
    const auto& group = groups[key];
    Aggregate a;
    a.estimator = key.first;
    a.n1 = key.second;
    a.n1_fraction = group.front()->n1_fraction;
    std::vector<double> rec, err;
    for (const TrialRecord* r : group) {
      if (r->failed) {
        ++a.failures;
        continue;
      }
      rec.push_back(r->support_recovery);
      err.push_back(r->relative_l2_error);
    }
    a.count = rec.size();
    auto moments = [](const std::vector<double>& v, double* m, double* s) {
      *m = 0.0;
      *s = 0.0;
      if (v.empty()) return;
      for (double x : v) *m += x;
      *m /= static_cast<double>(v.size());
      if (v.size() < 2) return;
      double acc = 0.0;
      for (double x : v) acc += (x - *m) * (x - *m);
      *s = std::sqrt(acc / static_cast<double>(v.size() - 1));
    };
    moments(rec, &a.recovery_mean, &a.recovery_std);
    moments(err, &a.error_mean, &a.error_std);
    out.push_back(a);
  }
  return out;
}

SweepReport run_sweep(const ExperimentConfig& config) {
  config.validate();
  const Index G = config.n1_fractions.size();
  const Index E = config.estimators.size();
  const Index T = config.trials;
  std::vector<TrialRecord> records(G * T * E);

  // One instance per (grid point, trial), shared by every estimator.
  parallel_for(G * T, [&](std::size_t idx) {
    const Index g = idx / T;
    const Index t = idx % T;
    const double fraction = config.n1_fractions[g];
    const Index n1 = config.n1_for(fraction);
    const Seed seed = trial_seed(config, g, t);
    std::optional<RegressionInstance> inst;
    std::string build_error;
    try {
      inst = build_trial_instance(config, n1, seed);
    } catch (const std::exception& e) {
      build_error = e.what();
    }
    for (Index e = 0; e < E; ++e) {
      TrialRecord rec;
      if (inst) {
        rec = score_estimator(config, config.estimators[e], *inst, n1);
      } else {
        rec.estimator = config.estimators[e].name;
        rec.failed = true;
        rec.message = build_error;
        rec.support_recovery = std::numeric_limits<double>::quiet_NaN();
        rec.relative_l2_error = std::numeric_limits<double>::quiet_NaN();
      }
      rec.n1 = n1;
      rec.n1_fraction = fraction;
      rec.trial = t;
      rec.seed = seed.value;
      records[(e * G + g) * T + t] = std::move(rec);
    }
  });

  // Estimator order follows the config; then n1, then trial.
  SweepReport report;
  report.config = config;
  report.records = std::move(records);
  report.aggregates = aggregate(report.records);
  return report;
}

}  // namespace romp
