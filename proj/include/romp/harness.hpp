#pragma once

// Experiment orchestration: generate -> attack -> tune/solve -> score, swept
// over outlier fractions, with CSV / JSON / SVG reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "romp/corruption.hpp"
#include "romp/datagen.hpp"
#include "romp/model.hpp"
#include "romp/rng.hpp"

namespace romp {

struct EstimatorSpec {
  /// romp | omp | lasso | jp | jp_fill | jp_row
  std::string name;
  /// Log-spaced points per tuned hyperparameter (Lasso / JP family).
  int grid_points = 7;
  /// Decades spanned by each grid below its maximum.
  double grid_decades = 3.0;
  /// Replacement magnitude for JP-fill.
  double fill_scale = 1.0;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

struct AttackConfig {
  AttackName name = AttackName::feasibility;
  std::optional<double> magnitude;
  std::optional<double> scale;

  friend bool operator==(const AttackConfig&, const AttackConfig&) = default;
};

struct ExperimentConfig {
  Index p = 400;
  Index n = 160;
  Index k = 10;
  double noise_sigma = 2.0;
  SignalKind signal = SignalKind::pm_one;
  DesignKind design = DesignKind::gaussian;
  AttackConfig attack;
  std::vector<EstimatorSpec> estimators;
  std::vector<double> n1_fractions;
  Index trials = 20;
  std::uint64_t seed = 20130101;
  std::string output_dir = "out";

  /// The desk-scale reproduction of the outlier-fraction sweep.
  static ExperimentConfig desk_default();
  /// The full-scale setting p = 4000, n = 1600, k = 10, sigma_e = 2.
  static ExperimentConfig full_scale();

  /// n1 for a fraction: round(fraction * n).
  Index n1_for(double fraction) const;
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct TrialRecord {
  std::string estimator;
  Index n1 = 0;
  double n1_fraction = 0.0;
  Index trial = 0;
  std::uint64_t seed = 0;
  double support_recovery = 0.0;
  double relative_l2_error = 0.0;
  /// Tuned hyperparameters (0 when not applicable).
  double lambda = 0.0;
  double gamma = 0.0;
  bool failed = false;
  std::string message;
  /// Not part of the deterministic artifacts.
  double wall_time_s = 0.0;

  /// Equality of everything except wall time.
  bool same_outcome(const TrialRecord& other) const;
};

struct Aggregate {
  std::string estimator;
  Index n1 = 0;
  double n1_fraction = 0.0;
  Index count = 0;
  Index failures = 0;
  double recovery_mean = 0.0;
  double recovery_std = 0.0;
  double error_mean = 0.0;
  double error_std = 0.0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct SweepReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<Aggregate> aggregates;

  Index failed_trials() const;
};

/// |estimate ∩ truth| / |truth|. Throws on an empty truth.
double support_recovery(const SupportSet& estimate, const SupportSet& truth);

/// ||beta_hat - beta*||_2 / ||beta*||_2. Throws when beta* = 0.
double relative_l2_error(const Vector& beta_hat, const Vector& beta_star);

/// Clean instance for a trial, then the configured attack with budget n1.
RegressionInstance build_trial_instance(const ExperimentConfig& config, Index n1, Seed seed);

/// Runs one estimator on an instance. Lasso / JP variants are tuned over their
/// grids against the ground-truth l2 error; RoMP receives the true (k, n1).
/// Estimator errors are returned as a failed record, never thrown.
TrialRecord score_estimator(const ExperimentConfig& config, const EstimatorSpec& estimator,
                            const RegressionInstance& inst, Index n1);

TrialRecord run_trial(const ExperimentConfig& config, const EstimatorSpec& estimator,
                      Index n1, Seed seed);

/// Seed of trial t at grid point g.
Seed trial_seed(const ExperimentConfig& config, Index grid_index, Index trial);

/// Mean and sample standard deviation per (estimator, n1), failed trials excluded.
std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records);

SweepReport run_sweep(const ExperimentConfig& config);

struct ReportFormats {
  bool csv = true;
  bool json = true;
  bool svg = true;
};

/// Writes records.csv, report.json, support_recovery.svg and
/// relative_l2_error.svg (deterministic), plus timings.csv. Returns the paths.
std::vector<std::filesystem::path> emit_report(const SweepReport& report,
                                               const std::filesystem::path& dir,
                                               const ReportFormats& formats = {});

std::string records_csv(const std::vector<TrialRecord>& records);
std::string render_svg(const SweepReport& report, bool recovery_panel);

}  // namespace romp
