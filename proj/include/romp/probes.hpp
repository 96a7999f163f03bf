#pragma once

// Monte Carlo probes of the concentration and deviation bounds behind RoMP's
// guarantees, and of the inequalities that defeat the brute-force estimator.
//
// "With high probability" means probability at least 1 - p^-2. Probes check
// empirical violation rates against that level with three standard errors of
// slack, and fit unspecified absolute constants rather than assuming them.

#include <map>
#include <string>
#include <vector>

#include "romp/model.hpp"
#include "romp/rng.hpp"

namespace romp {

struct FittedConstant {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct ProbeReport {
  std::string probe;
  Index trials = 0;
  Index violations = 0;
  double violation_rate = 0.0;
  std::map<std::string, double> parameters;
  std::map<std::string, double> statistics;
  std::map<std::string, double> bounds;
  std::map<std::string, FittedConstant> fitted;
  std::map<std::string, std::vector<double>> series;
  /// Whether the probe's own criterion held.
  bool passed = false;
};

/// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> sample, double level);

/// Percentile bootstrap interval for statistic(sample) at the 95% level.
template <typename Stat>
FittedConstant bootstrap(const std::vector<double>& sample, Stat statistic, Seed seed,
                         int resamples = 1000);

/// max_i |Z_i| of m i.i.d. N(0, sigma^2) against 4 sigma sqrt(log m + log p).
ProbeReport probe_max_subgaussian(Index m, double p, double sigma, Index trials, Seed seed);

/// Y, Z with n i.i.d. N(0, 1/n) entries: |sum Y^2 - 1| and |sum Y Z| scaled by
/// sqrt(log p / n). c1 and c2 are the (1 - p^-2) quantiles of those ratios.
ProbeReport probe_concentration(Index n, double p, Index trials, Seed seed);

/// probe_concentration over several n; passes when every fitted constant is at
/// most 10 and within 20% of its mean across n.
ProbeReport probe_concentration_scan(const std::vector<Index>& ns, double p, Index trials,
                                     Seed seed);

/// max_j |h(j) - beta*_j| under corrupt_distributed for each n1 in the grid,
/// compared with the three-term deviation bound.
ProbeReport probe_h_deviation(Index p, Index n, Index k, double noise_sigma,
                              const std::vector<Index>& n1_grid, Index trials, Seed seed);

/// The three-term deviation bound for max_j |h(j) - beta*_j|.
double h_deviation_bound(double beta_max, double beta_norm_sq, double noise_sigma,
                         double p, double n, double n1);

/// Objective of the alternative (wrong-support) solution versus the lower
/// bounds on every correct-support solution, with sigma_e^2 = k.
ProbeReport probe_bruteforce_failure(Index p, Index k, Index n, Index n1, Index trials,
                                     Seed seed);

}  // namespace romp

#include "romp/probes_impl.hpp"
