#include "romp/probes.hpp"

#include <cmath>
#include <numeric>

#include "romp/corruption.hpp"
#include "romp/datagen.hpp"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/parallel.hpp"

namespace romp {
namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double standard_error(const std::vector<double>& v) {
  return v.empty() ? 0.0 : stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

double empirical_quantile(std::vector<double> sample, double level) {
  if (sample.empty()) throw InvalidArgument("empirical_quantile: empty sample");
  level = std::clamp(level, 0.0, 1.0);
  const double pos = level * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sample.size() - 1);
  std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(lo),
                   sample.end());
  const double a = sample[lo];
  if (hi == lo) return a;
  const double b = *std::min_element(sample.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                                     sample.end());
  return a + (pos - static_cast<double>(lo)) * (b - a);
}

ProbeReport probe_max_subgaussian(Index m, double p, double sigma, Index trials, Seed seed) {
  if (m == 0 || trials == 0) throw InvalidArgument("probe_max_subgaussian: m, trials >= 1");
  if (!(p > 1.0)) throw InvalidArgument("probe_max_subgaussian: p must exceed 1");
  if (!(sigma >= 0.0)) throw InvalidArgument("probe_max_subgaussian: sigma must be >= 0");
  const double bound = 4.0 * sigma * std::sqrt(std::log(static_cast<double>(m)) + std::log(p));

  std::vector<double> maxima(trials);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng(seed.derive("max-subgaussian", t));
    double mx = 0.0;
    for (Index i = 0; i < m; ++i) mx = std::max(mx, std::abs(sigma * rng.normal()));
    maxima[t] = mx;
  });

  ProbeReport r;
  r.probe = "max_subgaussian";
  r.trials = trials;
  r.parameters = {{"m", static_cast<double>(m)}, {"p", p}, {"sigma", sigma}};
  for (double v : maxima) r.violations += v > bound ? 1 : 0;
  r.violation_rate = static_cast<double>(r.violations) / static_cast<double>(trials);
  const double nominal = 2.0 / (p * p);
  const double se = std::sqrt(nominal * (1.0 - nominal) / static_cast<double>(trials));
  r.bounds = {{"max_bound", bound},
              {"nominal_rate", nominal},
              {"allowed_rate", nominal + 3.0 * se}};
  r.statistics = {{"mean_max", mean(maxima)},
                  {"sd_max", stddev(maxima)},
                  {"sqrt_2_log_m", std::sqrt(2.0 * std::log(static_cast<double>(m)))}};
  const double level = 1.0 - 1.0 / (p * p);
  const double unit = std::sqrt(std::log(static_cast<double>(m)) + std::log(p));
  if (sigma > 0.0) {
    std::vector<double> ratios;
    ratios.reserve(trials);
    for (double v : maxima) ratios.push_back(v / (sigma * unit));
    r.fitted["c_max"] = bootstrap(
        ratios, [level](const std::vector<double>& s) { return empirical_quantile(s, level); },
        seed.derive("bootstrap"));
  }
  r.passed = r.violation_rate <= r.bounds["allowed_rate"];
  return r;
}

ProbeReport probe_concentration(Index n, double p, Index trials, Seed seed) {
  if (n < 1 || trials == 0) throw InvalidArgument("probe_concentration: n, trials >= 1");
  if (!(p > 1.0)) throw InvalidArgument("probe_concentration: p must exceed 1");
  const double sd = 1.0 / std::sqrt(static_cast<double>(n));
  const double unit = std::sqrt(std::log(p) / static_cast<double>(n));

  std::vector<double> sum_sq(trials), cross(trials);
  parallel_for(trials, [&](std::size_t t) {
    Rng ry(seed.derive("concentration-y", t));
    Rng rz(seed.derive("concentration-z", t));
    double ss = 0.0;
    double yz = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double yi = sd * ry.normal();
      const double zi = sd * rz.normal();
      ss += yi * yi;
      yz += yi * zi;
    }
    sum_sq[t] = ss;
    cross[t] = yz;
  });

  std::vector<double> ratio_sq(trials), ratio_cross(trials);
  for (Index t = 0; t < trials; ++t) {
    ratio_sq[t] = std::abs(sum_sq[t] - 1.0) / unit;
    ratio_cross[t] = std::abs(cross[t]) / unit;
  }
  const double level = 1.0 - 1.0 / (p * p);
  auto q = [level](const std::vector<double>& s) { return empirical_quantile(s, level); };

  ProbeReport r;
  r.probe = "concentration";
  r.trials = trials;
  r.parameters = {{"n", static_cast<double>(n)}, {"p", p}, {"level", level}};
  r.fitted["c1"] = bootstrap(ratio_sq, q, seed.derive("bootstrap-c1"));
  r.fitted["c2"] = bootstrap(ratio_cross, q, seed.derive("bootstrap-c2"));
  r.statistics = {{"mean_sum_sq", mean(sum_sq)},
                  {"se_sum_sq", standard_error(sum_sq)},
                  {"mean_cross", mean(cross)},
                  {"se_cross", standard_error(cross)},
                  {"median_ratio_sq", empirical_quantile(ratio_sq, 0.5)},
                  {"median_ratio_cross", empirical_quantile(ratio_cross, 0.5)}};
  // Violations of the fitted bounds are at the quantile level by construction;
  // count against the c <= 10 ceiling instead.
  for (Index t = 0; t < trials; ++t) {
    if (ratio_sq[t] > 10.0 || ratio_cross[t] > 10.0) ++r.violations;
  }
  r.violation_rate = static_cast<double>(r.violations) / static_cast<double>(trials);
  r.bounds = {{"constant_ceiling", 10.0}};
  r.passed = r.fitted["c1"].value <= 10.0 && r.fitted["c2"].value <= 10.0;
  return r;
}

ProbeReport probe_concentration_scan(const std::vector<Index>& ns, double p, Index trials,
                                     Seed seed) {
  if (ns.empty()) throw InvalidArgument("probe_concentration_scan: empty n grid");
  ProbeReport r;
  r.probe = "concentration_scan";
  r.trials = trials;
  r.parameters = {{"p", p}};
  std::vector<double> nvals, c1, c2, c1_lo, c1_hi, c2_lo, c2_hi;
  bool bounded = true;
  for (Index g = 0; g < ns.size(); ++g) {
    const ProbeReport one = probe_concentration(ns[g], p, trials, seed.derive("n", g));
    nvals.push_back(static_cast<double>(ns[g]));
    c1.push_back(one.fitted.at("c1").value);
    c2.push_back(one.fitted.at("c2").value);
    c1_lo.push_back(one.fitted.at("c1").ci_low);
    c1_hi.push_back(one.fitted.at("c1").ci_high);
    c2_lo.push_back(one.fitted.at("c2").ci_low);
    c2_hi.push_back(one.fitted.at("c2").ci_high);
    bounded = bounded && one.passed;
    r.violations += one.violations;
  }
  auto spread = [](const std::vector<double>& v) {
    const double m = mean(v);
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x - m) / m);
    return worst;
  };
  r.series = {{"n", nvals},       {"c1", c1},       {"c2", c2},       {"c1_ci_low", c1_lo},
              {"c1_ci_high", c1_hi}, {"c2_ci_low", c2_lo}, {"c2_ci_high", c2_hi}};
  r.statistics = {{"c1_max_rel_spread", spread(c1)}, {"c2_max_rel_spread", spread(c2)},
                  {"c1_max", *std::max_element(c1.begin(), c1.end())},
                  {"c2_max", *std::max_element(c2.begin(), c2.end())}};
  r.fitted["c1"] = FittedConstant{mean(c1), *std::min_element(c1_lo.begin(), c1_lo.end()),
                                  *std::max_element(c1_hi.begin(), c1_hi.end())};
  r.fitted["c2"] = FittedConstant{mean(c2), *std::min_element(c2_lo.begin(), c2_lo.end()),
                                  *std::max_element(c2_hi.begin(), c2_hi.end())};
  r.bounds = {{"constant_ceiling", 10.0}, {"relative_spread", 0.2}};
  r.violation_rate = static_cast<double>(r.violations) /
                     static_cast<double>(trials * static_cast<Index>(ns.size()));
  r.passed = bounded && r.statistics["c1_max_rel_spread"] <= 0.2 &&
             r.statistics["c2_max_rel_spread"] <= 0.2;
  return r;
}

double h_deviation_bound(double beta_max, double beta_norm_sq, double noise_sigma, double p,
                         double n, double n1) {
  const double log_p = std::log(p);
  const double energy = std::sqrt(beta_norm_sq + noise_sigma * noise_sigma);
  return beta_max * std::sqrt(2.0 * log_p / n) + energy * std::sqrt(log_p / n) +
         n1 * (log_p / n) * energy;
}

ProbeReport probe_h_deviation(Index p, Index n, Index k, double noise_sigma,
                              const std::vector<Index>& n1_grid, Index trials, Seed seed) {
  if (n1_grid.empty() || trials == 0) {
    throw InvalidArgument("probe_h_deviation: need a non-empty grid and trials >= 1");
  }
  const Index G = n1_grid.size();
  // deviations[g][t]; bound[g][t] uses that trial's beta*.
  std::vector<std::vector<double>> dev(G, std::vector<double>(trials));
  std::vector<std::vector<double>> bnd(G, std::vector<double>(trials));
  parallel_for(G * trials, [&](std::size_t idx) {
    const Index g = idx / trials;
    const Index t = idx % trials;
    const Index n1 = n1_grid[g];
    InstanceParams params;
    params.n = n;
    params.n1 = n1;
    params.p = p;
    params.signal.kind = SignalKind::pm_one;
    params.signal.k = k;
    params.noise_sigma = noise_sigma;
    const Seed trial_seed = seed.derive("grid", g).derive("trial", t);
    const RegressionInstance clean = assemble_instance(params, trial_seed.derive("instance"));
    const RegressionInstance inst =
        corrupt_distributed(clean, n1, trial_seed.derive("attack"));
    const Vector h = trimmed_correlations(inst.X, inst.y, n1);
    const Vector truth = inst.truth.dense();
    dev[g][t] = (h - truth).cwiseAbs().maxCoeff();
    const double beta_max = k > 0 ? inst.truth.values().cwiseAbs().maxCoeff() : 0.0;
    bnd[g][t] = h_deviation_bound(beta_max, inst.truth.values().squaredNorm(), noise_sigma,
                                  static_cast<double>(p), static_cast<double>(n),
                                  static_cast<double>(n1));
  });

  // Affine least-squares fit of mean deviation against n1, and the smallest
  // constant C with mean deviation <= C * bound at every grid point.
  auto summarize = [&](const std::vector<std::vector<double>>& d, double* slope,
                       double* intercept) {
    std::vector<double> means(G);
    for (Index g = 0; g < G; ++g) means[g] = mean(d[g]);
    std::vector<double> x(G);
    for (Index g = 0; g < G; ++g) x[g] = static_cast<double>(n1_grid[g]);
    const double mx = mean(x);
    const double my = mean(means);
    double sxx = 0.0;
    double sxy = 0.0;
    for (Index g = 0; g < G; ++g) {
      sxx += (x[g] - mx) * (x[g] - mx);
      sxy += (x[g] - mx) * (means[g] - my);
    }
    *slope = sxx > 0.0 ? sxy / sxx : 0.0;
    *intercept = my - *slope * mx;
    double C = 0.0;
    for (Index g = 0; g < G; ++g) {
      const double b = mean(bnd[g]);
      if (b > 0.0) C = std::max(C, means[g] / b);
    }
    return std::pair{means, C};
  };

  double slope = 0.0;
  double intercept = 0.0;
  auto [means, C] = summarize(dev, &slope, &intercept);

  // Bootstrap over trials (resampled jointly across the grid).
  Rng boot(seed.derive("bootstrap"));
  std::vector<double> slopes, intercepts, constants;
  for (int b = 0; b < 1000; ++b) {
    std::vector<Index> pick(trials);
    for (auto& v : pick) v = boot.below(trials);
    std::vector<std::vector<double>> d(G, std::vector<double>(trials));
    for (Index g = 0; g < G; ++g) {
      for (Index t = 0; t < trials; ++t) d[g][t] = dev[g][pick[t]];
    }
    double s = 0.0;
    double i0 = 0.0;
    auto [m, c] = summarize(d, &s, &i0);
    slopes.push_back(s);
    intercepts.push_back(i0);
    constants.push_back(c);
  }

  ProbeReport r;
  r.probe = "h_deviation";
  r.trials = trials;
  r.parameters = {{"p", static_cast<double>(p)},
                  {"n", static_cast<double>(n)},
                  {"k", static_cast<double>(k)},
                  {"sigma_e", noise_sigma}};
  std::vector<double> grid(G), bounds(G);
  for (Index g = 0; g < G; ++g) {
    grid[g] = static_cast<double>(n1_grid[g]);
    bounds[g] = mean(bnd[g]);
  }
  r.series = {{"n1", grid}, {"mean_max_deviation", means}, {"bound", bounds}};
  r.fitted["slope"] = FittedConstant{slope, empirical_quantile(slopes, 0.025),
                                     empirical_quantile(slopes, 0.975)};
  r.fitted["intercept"] = FittedConstant{intercept, empirical_quantile(intercepts, 0.025),
                                         empirical_quantile(intercepts, 0.975)};
  r.fitted["C"] = FittedConstant{C, empirical_quantile(constants, 0.025),
                                 empirical_quantile(constants, 0.975)};
  r.bounds = {{"C_ceiling", 20.0}};

  // Per-trial violations of the fitted envelope C * bound.
  for (Index g = 0; g < G; ++g) {
    for (Index t = 0; t < trials; ++t) {
      if (dev[g][t] > C * bnd[g][t] * (1.0 + 1e-12)) ++r.violations;
    }
  }
  r.violation_rate = static_cast<double>(r.violations) / static_cast<double>(G * trials);

  bool ok = C <= 20.0;
  const auto zero = std::find(n1_grid.begin(), n1_grid.end(), Index{0});
  if (G >= 2) {
    ok = ok && slope > 0.0;
    if (zero != n1_grid.end()) {
      const double d0 = means[static_cast<Index>(zero - n1_grid.begin())];
      r.statistics["deviation_at_zero"] = d0;
      ok = ok && intercept >= 0.5 * d0 && intercept <= 2.0 * d0;
    }
  }
  r.statistics["slope"] = slope;
  r.statistics["intercept"] = intercept;
  r.statistics["C"] = C;
  r.passed = ok;
  return r;
}

ProbeReport probe_bruteforce_failure(Index p, Index k, Index n, Index n1, Index trials,
                                     Seed seed) {
  if (k == 0 || n == 0 || trials == 0) {
    throw InvalidArgument("probe_bruteforce_failure: k, n and trials must be positive");
  }
  if (n1 == 0 || static_cast<double>(n1) < 3.0 * static_cast<double>(n) /
                                               static_cast<double>(k + 1)) {
    throw InvalidArgument("probe_bruteforce_failure: requires n1 >= 3n/(k+1) and n1 > 0");
  }
  if (p <= k) throw InvalidArgument("probe_bruteforce_failure: requires p > k");
  const double sigma_sq = static_cast<double>(k);

  std::vector<double> alt(trials), alt_formula(trials), correct(trials);
  parallel_for(trials, [&](std::size_t t) {
    InstanceParams params;
    params.n = n;
    params.n1 = n1;
    params.p = p;
    params.signal.kind = SignalKind::ones;
    params.signal.k = k;
    params.noise_sigma = std::sqrt(sigma_sq);
    const Seed trial_seed = seed.derive("trial", t);
    const RegressionInstance clean = assemble_instance(params, trial_seed);
    const RegressionInstance inst = attack_bruteforce(clean);
    const AlternativeSolution sol = bruteforce_alternative(inst);

    const Matrix A = submatrix(inst.X, sol.rows, sol.columns);
    alt[t] = (subvector(inst.y, sol.rows) - A * sol.theta).squaredNorm();

    // Same quantity through the noise decomposition e + X_1 - X_{k+1} over the
    // authentic rows kept by the alternative.
    const Vector noise = clean.y - clean.X * clean.truth.dense();
    const Index first = inst.truth.support()[0];
    const Index extra = designated_column(inst);
    double acc = 0.0;
    for (Index i : sol.rows) {
      if (std::binary_search(inst.ledger.rows.begin(), inst.ledger.rows.end(), i)) continue;
      const auto r = static_cast<Eigen::Index>(i);
      const double v = noise[r] + clean.X(r, static_cast<Eigen::Index>(first)) -
                       clean.X(r, static_cast<Eigen::Index>(extra));
      acc += v * v;
    }
    alt_formula[t] = acc;

    const Matrix XA = submatrix(inst.X, inst.authentic_rows, inst.truth.support());
    const Vector yA = subvector(inst.y, inst.authentic_rows);
    const Vector theta = least_squares(XA, yA);
    correct[t] = (yA - XA * theta).squaredNorm();
  });

  const double frac = 1.0 - static_cast<double>(n1) / static_cast<double>(n);
  const double expected = frac * (sigma_sq + 2.0);
  const double kd = static_cast<double>(k);

  ProbeReport r;
  r.probe = "bruteforce_failure";
  r.trials = trials;
  r.parameters = {{"p", static_cast<double>(p)}, {"k", kd},
                  {"n", static_cast<double>(n)}, {"n1", static_cast<double>(n1)},
                  {"sigma_e_sq", sigma_sq}};
  for (Index t = 0; t < trials; ++t) {
    if (!(alt[t] < std::min(correct[t], kd))) ++r.violations;
  }
  r.violation_rate = static_cast<double>(r.violations) / static_cast<double>(trials);
  double formula_gap = 0.0;
  for (Index t = 0; t < trials; ++t) {
    formula_gap = std::max(formula_gap, std::abs(alt[t] - alt_formula[t]));
  }
  r.statistics = {{"mean_alternative_objective", mean(alt)},
                  {"sd_alternative_objective", stddev(alt)},
                  {"mean_correct_support_objective", mean(correct)},
                  {"expected_alternative_objective", expected},
                  {"max_formula_gap", formula_gap}};
  r.bounds = {{"alternative_upper", (1.0 + 1.0 / kd) * frac * (sigma_sq + 2.0)},
              {"correct_lower_outlier_rows", kd},
              {"correct_lower_authentic_rows", (1.0 - 1.0 / kd) * sigma_sq}};
  r.series = {{"alternative_objective", alt}, {"correct_support_objective", correct}};
  r.fitted["alternative_over_expected"] = bootstrap(
      alt, [expected](const std::vector<double>& s) { return mean(s) / expected; },
      seed.derive("bootstrap"));
  const double ratio = mean(alt) / expected;
  r.passed = r.violation_rate <= 0.1 && std::abs(ratio - 1.0) <= 0.1;
  return r;
}

}  // namespace romp
