// romp: generate, attack, solve, probe and benchmark from the command line.
//
// Worker threads for `benchmark` come from ROMP_THREADS (default: all cores).

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "romp/corruption.hpp"
#include "romp/datagen.hpp"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/harness.hpp"
#include "romp/probes.hpp"
#include "romp/serialize.hpp"

namespace {

using namespace romp;

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
}

Index parse_index(const std::string& text) { return static_cast<Index>(std::stoull(text)); }

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_index(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust matching pursuit toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample an authentic regression instance");
  InstanceParams gp;
  gp.n = 300;
  gp.p = 500;
  gp.signal.k = 5;
  gp.noise_sigma = 0.5;
  std::string g_signal = "pm_one", g_design = "gaussian", g_out, g_support;
  std::vector<double> g_values;
  std::uint64_t g_seed = 1;
  gen->add_option("--n", gp.n, "Authentic rows (also the normalization)");
  gen->add_option("--n1", gp.n1, "Extra rows an attack may overwrite");
  gen->add_option("--p", gp.p, "Columns");
  gen->add_option("--k", gp.signal.k, "Sparsity");
  gen->add_option("--sigma", gp.noise_sigma, "Noise level sigma_e");
  gen->add_option("--signal", g_signal, "pm_one | ones | fixed_values");
  gen->add_option("--values", g_values, "Values for fixed_values");
  gen->add_option("--support", g_support, "Comma-separated prescribed support");
  gen->add_option("--design", g_design, "gaussian | rademacher");
  gen->add_option("--seed", g_seed, "Master seed");
  gen->add_option("--out,-o", g_out, "Output file (stdout if omitted)");

  // attack
  auto* att = app.add_subcommand("attack", "Corrupt an instance");
  std::string a_in, a_name = "feasibility", a_out, a_ledger;
  std::optional<double> a_magnitude, a_scale;
  std::optional<Index> a_n1;
  std::uint64_t a_seed = 1;
  att->add_option("--in,-i", a_in, "Instance JSON")->required();
  att->add_option("--attack", a_name,
                  "sco | bruteforce | feasibility | random_rows | distributed");
  att->add_option("--magnitude", a_magnitude, "Decoy magnitude M for sco (default 1000)");
  att->add_option("--scale", a_scale, "Entry scale for random_rows");
  att->add_option("--n1", a_n1, "Per-column budget (distributed)");
  att->add_option("--seed", a_seed, "Attack seed");
  att->add_option("--out,-o", a_out, "Attacked instance JSON (stdout if omitted)");
  att->add_option("--ledger", a_ledger, "Also write the ledger to this file");

  // solve
  auto* sol = app.add_subcommand("solve", "Run an estimator on an instance");
  std::string s_in, s_est = "romp", s_out;
  Index s_k = 0, s_n1 = 0;
  std::optional<Index> s_n;
  double s_lambda = 0.0, s_gamma = 0.0, s_fill = 1.0, s_guard = 1e7;
  sol->add_option("--in,-i", s_in, "Instance JSON")->required();
  sol->add_option("--estimator", s_est, "romp | omp | lasso | jp | jp_fill | jp_row | brute_force");
  sol->add_option("--k", s_k, "Sparsity (romp, omp, brute_force)");
  sol->add_option("--n1", s_n1, "Outlier budget (romp, jp_fill, jp_row)");
  sol->add_option("--n", s_n, "Rows kept by brute_force (default: instance rows - n1)");
  sol->add_option("--lambda", s_lambda, "l1 weight on beta");
  sol->add_option("--gamma", s_gamma, "l1 weight on z");
  sol->add_option("--fill-scale", s_fill, "Replacement magnitude for jp_fill");
  sol->add_option("--size-guard", s_guard, "Candidate limit for brute_force");
  sol->add_option("--out,-o", s_out, "Result JSON (stdout if omitted)");

  // probe
  auto* prb = app.add_subcommand("probe", "Monte Carlo probe of a concentration bound");
  std::string p_name, p_out, p_ns = "100,400,1600", p_grid = "0,2,4,6,8,10";
  Index p_m = 1000, p_n = 300, p_k = 5, p_n1 = 0, p_trials = 1000, p_p = 500;
  double p_pd = 100.0, p_sigma = 1.0;
  std::uint64_t p_seed = 1;
  prb->add_option("name", p_name,
                  "max_subgaussian | concentration | concentration_scan | h_deviation | "
                  "bruteforce_failure")
      ->required();
  prb->add_option("--m", p_m, "Sample size (max_subgaussian)");
  prb->add_option("--n", p_n, "Normalization n");
  prb->add_option("--ns", p_ns, "Comma-separated n values (concentration_scan)");
  prb->add_option("--p", p_p, "Dimension p (h_deviation, bruteforce_failure)");
  prb->add_option("--level-p", p_pd, "p in the 1 - p^-2 level (max_subgaussian, concentration)");
  prb->add_option("--k", p_k, "Sparsity");
  prb->add_option("--n1", p_n1, "Outlier rows (bruteforce_failure)");
  prb->add_option("--n1-grid", p_grid, "Comma-separated budgets (h_deviation)");
  prb->add_option("--sigma", p_sigma, "Noise or entry scale");
  prb->add_option("--trials", p_trials, "Monte Carlo trials");
  prb->add_option("--seed", p_seed, "Seed");
  prb->add_option("--out,-o", p_out, "Report JSON (stdout if omitted)");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Run an outlier-fraction sweep");
  std::string b_config, b_out, b_preset = "desk";
  bool b_no_svg = false;
  bench->add_option("--config,-c", b_config, "Config JSON (fields default to the preset)");
  bench->add_option("--preset", b_preset, "desk | full, used when --config is absent");
  bench->add_option("--out,-o", b_out, "Output directory (overrides config output_dir)");
  bench->add_flag("--no-svg", b_no_svg, "Skip the SVG charts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gp.design = design_kind_from_string(g_design);
      gp.signal.kind = signal_kind_from_string(g_signal);
      gp.signal.values = g_values;
      if (!g_support.empty()) gp.signal.support = parse_index_list(g_support);
      emit(Json(assemble_instance(gp, Seed{g_seed})), g_out);
      return 0;
    }
    if (*att) {
      const auto inst = read_json_file(a_in).get<RegressionInstance>();
      AttackSpec spec;
      spec.name = attack_name_from_string(a_name);
      spec.seed = Seed{a_seed};
      if (spec.name == AttackName::sco) spec.magnitude = a_magnitude.value_or(1e3);
      else spec.magnitude = a_magnitude;
      spec.scale = a_scale;
      spec.n1 = a_n1;
      const RegressionInstance attacked = apply_attack(inst, spec);
      emit(Json(attacked), a_out);
      if (!a_ledger.empty()) write_json_file(a_ledger, Json(attacked.ledger));
      return 0;
    }
    if (*sol) {
      const auto inst = read_json_file(s_in).get<RegressionInstance>();
      Json out;
      if (s_est == "romp") {
        out = romp::romp(inst.X, inst.y, s_k, s_n1);
      } else if (s_est == "omp") {
        out = matching_pursuit_omp(inst.X, inst.y, s_k);
      } else if (s_est == "lasso") {
        auto r = lasso(inst.X, inst.y, s_lambda);
        out = Json{{"beta_hat", vector_to_json(r.beta_hat)}, {"diagnostics", r.diagnostics}};
      } else if (s_est == "jp") {
        out = justice_pursuit(inst.X, inst.y, s_lambda, s_gamma);
      } else if (s_est == "jp_fill") {
        out = jp_fill(inst.X, inst.y, s_n1, s_lambda, s_gamma, s_fill);
      } else if (s_est == "jp_row") {
        out = jp_row(inst.X, inst.y, s_n1, s_lambda, s_gamma);
      } else if (s_est == "brute_force") {
        const Index n = s_n.value_or(inst.num_rows() - s_n1);
        out = brute_force(inst.X, inst.y, n, s_k, s_guard);
      } else {
        throw InvalidArgument("unknown estimator '" + s_est + "'");
      }
      out["estimator"] = s_est;
      emit(out, s_out);
      return 0;
    }
    if (*prb) {
      const Seed seed{p_seed};
      ProbeReport r;
      if (p_name == "max_subgaussian") {
        r = probe_max_subgaussian(p_m, p_pd, p_sigma, p_trials, seed);
      } else if (p_name == "concentration") {
        r = probe_concentration(p_n, p_pd, p_trials, seed);
      } else if (p_name == "concentration_scan") {
        r = probe_concentration_scan(parse_index_list(p_ns), p_pd, p_trials, seed);
      } else if (p_name == "h_deviation") {
        r = probe_h_deviation(p_p, p_n, p_k, p_sigma, parse_index_list(p_grid), p_trials, seed);
      } else if (p_name == "bruteforce_failure") {
        r = probe_bruteforce_failure(p_p, p_k, p_n, p_n1, p_trials, seed);
      } else {
        throw InvalidArgument("unknown probe '" + p_name + "'");
      }
      emit(Json(r), p_out);
      return 0;
    }
    if (*bench) {
      ExperimentConfig config;
      if (!b_config.empty()) {
        config = read_json_file(b_config).get<ExperimentConfig>();
      } else if (b_preset == "desk") {
        config = ExperimentConfig::desk_default();
      } else if (b_preset == "full") {
        config = ExperimentConfig::full_scale();
      } else {
        throw InvalidArgument("unknown preset '" + b_preset + "'");
      }
      if (!b_out.empty()) config.output_dir = b_out;
      const SweepReport report = run_sweep(config);
      ReportFormats formats;
      formats.svg = !b_no_svg;
      emit_report(report, config.output_dir, formats);
      const Index failed = report.failed_trials();
      std::fprintf(stderr, "%zu records, %zu failed, written to %s\n", report.records.size(),
                   failed, config.output_dir.c_str());
      for (const auto& a : report.aggregates) {
        std::fprintf(stderr, "  %-8s n1=%-4zu recovery %.3f +- %.3f  rel.err %.3f +- %.3f\n",
                     a.estimator.c_str(), a.n1, a.recovery_mean, a.recovery_std, a.error_mean,
                     a.error_std);
      }
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
