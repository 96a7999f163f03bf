#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "romp/corruption.hpp"
#include "romp/datagen.hpp"
#include "romp/errors.hpp"
#include "romp/estimators.hpp"
#include "romp/harness.hpp"
#include "romp/probes.hpp"
#include "romp/serialize.hpp"

namespace py = pybind11;
using namespace romp;

namespace {

std::vector<Index> indices(const SupportSet& s) { return {s.begin(), s.end()}; }

RegressionInstance parse_instance(const std::string& text) {
  return Json::parse(text).get<RegressionInstance>();
}

}  // namespace

PYBIND11_MODULE(_romp, m) {
  m.doc() = "Robust matching pursuit core";

  // translators are tried newest first, so the base class goes first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("trimmed_inner_product", &trimmed_inner_product, py::arg("a"), py::arg("b"),
        py::arg("n1"));
  m.def("trimmed_correlations", &trimmed_correlations, py::arg("X"), py::arg("y"),
        py::arg("n1"));

  m.def(
      "romp",
      [](const Matrix& X, const Vector& y, Index k, Index n1) {
        py::gil_scoped_release release;
        auto r = romp::romp(X, y, k, n1);
        return std::make_tuple(r.beta_hat, indices(r.support_hat));
      },
      py::arg("X"), py::arg("y"), py::arg("k"), py::arg("n1"),
      "Returns (beta_hat, support).");
  m.def(
      "omp",
      [](const Matrix& X, const Vector& y, Index k) {
        py::gil_scoped_release release;
        auto r = matching_pursuit_omp(X, y, k);
        return std::make_tuple(r.beta_hat, indices(r.support_hat));
      },
      py::arg("X"), py::arg("y"), py::arg("k"));
  m.def(
      "lasso",
      [](const Matrix& X, const Vector& y, double lambda) {
        py::gil_scoped_release release;
        return lasso(X, y, lambda).beta_hat;
      },
      py::arg("X"), py::arg("y"), py::arg("lam"));
  m.def(
      "justice_pursuit",
      [](const Matrix& X, const Vector& y, double lambda, double gamma) {
        py::gil_scoped_release release;
        auto r = justice_pursuit(X, y, lambda, gamma);
        return std::make_tuple(r.beta_hat, r.z_hat);
      },
      py::arg("X"), py::arg("y"), py::arg("lam"), py::arg("gamma"),
      "Returns (beta_hat, z_hat).");
  m.def(
      "brute_force",
      [](const Matrix& X, const Vector& y, Index n, Index k, double size_guard) {
        py::gil_scoped_release release;
        auto r = brute_force(X, y, n, k, size_guard);
        return std::make_tuple(r.estimate.beta_hat, indices(r.estimate.support_hat), r.rows_hat,
                               r.estimate.diagnostics.objective);
      },
      py::arg("X"), py::arg("y"), py::arg("n"), py::arg("k"), py::arg("size_guard") = 1e7,
      "Returns (beta_hat, support, rows, objective).");

  m.def(
      "generate",
      [](Index n, Index p, Index k, Index n1, double sigma, const std::string& signal,
         const std::string& design, std::uint64_t seed) {
        InstanceParams params;
        params.n = n;
        params.n1 = n1;
        params.p = p;
        params.design = design_kind_from_string(design);
        params.signal.kind = signal_kind_from_string(signal);
        params.signal.k = k;
        params.noise_sigma = sigma;
        return Json(assemble_instance(params, Seed{seed})).dump();
      },
      py::arg("n"), py::arg("p"), py::arg("k"), py::arg("n1") = 0, py::arg("sigma") = 0.0,
      py::arg("signal") = "pm_one", py::arg("design") = "gaussian", py::arg("seed") = 1,
      "Instance JSON text.");
  m.def(
      "attack",
      [](const std::string& instance, const std::string& name, std::uint64_t seed,
         std::optional<double> magnitude, std::optional<double> scale,
         std::optional<Index> n1) {
        AttackSpec spec;
        spec.name = attack_name_from_string(name);
        spec.seed = Seed{seed};
        spec.magnitude = magnitude;
        spec.scale = scale;
        spec.n1 = n1;
        return Json(apply_attack(parse_instance(instance), spec)).dump();
      },
      py::arg("instance"), py::arg("name"), py::arg("seed") = 1,
      py::arg("magnitude") = py::none(), py::arg("scale") = py::none(),
      py::arg("n1") = py::none());

  m.def(
      "probe_max_subgaussian",
      [](Index m_, double p, double sigma, Index trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return Json(probe_max_subgaussian(m_, p, sigma, trials, Seed{seed})).dump();
      },
      py::arg("m"), py::arg("p"), py::arg("sigma") = 1.0, py::arg("trials") = 1000,
      py::arg("seed") = 1);
  m.def(
      "probe_concentration_scan",
      [](const std::vector<Index>& ns, double p, Index trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return Json(probe_concentration_scan(ns, p, trials, Seed{seed})).dump();
      },
      py::arg("ns"), py::arg("p"), py::arg("trials") = 1000, py::arg("seed") = 1);
  m.def(
      "probe_h_deviation",
      [](Index p, Index n, Index k, double sigma, const std::vector<Index>& grid, Index trials,
         std::uint64_t seed) {
        py::gil_scoped_release release;
        return Json(probe_h_deviation(p, n, k, sigma, grid, trials, Seed{seed})).dump();
      },
      py::arg("p"), py::arg("n"), py::arg("k"), py::arg("sigma"), py::arg("n1_grid"),
      py::arg("trials") = 100, py::arg("seed") = 1);
  m.def(
      "probe_bruteforce_failure",
      [](Index p, Index k, Index n, Index n1, Index trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return Json(probe_bruteforce_failure(p, k, n, n1, trials, Seed{seed})).dump();
      },
      py::arg("p"), py::arg("k"), py::arg("n"), py::arg("n1"), py::arg("trials") = 200,
      py::arg("seed") = 1);

  m.def(
      "run_sweep",
      [](const std::string& config, const std::string& out_dir) {
        const auto c = Json::parse(config).get<ExperimentConfig>();
        SweepReport r;
        {
          py::gil_scoped_release release;
          r = run_sweep(c);
          if (!out_dir.empty()) emit_report(r, out_dir);
        }
        return Json(r).dump();
      },
      py::arg("config"), py::arg("out_dir") = "",
      "Runs a sweep from config JSON text; returns the report JSON text.");
}
