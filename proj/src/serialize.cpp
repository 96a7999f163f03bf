#include "romp/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "romp/errors.hpp"

namespace romp {

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double read_number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw InvalidArgument("json: expected a number, got " + j.dump());
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("json: missing field '") + key + "'");
  return *it;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* what) {
  if (!j.is_object()) throw InvalidArgument(std::string("json: ") + what + " must be an object");
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw InvalidArgument(std::string("json: unknown ") + what + " field '" + item.key() + "'");
    }
  }
}

Json number_map(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = number(v);
  return out;
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("json: expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = read_number(j[i]);
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("json: matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InvalidArgument("json: matrix rows must be arrays of equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_number(j[r][c]);
    }
  }
  return m;
}

void to_json(Json& j, const CorruptionLedger& ledger) {
  Json cells = Json::array();
  for (const Cell& c : ledger.cells) cells.push_back(Json::array({c.row, c.column}));
  j = Json{{"model", to_string(ledger.model)},
           {"budget", ledger.budget},
           {"attack", ledger.attack_name},
           {"rows", ledger.rows},
           {"cells", std::move(cells)}};
}

void from_json(const Json& j, CorruptionLedger& ledger) {
  reject_unknown(j, {"model", "budget", "attack", "rows", "cells"}, "ledger");
  ledger.model = corruption_model_from_string(field(j, "model").get<std::string>());
  ledger.budget = field(j, "budget").get<Index>();
  ledger.attack_name = j.value("attack", std::string{});
  ledger.rows = j.value("rows", std::vector<Index>{});
  ledger.cells.clear();
  if (j.contains("cells")) {
    for (const auto& c : j.at("cells")) {
      if (!c.is_array() || c.size() != 2) throw InvalidArgument("json: ledger cell must be [row, col]");
      ledger.cells.push_back(Cell{c[0].get<Index>(), c[1].get<std::int64_t>()});
    }
  }
}

void to_json(Json& j, const SparseSignal& signal) {
  j = Json{{"dimension", signal.dimension()},
           {"support", std::vector<Index>(signal.support().begin(), signal.support().end())},
           {"values", vector_to_json(signal.values())}};
}

void from_json(const Json& j, SparseSignal& signal) {
  reject_unknown(j, {"dimension", "support", "values"}, "signal");
  SupportSet support(field(j, "support").get<std::vector<Index>>(),
                     field(j, "dimension").get<Index>());
  signal = SparseSignal(std::move(support), vector_from_json(field(j, "values")));
}

void to_json(Json& j, const RegressionInstance& inst) {
  j = Json{{"format", "romp-instance/1"},
           {"n", inst.n},
           {"noise_sigma", number(inst.noise_sigma)},
           {"X", matrix_to_json(inst.X)},
           {"y", vector_to_json(inst.y)},
           {"truth", inst.truth},
           {"authentic_rows", inst.authentic_rows},
           {"ledger", inst.ledger}};
}

void from_json(const Json& j, RegressionInstance& inst) {
  reject_unknown(j, {"format", "n", "noise_sigma", "X", "y", "truth", "authentic_rows", "ledger"},
                 "instance");
  if (j.contains("format") && j.at("format") != "romp-instance/1") {
    throw InvalidArgument("json: unsupported instance format " + j.at("format").dump());
  }
  inst.n = field(j, "n").get<Index>();
  inst.noise_sigma = read_number(field(j, "noise_sigma"));
  inst.X = matrix_from_json(field(j, "X"));
  inst.y = vector_from_json(field(j, "y"));
  inst.truth = field(j, "truth").get<SparseSignal>();
  inst.authentic_rows = field(j, "authentic_rows").get<std::vector<Index>>();
  inst.ledger = field(j, "ledger").get<CorruptionLedger>();
  inst.validate();
}

void to_json(Json& j, const Diagnostics& d) {
  j = Json{{"iterations", d.iterations},
           {"objective", number(d.objective)},
           {"converged", d.converged},
           {"wall_time_s", d.wall_time_s}};
}

void to_json(Json& j, const EstimatorResult& r) {
  j = Json{{"beta_hat", vector_to_json(r.beta_hat)},
           {"support_hat",
            std::vector<Index>(r.support_hat.begin(), r.support_hat.end())},
           {"diagnostics", r.diagnostics}};
}

void to_json(Json& j, const JusticePursuitResult& r) {
  j = Json{{"beta_hat", vector_to_json(r.beta_hat)},
           {"z_hat", vector_to_json(r.z_hat)},
           {"discarded_rows", r.discarded_rows},
           {"diagnostics", r.diagnostics}};
}

void to_json(Json& j, const BruteForceResult& r) {
  j = r.estimate;
  j["rows_hat"] = r.rows_hat;
  j["candidates"] = r.candidates;
  j["degenerate"] = r.degenerate;
}

void to_json(Json& j, const FittedConstant& c) {
  j = Json{{"value", number(c.value)}, {"ci_low", number(c.ci_low)}, {"ci_high", number(c.ci_high)}};
}

void to_json(Json& j, const ProbeReport& r) {
  Json series = Json::object();
  for (const auto& [k, v] : r.series) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(number(x));
    series[k] = std::move(arr);
  }
  j = Json{{"probe", r.probe},
           {"trials", r.trials},
           {"violations", r.violations},
           {"violation_rate", number(r.violation_rate)},
           {"parameters", number_map(r.parameters)},
           {"statistics", number_map(r.statistics)},
           {"bounds", number_map(r.bounds)},
           {"fitted", r.fitted},
           {"series", std::move(series)},
           {"passed", r.passed}};
}

void to_json(Json& j, const ExperimentConfig& c) {
  Json estimators = Json::array();
  for (const auto& e : c.estimators) {
    estimators.push_back(Json{{"name", e.name},
                              {"grid_points", e.grid_points},
                              {"grid_decades", e.grid_decades},
                              {"fill_scale", e.fill_scale}});
  }
  Json attack = Json{{"name", to_string(c.attack.name)}};
  if (c.attack.magnitude) attack["magnitude"] = *c.attack.magnitude;
  if (c.attack.scale) attack["scale"] = *c.attack.scale;
  j = Json{{"p", c.p},
           {"n", c.n},
           {"k", c.k},
           {"noise_sigma", c.noise_sigma},
           {"signal", to_string(c.signal)},
           {"design", to_string(c.design)},
           {"attack", std::move(attack)},
           {"estimators", std::move(estimators)},
           {"n1_fractions", c.n1_fractions},
           {"trials", c.trials},
           {"seed", c.seed},
           {"output_dir", c.output_dir}};
}

void from_json(const Json& j, ExperimentConfig& c) {
  reject_unknown(j,
                 {"p", "n", "k", "noise_sigma", "signal", "design", "attack", "estimators",
                  "n1_fractions", "trials", "seed", "output_dir"},
                 "config");
  c = ExperimentConfig::desk_default();
  if (j.contains("p")) c.p = j.at("p").get<Index>();
  if (j.contains("n")) c.n = j.at("n").get<Index>();
  if (j.contains("k")) c.k = j.at("k").get<Index>();
  if (j.contains("noise_sigma")) c.noise_sigma = j.at("noise_sigma").get<double>();
  if (j.contains("signal")) c.signal = signal_kind_from_string(j.at("signal").get<std::string>());
  if (j.contains("design")) c.design = design_kind_from_string(j.at("design").get<std::string>());
  if (j.contains("attack")) {
    const Json& a = j.at("attack");
    reject_unknown(a, {"name", "magnitude", "scale"}, "attack");
    c.attack = AttackConfig{};
    c.attack.name = attack_name_from_string(field(a, "name").get<std::string>());
    if (a.contains("magnitude")) c.attack.magnitude = a.at("magnitude").get<double>();
    if (a.contains("scale")) c.attack.scale = a.at("scale").get<double>();
  }
  if (j.contains("estimators")) {
    c.estimators.clear();
    for (const auto& e : j.at("estimators")) {
      EstimatorSpec spec;
      if (e.is_string()) {
        spec.name = e.get<std::string>();
      } else {
        reject_unknown(e, {"name", "grid_points", "grid_decades", "fill_scale"}, "estimator");
        spec.name = field(e, "name").get<std::string>();
        spec.grid_points = e.value("grid_points", spec.grid_points);
        spec.grid_decades = e.value("grid_decades", spec.grid_decades);
        spec.fill_scale = e.value("fill_scale", spec.fill_scale);
      }
      c.estimators.push_back(spec);
    }
  }
  if (j.contains("n1_fractions")) c.n1_fractions = j.at("n1_fractions").get<std::vector<double>>();
  if (j.contains("trials")) c.trials = j.at("trials").get<Index>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
}

void to_json(Json& j, const TrialRecord& r) {
  j = Json{{"estimator", r.estimator},
           {"n1", r.n1},
           {"n1_fraction", r.n1_fraction},
           {"trial", r.trial},
           {"seed", r.seed},
           {"support_recovery", number(r.support_recovery)},
           {"relative_l2_error", number(r.relative_l2_error)},
           {"lambda", number(r.lambda)},
           {"gamma", number(r.gamma)},
           {"failed", r.failed},
           {"message", r.message}};
}

void from_json(const Json& j, TrialRecord& r) {
  r = TrialRecord{};
  r.estimator = field(j, "estimator").get<std::string>();
  r.n1 = field(j, "n1").get<Index>();
  r.n1_fraction = read_number(field(j, "n1_fraction"));
  r.trial = field(j, "trial").get<Index>();
  r.seed = field(j, "seed").get<std::uint64_t>();
  r.support_recovery = read_number(field(j, "support_recovery"));
  r.relative_l2_error = read_number(field(j, "relative_l2_error"));
  r.lambda = read_number(field(j, "lambda"));
  r.gamma = read_number(field(j, "gamma"));
  r.failed = field(j, "failed").get<bool>();
  r.message = j.value("message", std::string{});
}

void to_json(Json& j, const Aggregate& a) {
  j = Json{{"estimator", a.estimator},
           {"n1", a.n1},
           {"n1_fraction", a.n1_fraction},
           {"count", a.count},
           {"failures", a.failures},
           {"support_recovery_mean", number(a.recovery_mean)},
           {"support_recovery_std", number(a.recovery_std)},
           {"relative_l2_error_mean", number(a.error_mean)},
           {"relative_l2_error_std", number(a.error_std)}};
}

void from_json(const Json& j, Aggregate& a) {
  a.estimator = field(j, "estimator").get<std::string>();
  a.n1 = field(j, "n1").get<Index>();
  a.n1_fraction = read_number(field(j, "n1_fraction"));
  a.count = field(j, "count").get<Index>();
  a.failures = field(j, "failures").get<Index>();
  a.recovery_mean = read_number(field(j, "support_recovery_mean"));
  a.recovery_std = read_number(field(j, "support_recovery_std"));
  a.error_mean = read_number(field(j, "relative_l2_error_mean"));
  a.error_std = read_number(field(j, "relative_l2_error_std"));
}

void to_json(Json& j, const SweepReport& r) {
  j = Json{{"format", "romp-sweep/1"},
           {"tuning", "lasso and jp-family hyperparameters chosen by oracle l2 error against the "
                      "ground truth; romp given the true (k, n1)"},
           {"config", r.config},
           {"records", r.records},
           {"aggregates", r.aggregates}};
}

void from_json(const Json& j, SweepReport& r) {
  r.config = field(j, "config").get<ExperimentConfig>();
  r.records = field(j, "records").get<std::vector<TrialRecord>>();
  r.aggregates = field(j, "aggregates").get<std::vector<Aggregate>>();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace romp
