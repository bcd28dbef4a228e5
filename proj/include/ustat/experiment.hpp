#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ustat/basis.hpp"
#include "ustat/bounds.hpp"
#include "ustat/kernel.hpp"
#include "ustat/montecarlo.hpp"
#include "ustat/process.hpp"
#include "ustat/serialization.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

// Evaluation grid description: count points from min to max, spaced
// linearly or geometrically.
struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 1;
  std::string spacing = "linear";
};

inline std::vector<double> make_grid(const GridSpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("grid: count must be >= 1");
  if (spec.count == 1) return {spec.min};
  if (!(spec.max > spec.min)) throw std::invalid_argument("grid: need max > min");
  std::vector<double> grid(spec.count);
  if (spec.spacing == "linear") {
    for (std::size_t i = 0; i < spec.count; ++i)
      grid[i] = spec.min + (spec.max - spec.min) * static_cast<double>(i) /
                               static_cast<double>(spec.count - 1);
  } else if (spec.spacing == "geometric") {
    if (!(spec.min > 0.0))
      throw std::invalid_argument("grid: geometric spacing needs min > 0");
    const double ratio = spec.max / spec.min;
    for (std::size_t i = 0; i < spec.count; ++i)
      grid[i] = spec.min * std::pow(ratio, static_cast<double>(i) /
                                               static_cast<double>(spec.count - 1));
  } else {
    throw std::invalid_argument("grid: spacing must be 'linear' or 'geometric'");
  }
  return grid;
}

// Explicit kernels available by name in configs (for the naive-path
// experiments that do not go through a coefficient tensor).
inline Kernel named_kernel(const std::string& name, std::size_t order) {
  if (name == "product") {
    // f(t_1,...,t_m) = prod t_k on the unit cube, values in [0,1].
    return Kernel(order, uniform_unit_measure(), [](std::span<const double> t) {
      double p = 1.0;
      for (double v : t) p *= v;
      return p;
    });
  }
  throw std::invalid_argument("unknown kernel name: " + name);
}

// Fully resolved experiment description, built from a JSON config file.
struct ExperimentConfig {
  std::string config_text;
  std::string hash;
  std::optional<MixingProcess> process;
  std::optional<CoefficientTensor> tensor;
  std::optional<OrthonormalBasis> basis;
  StatKind stat = StatKind::V;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::vector<double> x_grid;
  std::uint64_t master_seed = 1;
  std::string bound_kind;  // condition_a | condition_b | dedecker | hoeffding_1963 | none
  double epsilon = 0.5;
  double envelope_c1 = 1.0;
  std::size_t moment_depth = 64;
  double range_a = 0.0;
  double range_b = 1.0;
  std::string kernel_name;
  std::size_t kernel_order = 2;
};

namespace detail {

template <typename T>
T require_key(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key))
    throw std::invalid_argument("config: missing key '" + key + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config: key '" + key + "' in " + where + " has the wrong type");
  }
}

inline MixingProcess process_from_json(const json& j) {
  const auto kind = require_key<std::string>(j, "kind", "process");
  if (kind == "iid") {
    if (j.contains("probabilities"))
      return iid_process(finite_measure(j.at("probabilities").get<std::vector<double>>()));
    return iid_process(uniform_unit_measure());
  }
  if (kind == "m_dependent")
    return m_dependent_process(require_key<std::size_t>(j, "dependence", "process"));
  if (kind == "markov")
    return markov_process(require_key<TransitionMatrix>(j, "transition", "process"));
  if (kind == "embedded_markov")
    return embedded_markov_process(require_key<TransitionMatrix>(j, "transition", "process"));
  throw std::invalid_argument("config: unknown process kind '" + kind + "'");
}

inline OrthonormalBasis basis_from_json(const json& j, const MixingProcess& process) {
  const auto kind = require_key<std::string>(j, "kind", "basis");
  if (kind == "trig") {
    if (is_finite_alphabet(process.marginal()))
      throw std::invalid_argument("config: trig basis requires a continuous marginal");
    return make_trig_basis();
  }
  if (kind == "finite") {
    if (!is_finite_alphabet(process.marginal()))
      throw std::invalid_argument("config: finite basis requires a finite-alphabet marginal");
    return make_finite_basis(std::get<FiniteAlphabet>(process.marginal()).probabilities);
  }
  throw std::invalid_argument("config: unknown basis kind '" + kind + "'");
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const std::string& config_text) {
  json j;
  try {
    j = json::parse(config_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.config_text = config_text;
  cfg.hash = config_hash(config_text);
  cfg.process = detail::process_from_json(
      detail::require_key<json>(j, "process", "top level"));
  if (j.contains("tensor")) cfg.tensor = tensor_from_json(j.at("tensor"));
  if (j.contains("basis")) cfg.basis = detail::basis_from_json(j.at("basis"), *cfg.process);
  if (j.contains("stat")) {
    const auto s = j.at("stat").get<std::string>();
    if (s == "U")
      cfg.stat = StatKind::U;
    else if (s == "V")
      cfg.stat = StatKind::V;
    else
      throw std::invalid_argument("config: stat must be 'U' or 'V'");
  }
  cfg.n = detail::require_key<std::size_t>(j, "n", "top level");
  cfg.reps = detail::require_key<std::size_t>(j, "reps", "top level");
  if (j.contains("x_grid")) {
    const json& g = j.at("x_grid");
    GridSpec spec;
    spec.min = detail::require_key<double>(g, "min", "x_grid");
    spec.max = detail::require_key<double>(g, "max", "x_grid");
    spec.count = detail::require_key<std::size_t>(g, "count", "x_grid");
    if (g.contains("spacing")) spec.spacing = g.at("spacing").get<std::string>();
    cfg.x_grid = make_grid(spec);
  }
  if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("bound")) {
    const json& b = j.at("bound");
    cfg.bound_kind = detail::require_key<std::string>(b, "kind", "bound");
    if (b.contains("epsilon")) cfg.epsilon = b.at("epsilon").get<double>();
    if (b.contains("envelope_c1")) cfg.envelope_c1 = b.at("envelope_c1").get<double>();
    if (b.contains("moment_depth")) cfg.moment_depth = b.at("moment_depth").get<std::size_t>();
    if (b.contains("range_a")) cfg.range_a = b.at("range_a").get<double>();
    if (b.contains("range_b")) cfg.range_b = b.at("range_b").get<double>();
  }
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    cfg.kernel_name = detail::require_key<std::string>(k, "kind", "kernel");
    if (k.contains("order")) cfg.kernel_order = k.at("order").get<std::size_t>();
  }
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path));
}

// Builds the configured bound certificate. Requires the pieces the kind
// needs (tensor+basis for A/B, basis for dedecker, ranges for hoeffding).
inline BoundCertificate certificate_from_config(const ExperimentConfig& cfg) {
  if (cfg.bound_kind == "condition_a" || cfg.bound_kind == "condition_b") {
    if (!cfg.tensor || !cfg.basis)
      throw std::invalid_argument("config: condition A/B bounds need tensor and basis");
    const PhiProfile profile = phi_profile(*cfg.process, 64, cfg.envelope_c1);
    if (cfg.bound_kind == "condition_a")
      return certificate_condition_a(*cfg.tensor, cfg.basis->bound(), profile,
                                     cfg.moment_depth);
    return certificate_condition_b(*cfg.tensor, cfg.basis->bound(), profile, cfg.epsilon);
  }
  if (cfg.bound_kind == "dedecker") {
    if (!cfg.basis) throw std::invalid_argument("config: dedecker bound needs a basis");
    return certificate_dedecker(cfg.n, cfg.basis->bound(), *cfg.process);
  }
  if (cfg.bound_kind == "hoeffding_1963") {
    const std::size_t m = cfg.kernel_name.empty() ? (cfg.tensor ? cfg.tensor->order() : 2)
                                                  : cfg.kernel_order;
    return certificate_hoeffding(cfg.n, m, cfg.range_a, cfg.range_b);
  }
  throw std::invalid_argument("config: unknown or missing bound kind '" + cfg.bound_kind + "'");
}

// Runs the configured Monte Carlo experiment (series path, or the
// naive/centered path for the classical U-statistic bound).
inline TailCurve curve_from_config(const ExperimentConfig& cfg, std::size_t workers) {
  if (cfg.x_grid.empty()) throw std::invalid_argument("config: missing x_grid");
  TailCurve curve;
  if (cfg.bound_kind == "hoeffding_1963") {
    if (cfg.kernel_name.empty())
      throw std::invalid_argument("config: hoeffding_1963 experiment needs a named kernel");
    const Kernel kernel = named_kernel(cfg.kernel_name, cfg.kernel_order);
    curve = run_hoeffding_experiment(*cfg.process, kernel, cfg.n, cfg.reps, cfg.x_grid,
                                     cfg.master_seed, workers);
    curve.tensor_id = "kernel:" + cfg.kernel_name;
  } else {
    if (!cfg.tensor || !cfg.basis)
      throw std::invalid_argument("config: series experiment needs tensor and basis");
    curve = run_tail_experiment(*cfg.process, *cfg.tensor, *cfg.basis, cfg.stat, cfg.n,
                                cfg.reps, cfg.x_grid, cfg.master_seed, workers);
    curve.tensor_id = tensor_id(*cfg.tensor);
  }
  return curve;
}

struct VerifyResult {
  TailCurve curve;
  BoundCertificate certificate;
  EnvelopeReport report;
  json summary;
};

// Full pipeline: certificate + Monte Carlo curve + envelope check, with
// artifacts (curve.csv, certificate.json, report.json) written to out_dir.
inline VerifyResult run_verify(const ExperimentConfig& cfg, std::size_t workers,
                               const std::string& out_dir) {
  VerifyResult result;
  result.certificate = certificate_from_config(cfg);
  result.curve = curve_from_config(cfg, workers);
  apply_bound(result.curve, result.certificate);
  result.report = verify_envelope(result.curve, result.certificate);

  json summary = artifact_header(cfg.hash, cfg.master_seed);
  summary["curve"] = curve_meta_json(result.curve);
  summary["certificate"] = certificate_to_json(result.certificate);
  summary["report"] = envelope_report_to_json(result.report);
  result.summary = summary;

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    write_text_file((dir / "curve.csv").string(), curve_to_csv(result.curve));
    write_text_file((dir / "certificate.json").string(),
                    certificate_to_json(result.certificate).dump(2) + "\n");
    write_text_file((dir / "report.json").string(), summary.dump(2) + "\n");
  }
  return result;
}

}  // namespace ustat
