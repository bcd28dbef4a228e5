// Command-line front end: basis inspection, kernel analysis, statistic
// evaluation, bound certificates and curves, Monte Carlo tail verification.
// Every artifact embeds the config hash, master seed, and library version;
// rerunning a config reproduces all numeric fields byte-identically.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ustat/ustat.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::size_t workers = 0;
  std::string out_dir;
};

ustat::ExperimentConfig load_config(const CommonArgs& args) {
  ustat::ExperimentConfig cfg = ustat::load_experiment_config(args.config_path);
  if (args.seed_override) cfg.master_seed = *args.seed_override;
  return cfg;
}

void emit(const CommonArgs& args, const std::string& filename, const std::string& content) {
  if (args.out_dir.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(args.out_dir);
  const auto path = std::filesystem::path(args.out_dir) / filename;
  ustat::write_text_file(path.string(), content);
  std::cout << "wrote " << path.string() << "\n";
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file")->required();
  cmd->add_option("--seed", args.seed_override, "override the config master seed");
  cmd->add_option("--workers", args.workers, "worker thread count (0 = auto)");
  cmd->add_option("--out", args.out_dir, "output directory (default: stdout)");
}

int cmd_basis_check(const CommonArgs& args, std::uint32_t max_index, double tolerance) {
  const auto cfg = load_config(args);
  if (!cfg.basis) throw std::invalid_argument("config: basis section required");
  std::uint32_t top = max_index;
  if (const auto usable = cfg.basis->max_usable_index())
    top = std::min<std::uint32_t>(top, *usable);
  const auto report = ustat::check_orthonormality(*cfg.basis, top, tolerance);
  ustat::json out = ustat::artifact_header(cfg.hash, cfg.master_seed);
  out["basis"] = ustat::basis_to_json(*cfg.basis);
  out["max_index_checked"] = top;
  out["max_defect"] = report.max_defect;
  out["worst_pair"] = {report.worst_i, report.worst_j};
  out["tolerance"] = report.tolerance;
  out["all_values_finite"] = report.finite_values;
  out["pass"] = report.pass();
  emit(args, "basis_check.json", out.dump(2) + "\n");
  return report.pass() ? kExitOk : kExitViolation;
}

int cmd_kernel_analyze(const CommonArgs& args, double epsilon) {
  const auto cfg = load_config(args);
  if (!cfg.tensor || !cfg.basis)
    throw std::invalid_argument("config: kernel analyze needs tensor and basis");
  const auto kernel = ustat::kernel_from_coefficients(*cfg.tensor, *cfg.basis);
  const double defect = ustat::canonicality_defect(kernel);
  ustat::json out = ustat::artifact_header(cfg.hash, cfg.master_seed);
  out["tensor_id"] = ustat::tensor_id(*cfg.tensor);
  out["order"] = cfg.tensor->order();
  out["entries"] = cfg.tensor->size();
  out["sum_abs_f"] = cfg.tensor->norm_sum(1.0);
  out["sum_abs_f_pow"] = cfg.tensor->norm_sum(1.0 - epsilon);
  out["epsilon"] = epsilon;
  out["basis_bound"] = cfg.basis->bound();
  out["canonicality_defect"] = defect;
  out["B_f_condition_a"] = ustat::b_of_f(*cfg.tensor, cfg.basis->bound(), ustat::Condition::A);
  out["B_f_condition_b"] =
      ustat::b_of_f(*cfg.tensor, cfg.basis->bound(), ustat::Condition::B, epsilon);
  emit(args, "kernel_analyze.json", out.dump(2) + "\n");
  return kExitOk;
}

int cmd_stat_eval(const CommonArgs& args) {
  const auto cfg = load_config(args);
  if (!cfg.tensor || !cfg.basis)
    throw std::invalid_argument("config: stat eval needs tensor and basis");
  const auto xs = cfg.process->simulate(cfg.master_seed, cfg.n);
  ustat::json out = ustat::artifact_header(cfg.hash, cfg.master_seed);
  out["process_id"] = cfg.process->id();
  out["tensor_id"] = ustat::tensor_id(*cfg.tensor);
  out["n"] = cfg.n;
  out["stat_kind"] = ustat::stat_kind_name(cfg.stat);
  const double series = cfg.stat == ustat::StatKind::V
                            ? ustat::v_statistic_series(*cfg.tensor, *cfg.basis, xs)
                            : ustat::u_statistic_series(*cfg.tensor, *cfg.basis, xs);
  out["value_series"] = series;
  const ustat::NaiveLimits limits;
  if (cfg.tensor->order() <= limits.max_order && cfg.n <= limits.max_n) {
    const auto kernel = ustat::kernel_from_coefficients(*cfg.tensor, *cfg.basis);
    out["value_naive"] = cfg.stat == ustat::StatKind::V
                             ? ustat::v_statistic_naive(kernel, xs, limits)
                             : ustat::u_statistic_naive(kernel, xs, limits);
  }
  emit(args, "stat_eval.json", out.dump(2) + "\n");
  return kExitOk;
}

int cmd_bound_compute(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto cert = ustat::certificate_from_config(cfg);
  ustat::json out = ustat::artifact_header(cfg.hash, cfg.master_seed);
  out["certificate"] = ustat::certificate_to_json(cert);
  emit(args, "certificate.json", out.dump(2) + "\n");
  return kExitOk;
}

int cmd_bound_curve(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto cert = ustat::certificate_from_config(cfg);
  if (cfg.x_grid.empty()) throw std::invalid_argument("config: bound curve needs x_grid");
  std::ostringstream csv;
  csv << "x,bound\n";
  for (double x : cfg.x_grid)
    csv << ustat::format_g17(x) << "," << ustat::format_g17(cert.bound_at(x)) << "\n";
  emit(args, "bound_curve.csv", csv.str());
  return kExitOk;
}

int cmd_mc_run(const CommonArgs& args, bool require_bound) {
  const auto cfg = load_config(args);
  if (cfg.bound_kind.empty() && require_bound)
    throw std::invalid_argument("config: verify requires a bound section");
  if (cfg.bound_kind.empty()) {
    // No bound configured: emit the raw curve only.
    auto curve = ustat::curve_from_config(cfg, args.workers);
    ustat::json report = ustat::artifact_header(cfg.hash, cfg.master_seed);
    report["curve"] = ustat::curve_meta_json(curve);
    emit(args, "curve.csv", ustat::curve_to_csv(curve));
    emit(args, "report.json", report.dump(2) + "\n");
    return kExitOk;
  }
  const auto result = ustat::run_verify(cfg, args.workers, args.out_dir);
  if (args.out_dir.empty()) {
    std::cout << ustat::curve_to_csv(result.curve);
    std::cout << result.summary.dump(2) << "\n";
  }
  if (!result.report.pass) {
    std::cerr << "envelope violations: " << result.report.violations << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_process_sample(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto xs = cfg.process->simulate(cfg.master_seed, cfg.n);
  std::ostringstream os;
  for (double x : xs) os << ustat::format_g17(x) << "\n";
  emit(args, "sample.txt", os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal-series U/V-statistics: bounds, simulation, verification"};
  app.require_subcommand(1);

  CommonArgs basis_args;
  std::uint32_t basis_max_index = 8;
  double basis_tolerance = 1e-10;
  auto* basis = app.add_subcommand("basis", "basis operations");
  basis->require_subcommand(1);
  auto* basis_check = basis->add_subcommand("check", "orthonormality report");
  add_common(basis_check, basis_args);
  basis_check->add_option("--max-index", basis_max_index, "highest basis index checked");
  basis_check->add_option("--tolerance", basis_tolerance, "defect tolerance");

  CommonArgs kernel_args;
  double kernel_epsilon = 0.5;
  auto* kernel = app.add_subcommand("kernel", "kernel operations");
  kernel->require_subcommand(1);
  auto* kernel_analyze = kernel->add_subcommand("analyze", "coefficient mass and canonicality");
  add_common(kernel_analyze, kernel_args);
  kernel_analyze->add_option("--epsilon", kernel_epsilon, "fractional-norm exponent");

  CommonArgs stat_args;
  auto* stat = app.add_subcommand("stat", "statistic operations");
  stat->require_subcommand(1);
  auto* stat_eval = stat->add_subcommand("eval", "evaluate the statistic on one sample");
  add_common(stat_eval, stat_args);

  CommonArgs bound_args;
  auto* bound = app.add_subcommand("bound", "bound operations");
  bound->require_subcommand(1);
  auto* bound_compute = bound->add_subcommand("compute", "emit a bound certificate");
  add_common(bound_compute, bound_args);
  CommonArgs curve_args;
  auto* bound_curve = bound->add_subcommand("curve", "evaluate the bound on the x grid");
  add_common(bound_curve, curve_args);

  CommonArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo operations");
  mc->require_subcommand(1);
  auto* mc_run = mc->add_subcommand("run", "tail curve + envelope report");
  add_common(mc_run, mc_args);

  CommonArgs verify_args;
  auto* verify = app.add_subcommand("verify", "bound compute + mc run + envelope check");
  add_common(verify, verify_args);

  CommonArgs sample_args;
  auto* process = app.add_subcommand("process", "process operations");
  process->require_subcommand(1);
  auto* process_sample = process->add_subcommand("sample", "export a trajectory");
  add_common(process_sample, sample_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (basis_check->parsed()) return cmd_basis_check(basis_args, basis_max_index, basis_tolerance);
    if (kernel_analyze->parsed()) return cmd_kernel_analyze(kernel_args, kernel_epsilon);
    if (stat_eval->parsed()) return cmd_stat_eval(stat_args);
    if (bound_compute->parsed()) return cmd_bound_compute(bound_args);
    if (bound_curve->parsed()) return cmd_bound_curve(curve_args);
    if (mc_run->parsed()) return cmd_mc_run(mc_args, false);
    if (verify->parsed()) return cmd_mc_run(verify_args, true);
    if (process_sample->parsed()) return cmd_process_sample(sample_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::cerr << "error: no subcommand\n";
  return kExitError;
}
