#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vvlab/errors.hpp"
#include "vvlab/harness.hpp"
#include "vvlab/problem.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  int workers = 1;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  cmd->add_option("config", c.config, "experiment config (YAML)")->required()->check(CLI::ExistingFile);
  if (with_out) cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--workers", c.workers, "parallel solver runs")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "override the config seed");
}

vvl::ExperimentConfig load(const Common& c) {
  auto cfg = vvl::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  return cfg;
}

void emit_table(const Common& c, const std::string& file, const vvl::ConvergenceTable& table) {
  if (c.out.empty()) {
    vvl::write_convergence_csv(std::cout, table);
    return;
  }
  std::filesystem::create_directories(c.out);
  std::ofstream f(std::filesystem::path(c.out) / file, std::ios::binary);
  vvl::write_convergence_csv(f, table);
}

int cmd_verify(const Common& c) {
  const auto cfg = load(c);
  const std::string out = c.out.empty() ? "vvlab_run" : c.out;
  const auto outcome = vvl::run_full_verification(cfg, out, c.workers);
  for (const auto& line : outcome.checks) {
    std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << "  " << line.detail << '\n';
  }
  for (const auto& e : outcome.errors) std::cerr << "error: " << e << '\n';
  return outcome.exit_code();
}

int cmd_sweep_eps(const Common& c) {
  const auto cfg = load(c);
  const auto res = vvl::run_epsilon_sweep(cfg, c.workers);
  emit_table(c, "convergence_eps.csv", res.table);
  if (!c.out.empty()) emit_table(c, "convergence_eps_cauchy.csv", res.cauchy);
  return res.decreasing ? 0 : 1;
}

int cmd_sweep_delta(const Common& c) {
  auto cfg = load(c);
  cfg.epsilon_list = {cfg.delta_sweep_epsilon.value_or(cfg.epsilon_list.back())};
  const auto res = vvl::run_delta_sweep(cfg, c.workers);
  emit_table(c, "convergence_delta.csv", res.table);
  return res.decreasing && res.final_below_tolerance ? 0 : 1;
}

int cmd_otto(const Common& c) {
  const auto cfg = load(c);
  const auto spec = cfg.build_problem();
  const auto traj = vvl::otto_trajectory(cfg);
  const auto report = vvl::run_otto_checks(cfg, traj, spec.flux);
  vvl::write_otto_csv(std::cout, report);
  return report.all_pass() ? 0 : 1;
}

int cmd_hypothesis(const Common& c) {
  const auto cfg = load(c);
  const auto h = vvl::check_hypothesis_g(cfg.build_problem(), cfg.hypothesis_samples,
                                         cfg.hypothesis_tol, cfg.seed);
  std::printf("a sup|f'| = %.6g at %.6g: %s\n", h.sup_flux_deriv, h.sup_flux_deriv_at,
              h.clause_a ? "ok" : "fail");
  std::printf("b min B = %.6g at %.6g: %s\n", h.min_viscosity, h.min_viscosity_at,
              h.clause_b ? "ok" : "fail");
  std::printf("c sup|u0| = %.6g: %s\n", h.sup_initial, h.clause_c ? "ok" : "fail");
  std::printf("d near-zero fraction %.6g (fine %.6g) at (%.4f, %.4f): %s\n", h.max_fraction,
              h.max_fraction_fine, h.worst_tau, h.worst_xi, h.clause_d ? "ok" : "fail");
  return h.passes() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vanishing viscosity verification lab"};
  app.require_subcommand(1);
  Common verify, eps, delta, otto, hyp;
  auto* v = app.add_subcommand("verify", "run every check and write a run directory");
  add_common(v, verify, true);
  auto* se = app.add_subcommand("sweep-eps", "epsilon sweep against the Godunov reference");
  add_common(se, eps, true);
  auto* sd = app.add_subcommand("sweep-delta", "delta sweep at fixed epsilon");
  add_common(sd, delta, true);
  auto* ot = app.add_subcommand("otto", "the three Otto checks on one trajectory");
  add_common(ot, otto, false);
  auto* hy = app.add_subcommand("hypothesis", "sampled check of the structural hypotheses");
  add_common(hy, hyp, false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*v) return cmd_verify(verify);
    if (*se) return cmd_sweep_eps(eps);
    if (*sd) return cmd_sweep_delta(delta);
    if (*ot) return cmd_otto(otto);
    if (*hy) return cmd_hypothesis(hyp);
  } catch (const vvl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
