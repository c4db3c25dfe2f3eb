#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vvlab/problem.hpp"
#include "vvlab/solver.hpp"
#include "vvlab/test_functions.hpp"

namespace vvl {

struct Tolerances {
  double otto_interior = 1e-3;
  double otto_boundary = 1e-3;
  /// Relative to the L1 norm of the discrete initial datum.
  double otto_initial = 0.02;
  double delta_cauchy = 1e-3;
};

/// Which trajectory the three Otto checks examine.
enum class OttoSource {
  Solver,     // smallest-(eps, delta) viscous run
  Reference,  // fine-grid Godunov run
  Antishock,  // entropy-violating weak solution built from Riemann pieces
};

struct ProblemOverrides {
  std::optional<std::string> flux;
  std::optional<double> flux_speed;
  std::optional<std::string> viscosity;
  std::optional<Interval> domain;
  std::optional<double> horizon;
  std::optional<double> bound_A;
  std::optional<std::vector<Piece>> pieces;
};

struct ExperimentConfig {
  std::string problem = "burgers_shock";
  ProblemOverrides overrides;
  std::vector<double> epsilon_list;
  std::vector<double> delta_list;
  int n_cells = 400;
  double t_end = 0.3;
  std::vector<double> k_list;
  std::vector<int> l_list;
  std::vector<double> h_list;
  std::vector<double> t_probe_list;
  Tolerances tolerances;
  std::uint64_t seed = 0;

  // Solver and orchestration settings.
  double cfl = 0.45;
  double dfl = 0.25;
  int record_every = 20;
  double mollifier_width = 0.02;
  int reference_cells = 4000;
  /// epsilon used by the delta sweep inside run_full_verification; defaults
  /// to the smallest entry of epsilon_list.
  std::optional<double> delta_sweep_epsilon;
  OttoSource otto_trajectory = OttoSource::Solver;
  int export_snapshots = 11;
  int hypothesis_samples = 100000;
  double hypothesis_tol = 1e-3;

  /// Throws ConfigError on empty or non-monotone lists, nonpositive
  /// tolerances, negative deltas, or t_end beyond the problem horizon.
  void validate() const;
  ProblemSpec build_problem() const;
  SolverConfig solver_config(double epsilon, double delta) const;
};

/// Parses the YAML config format; unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical, deterministic dump of every field (written as config.echo).
std::string echo_config(const ExperimentConfig& cfg);

struct ConvergenceRow {
  double parameter;
  double l1_distance;
  double observed_order;  // NaN for the first row
};

struct ConvergenceTable {
  std::string parameter_name;
  std::vector<ConvergenceRow> rows;
  std::string problem;
  int n_cells = 0;
  double t_end = 0.0;

  bool strictly_decreasing_distance() const;
};

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

/// sum_m dt_m |u1(t_m) - u2(t_m)|_L1 over a uniform left-endpoint time grid
/// of `levels` steps; trajectories must share the grid.
double l1_space_time_distance(const Trajectory& a, const Trajectory& b, int levels = 200);

/// L1 distance at one time, skipping `margin` cells at each end. The
/// reference is cell-averaged onto u's grid when its cell count is a
/// multiple, otherwise sampled at u's cell centers.
double l1_interior_distance(const GridFunction& u, const GridFunction& reference, int margin = 2);

struct DeltaSweepResult {
  ConvergenceTable table;
  std::vector<Trajectory> runs;
  bool decreasing = false;
  bool final_below_tolerance = false;
};

/// Requires one epsilon and at least two deltas; row i holds
/// |u^{d_i} - u^{d_{i+1}}|_{L1(Omega_T)} against the parameter d_{i+1}.
DeltaSweepResult run_delta_sweep(const ExperimentConfig& cfg, int workers = 1);

struct EpsilonSweepResult {
  ConvergenceTable table;   // distance to the reference at t_end
  ConvergenceTable cauchy;  // successive |u^{e_i} - u^{e_{i+1}}|_{L1(Omega_T)}
  std::vector<Trajectory> runs;
  Trajectory reference;
  bool decreasing = false;
};

/// Runs every epsilon at the smallest delta and compares with the fine-grid
/// Godunov run from the same mollified datum. Throws GridTooCoarse when
/// h > eps_min / 4 and NonConvexFlux when no oracle exists.
EpsilonSweepResult run_epsilon_sweep(const ExperimentConfig& cfg, int workers = 1);

/// max over the corpus of |int int u phi_t + f(u) phi_x + int u0 phi(., 0)|.
double check_weak_residual(const Trajectory& traj, const FluxModel& flux,
                           const std::vector<SpaceTimeBump>& corpus);

struct InteriorCheck {
  double worst = 0.0;
  double worst_k = 0.0;
  std::size_t worst_phi = 0;
};

/// min over (k, phi) of int int eta(u; k) phi_t + q(u; k) phi_x.
InteriorCheck check_otto_interior(const Trajectory& traj, const FluxModel& flux,
                                  const std::vector<double>& k_list,
                                  const std::vector<SpaceTimeBump>& corpus);

/// Nonnegative weight on the two boundary points of Omega x (0, T).
struct BoundaryWeight {
  double at_a = 1.0;
  double at_b = 1.0;
  bool bubble = false;  // multiply by 4 t (T - t) / T^2

  double value(bool at_left, double t, double horizon) const;
};

std::vector<BoundaryWeight> boundary_weight_corpus();

/// Limit at h -> 0 from the last three ladder points, I(h) ~ I0 + C h^p with
/// p fitted; falls back to the last value when the ladder is not monotone.
double extrapolate_limit(const std::vector<double>& hs, const std::vector<double>& values);

struct BoundaryCheck {
  double worst = 0.0;
  double worst_k = 0.0;
  int worst_l = 0;
  std::size_t worst_beta = 0;
};

/// I(h) = sum_n dt_n sum_{r in {a, b}} Q_l(u(r - h nu), 0) nu beta(r, t_n) with
/// the outward normal nu = -1 at a and +1 at b (probes sit h inside the
/// domain); reports the worst extrapolated limit over (k, l, beta).
BoundaryCheck check_otto_boundary(const Trajectory& traj, const FluxModel& flux,
                                  const std::vector<double>& k_list,
                                  const std::vector<int>& l_list,
                                  const std::vector<BoundaryWeight>& betas,
                                  const std::vector<double>& h_list);

struct InitialCheck {
  std::vector<double> probes;  // sorted decreasing
  std::vector<double> gaps;
  double smallest_gap = 0.0;
  bool decreasing = false;
};

/// L1 gaps between u(t) and the trajectory's own initial state at each probe.
/// Throws ProbeOutsideDomain for probes outside (0, t_end).
InitialCheck check_otto_initial(const Trajectory& traj, const std::vector<double>& t_probes);

struct OttoReport {
  double interior_worst = 0.0;
  double boundary_worst = 0.0;
  double initial_gap = 0.0;
  double interior_tolerance = 0.0;
  double boundary_tolerance = 0.0;
  double initial_tolerance = 0.0;
  bool interior_pass = false;
  bool boundary_pass = false;
  bool initial_pass = false;

  bool all_pass() const { return interior_pass && boundary_pass && initial_pass; }
};

void write_otto_csv(std::ostream& out, const OttoReport& report);

/// Entropy-violating weak solution for piecewise Burgers data: every
/// increasing jump is kept as a discontinuity moving at the Rankine-Hugoniot
/// speed; decreasing jumps are ordinary shocks.
Trajectory antishock_trajectory(const ProblemSpec& spec, const Grid1D& grid, double t_end,
                                int n_snapshots);

/// The trajectory selected by cfg.otto_trajectory: the smallest-(eps, delta)
/// viscous run, the fine-grid Godunov run from the mollified datum, or the
/// antishock construction on the config grid.
Trajectory otto_trajectory(const ExperimentConfig& cfg);

/// Runs the three Otto checks with the config's corpora and tolerances.
OttoReport run_otto_checks(const ExperimentConfig& cfg, const Trajectory& traj,
                           const FluxModel& flux);

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

struct VerificationOutcome {
  std::vector<CheckLine> checks;
  std::vector<std::string> errors;
  std::optional<OttoReport> otto;

  bool passed() const;
  /// 0 all checks pass, 1 a check failed, 2 a stage raised an error.
  int exit_code() const;
};

/// Hypothesis check, delta and epsilon sweeps, max-principle and energy
/// checks on every run, weak residual, measure bound and the Otto checks;
/// everything is written under out_dir. Stage errors are collected, not
/// rethrown, and whatever finished is still written.
VerificationOutcome run_full_verification(const ExperimentConfig& cfg,
                                          const std::filesystem::path& out_dir,
                                          int workers = 1);

}  // namespace vvl
