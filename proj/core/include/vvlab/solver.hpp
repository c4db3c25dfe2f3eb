#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "vvlab/problem.hpp"

namespace vvl {

/// Uniform cell-centered grid on [a, b].
class Grid1D {
 public:
  Grid1D(int n_cells, double a, double b);

  int n_cells() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double h() const { return h_; }
  double center(int i) const { return a_ + (i + 0.5) * h_; }
  std::vector<double> centers() const;

 private:
  int n_;
  double a_, b_, h_;
};

/// Cell averages on a grid. Ghost cells on both sides hold 0.
struct GridFunction {
  Grid1D grid;
  std::vector<double> values;

  explicit GridFunction(Grid1D g) : grid(g), values(g.n_cells(), 0.0) {}
  GridFunction(Grid1D g, std::vector<double> v);

  int size() const { return grid.n_cells(); }
  double operator[](int i) const { return values[i]; }
  /// Value with the Dirichlet ghost convention: 0 for i < 0 or i >= n.
  double with_ghost(int i) const { return (i < 0 || i >= size()) ? 0.0 : values[i]; }
  /// Piecewise-linear interpolant through cell centers and ghost centers.
  double sample(double x) const;
  double min() const;
  double max() const;
  double max_abs() const;
  double mass() const;
  double l1_norm() const;
  double l2_norm_squared() const;
};

GridFunction sample_on_grid(const Grid1D& grid, const ScalarFn& u);

struct SolverConfig {
  double epsilon = 0.05;
  double delta = 1e-3;
  double cfl = 0.45;
  /// Diffusive safety factor; cfl + 2 dfl <= 1 makes the update a convex
  /// combination of neighbours.
  double dfl = 0.25;
  double t_end = 0.3;
  int record_every = 1;
  double mollifier_width = 0.02;

  /// Throws InvalidArgument on epsilon <= 0, delta < 0, cfl/dfl out of range,
  /// t_end <= 0 or t_end > spec.horizon.
  void validate(const ProblemSpec& spec) const;
};

/// Time-indexed snapshots of a discrete solution on Omega x [0, t_end].
/// epsilon == 0 in `config` marks an inviscid (oracle or constructed) run.
struct Trajectory {
  std::vector<double> times;
  std::vector<GridFunction> states;
  SolverConfig config;

  const Grid1D& grid() const { return states.front().grid; }
  std::size_t size() const { return times.size(); }
  double t_end() const { return times.back(); }
  /// Linear interpolation in time between bracketing snapshots.
  GridFunction at(double t) const;
};

/// Build a trajectory by sampling u(x, t) at cell centers and given times.
Trajectory make_trajectory(const Grid1D& grid, const std::vector<double>& times,
                           const std::function<double(double, double)>& u);

/// Local Lax-Friedrichs flux.
double numerical_flux(double u_left, double u_right, const FluxModel& flux, double lambda);

/// Conservative second difference of (B + delta) u_x with zero ghosts and
/// face coefficient 0.5 (B(u_i) + B(u_{i+1})) + delta.
GridFunction diffusion_term(const GridFunction& u, const ViscosityModel& visc, double delta);

/// LLF speed bound used by step(): sup|f'| over [min(u, 0), max(u, 0)],
/// floored at 1e-12.
double wave_speed_bound(const GridFunction& u, const FluxModel& flux);

/// min(cfl h / lambda, dfl h^2 / (eps (B_max + delta))).
double stable_dt(const GridFunction& u, const ProblemSpec& spec, const SolverConfig& config);

/// Net outward flux through both boundary faces (advective minus diffusive),
/// so that mass(step(u, dt)) - mass(u) = -dt * boundary_outflow(u).
double boundary_outflow(const GridFunction& u, const ProblemSpec& spec,
                        const SolverConfig& config);

/// Forward-Euler finite-volume update. Throws UnstableStep if dt exceeds
/// stable_dt(u) and NonFiniteState on overflow.
GridFunction step(const GridFunction& u, double dt, const ProblemSpec& spec,
                  const SolverConfig& config);

/// Full march from the mollified initial datum to config.t_end, keeping every
/// record_every-th state plus the final one.
Trajectory solve(const ProblemSpec& spec, const Grid1D& grid, const SolverConfig& config);

struct MaxPrincipleReport {
  double worst_overshoot = 0.0;
  double time_of_worst = 0.0;
  bool pass = false;
};

inline constexpr double kMaxPrincipleTolerance = 1e-8;

MaxPrincipleReport check_discrete_max_principle(const Trajectory& traj, double bound_a);

struct EnergyEstimate {
  double e_b = 0.0;      // eps * int int B |u_x|^2
  double e_plain = 0.0;  // eps * int int |u_x|^2
};

/// Face sums include both boundary faces against the zero ghosts; time uses
/// the left-endpoint rule over stored snapshots.
EnergyEstimate energy_functional(const Trajectory& traj, const ProblemSpec& spec);

struct EnergyBounds {
  double bound_b = 0.0;      // A^2 Vol / 2
  double bound_plain = 0.0;  // |u0|_2^2 / (2 delta), infinite for delta == 0
};

EnergyBounds energy_bounds(const Trajectory& traj, const ProblemSpec& spec);

inline constexpr double kEnergyRelativeSlack = 0.01;

/// Writes `t,x,u` rows with 17 significant digits for the given snapshots
/// (all of them when `snapshot_indices` is empty).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::size_t>& snapshot_indices = {});

/// About `count` snapshot indices evenly spread over the trajectory,
/// always including the first and last.
std::vector<std::size_t> spread_indices(const Trajectory& traj, std::size_t count);

}  // namespace vvl
