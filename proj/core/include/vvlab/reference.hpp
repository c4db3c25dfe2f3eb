#pragma once

#include <vector>

#include "vvlab/problem.hpp"
#include "vvlab/solver.hpp"

namespace vvl {

struct RiemannProblem {
  double u_left = 0.0;
  double u_right = 0.0;
  double x0 = 0.0;
};

/// Entropy solution of the Burgers Riemann problem; requires t > 0.
double exact_burgers(const RiemannProblem& rp, double x, double t);

/// Piecewise-constant data: states[0] left of breaks[0], states[j] on
/// [breaks[j-1], breaks[j]), states.back() right of the last break.
struct PiecewiseData {
  std::vector<double> breaks;
  std::vector<double> states;
};

/// Collapse a sum of indicator pieces into sorted breaks and states.
PiecewiseData to_piecewise(const std::vector<Piece>& pieces);

/// Burgers entropy solution for piecewise-constant data, valid while the
/// elementary waves do not interact; throws InvalidArgument once they do.
/// At t = 0 returns the datum itself.
double exact_burgers_piecewise(const PiecewiseData& data, double x, double t);

/// Godunov flux: min f on [u_l, u_r] if u_l <= u_r, else max f on [u_r, u_l].
/// Throws NonConvexFlux if f'' < -1e-10 somewhere on the state interval.
double godunov_flux(double u_left, double u_right, const FluxModel& flux);

/// Forward-Euler Godunov march at CFL 0.45 from spec.initial sampled at cell
/// centers, zero ghost cells. Requires n_cells >= 200 and a flux convex on
/// the working interval.
Trajectory godunov_solve(const ProblemSpec& spec, int n_cells, double t_end,
                         int record_every = 1);

/// Sum of |u_{i+1} - u_i| over the cells, optionally including the two
/// jumps to the zero ghosts.
double total_variation(const GridFunction& u, bool include_ghosts);

}  // namespace vvl
