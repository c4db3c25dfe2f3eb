#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "vvlab/problem.hpp"
#include "vvlab/solver.hpp"
#include "vvlab/test_functions.hpp"

namespace vvl {

/// 1 if u < c < 0, -1 if 0 < c < u, 0 otherwise.
double chi(double u, double c);

/// Uniform cells [c_min + j s, c_min + (j + 1) s] in the kinetic variable.
class CGrid {
 public:
  CGrid(double c_min, double c_max, int n_c);

  /// Covers [-A - 0.1, A + 0.1] with cells of about the requested spacing.
  static CGrid covering(double bound_A, double target_spacing);

  double c_min() const { return c_min_; }
  double c_max() const { return c_max_; }
  int n_c() const { return n_; }
  double spacing() const { return spacing_; }
  double midpoint(int j) const { return c_min_ + (j + 0.5) * spacing_; }

 private:
  double c_min_, c_max_;
  int n_;
  double spacing_;
};

/// Midpoint rule for int chi(u, c) dc; equals -u exactly when 0 and u are
/// cell edges. Throws GridTooNarrow unless the grid covers
/// [-|u| - s, |u| + s].
double chi_moment(double u, const CGrid& grid);

/// Weight psi in the kinetic variable with support [lo, hi].
struct CompactWeight {
  double lo;
  double hi;
  std::function<double(double)> fn;
};

CompactWeight indicator(double lo, double hi);

/// field[n][i] = sum_j chi(u_i(t_n), c_j) psi(c_j) s.
struct SpaceTimeField {
  std::vector<double> times;
  Grid1D grid;
  std::vector<std::vector<double>> values;
};

SpaceTimeField velocity_average(const Trajectory& traj, const CompactWeight& psi,
                                const CGrid& grid);

/// <d_t eta(u; c) + d_x q(u; c), phi> = -int int (eta phi_t + q phi_x).
/// Nonpositive for admissible solutions against phi >= 0.
double dissipation_residual(const Trajectory& traj, const FluxModel& flux, double c,
                            const SpaceTimeBump& phi);

struct DissipationEstimate {
  /// values[p][j]: residual for test function p at c midpoint j.
  std::vector<std::vector<double>> values;
  CGrid c_grid;
};

DissipationEstimate dissipation_estimate(const Trajectory& traj, const FluxModel& flux,
                                         const CGrid& grid,
                                         const std::vector<SpaceTimeBump>& corpus);

/// sup over corpus and c midpoints of |dissipation_residual|.
double measure_bound_estimate(const Trajectory& traj, const FluxModel& flux, const CGrid& grid,
                              const std::vector<SpaceTimeBump>& corpus);

/// `phi_index,c,residual`
void write_dissipation_csv(std::ostream& out, const DissipationEstimate& est);

}  // namespace vvl
