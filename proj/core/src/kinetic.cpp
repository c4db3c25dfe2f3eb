#include "vvlab/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "vvlab/entropy.hpp"
#include "vvlab/errors.hpp"

namespace vvl {

double chi(double u, double c) {
  if (u < c && c < 0.0) return 1.0;
  if (0.0 < c && c < u) return -1.0;
  return 0.0;
}

CGrid::CGrid(double c_min, double c_max, int n_c)
    : c_min_(c_min), c_max_(c_max), n_(n_c), spacing_(0.0) {
  if (!(c_min < c_max) || n_c < 1) {
    throw Error(ErrorKind::InvalidArgument, "CGrid: need c_min < c_max and n_c >= 1");
  }
  spacing_ = (c_max - c_min) / n_c;
}

CGrid CGrid::covering(double bound_A, double target_spacing) {
  const double m = bound_A + 0.1;
  const int n = std::max(1, static_cast<int>(std::ceil(2.0 * m / target_spacing)));
  return CGrid(-m, m, n);
}

double chi_moment(double u, const CGrid& grid) {
  const double need = std::abs(u) + grid.spacing();
  if (grid.c_min() > -need || grid.c_max() < need) {
    throw Error(ErrorKind::GridTooNarrow, "c-grid does not cover +-" + std::to_string(need));
  }
  double sum = 0.0;
  for (int j = 0; j < grid.n_c(); ++j) sum += chi(u, grid.midpoint(j));
  return sum * grid.spacing();
}

CompactWeight indicator(double lo, double hi) {
  return {lo, hi, [lo, hi](double c) { return (c >= lo && c <= hi) ? 1.0 : 0.0; }};
}

SpaceTimeField velocity_average(const Trajectory& traj, const CompactWeight& psi,
                                const CGrid& grid) {
  if (psi.lo < grid.c_min() || psi.hi > grid.c_max()) {
    throw Error(ErrorKind::GridTooNarrow, "weight support exceeds the c-grid");
  }
  std::vector<double> weights(grid.n_c());
  for (int j = 0; j < grid.n_c(); ++j) weights[j] = psi.fn(grid.midpoint(j)) * grid.spacing();

  SpaceTimeField field{traj.times, traj.grid(), {}};
  field.values.reserve(traj.size());
  for (const auto& state : traj.states) {
    std::vector<double> row(state.size(), 0.0);
    for (int i = 0; i < state.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < grid.n_c(); ++j) s += chi(state.values[i], grid.midpoint(j)) * weights[j];
      row[i] = s;
    }
    field.values.push_back(std::move(row));
  }
  return field;
}

double dissipation_residual(const Trajectory& traj, const FluxModel& flux, double c,
                            const SpaceTimeBump& phi) {
  require_support(traj, phi, SupportRule::Interior);
  const double fc = flux.eval(c);
  return -space_time_pairing(
      traj, phi, [c](double u) { return std::abs(u - c); },
      [c, fc, &flux](double u) { return sg(u - c) * (flux.eval(u) - fc); });
}

DissipationEstimate dissipation_estimate(const Trajectory& traj, const FluxModel& flux,
                                         const CGrid& grid,
                                         const std::vector<SpaceTimeBump>& corpus) {
  DissipationEstimate est{{}, grid};
  for (const auto& phi : corpus) {
    std::vector<double> row(grid.n_c());
    for (int j = 0; j < grid.n_c(); ++j) {
      row[j] = dissipation_residual(traj, flux, grid.midpoint(j), phi);
    }
    est.values.push_back(std::move(row));
  }
  return est;
}

double measure_bound_estimate(const Trajectory& traj, const FluxModel& flux, const CGrid& grid,
                              const std::vector<SpaceTimeBump>& corpus) {
  if (corpus.empty()) throw Error(ErrorKind::InvalidArgument, "empty test-function corpus");
  double sup = 0.0;
  for (const auto& row : dissipation_estimate(traj, flux, grid, corpus).values) {
    for (double v : row) sup = std::max(sup, std::abs(v));
  }
  return sup;
}

void write_dissipation_csv(std::ostream& out, const DissipationEstimate& est) {
  out << "phi_index,c,residual\n";
  char line[96];
  for (std::size_t p = 0; p < est.values.size(); ++p) {
    for (int j = 0; j < est.c_grid.n_c(); ++j) {
      std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", p, est.c_grid.midpoint(j),
                    est.values[p][j]);
      out << line;
    }
  }
}

}  // namespace vvl
