#pragma once

#include <cstdint>
#include <vector>

#include "vvlab/problem.hpp"
#include "vvlab/solver.hpp"

namespace vvl {

/// phi(x, t) = amplitude * b((x - xc) / wx) b((t - tc) / wt) / b(0)^2 with the
/// bump b(r) = exp(-1 / (1 - r^2)); peak value equals the amplitude.
struct SpaceTimeBump {
  double xc = 0.5;
  double wx = 0.1;
  double tc = 0.5;
  double wt = 0.1;
  double amplitude = 1.0;

  double value(double x, double t) const;
  double dx(double x, double t) const;
  double dt(double x, double t) const;

  Interval x_support() const { return {xc - wx, xc + wx}; }
  Interval t_support() const { return {tc - wt, tc + wt}; }
  /// max(sup|phi|, sup|phi_x|, sup|phi_t|)
  double c1_norm() const;
  SpaceTimeBump scaled(double s) const;
};

/// sup|b'| / b(0) for the unit bump.
double bump_slope_ratio();

enum class SupportRule {
  /// Vanishes on the two boundary cells and the first and last two snapshots.
  Interior,
  /// As Interior, but may be nonzero at t = 0.
  TouchesInitialTime,
};

/// Throws UnsupportedTestFunction when phi violates the support rule on the
/// trajectory's grid and time stamps.
void require_support(const Trajectory& traj, const SpaceTimeBump& phi, SupportRule rule);

/// int int g(u) phi_t + q(u) phi_x dx dt with the derivatives taken as
/// differences of phi: in time between midpoints of the stored stamps (the
/// end stamps are their own midpoints), in space between cell faces. Constant
/// states pair to phi(x, t_last) - phi(x, t_0) exactly.
template <class G, class Q>
double space_time_pairing(const Trajectory& traj, const SpaceTimeBump& phi, G&& g, Q&& q) {
  const Grid1D& grid = traj.grid();
  const double h = grid.h();
  const Interval xs = phi.x_support();
  const Interval ts = phi.t_support();
  int i_lo = static_cast<int>((xs.lo - grid.a()) / h) - 1;
  int i_hi = static_cast<int>((xs.hi - grid.a()) / h) + 1;
  i_lo = i_lo < 0 ? 0 : i_lo;
  i_hi = i_hi > grid.n_cells() - 1 ? grid.n_cells() - 1 : i_hi;
  const std::size_t last = traj.size() - 1;
  double total = 0.0;
  for (std::size_t n = 0; n <= last; ++n) {
    const double t = traj.times[n];
    const double m_lo = n > 0 ? 0.5 * (traj.times[n - 1] + t) : t;
    const double m_hi = n < last ? 0.5 * (t + traj.times[n + 1]) : t;
    if (m_hi <= ts.lo || m_lo >= ts.hi) continue;
    const auto& u = traj.states[n].values;
    double time_row = 0.0;
    double space_row = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) {
      const double x = grid.center(i);
      time_row += g(u[i]) * (phi.value(x, m_hi) - phi.value(x, m_lo));
      space_row += q(u[i]) * (phi.value(x + 0.5 * h, t) - phi.value(x - 0.5 * h, t));
    }
    total += h * time_row + (m_hi - m_lo) * space_row;
  }
  return total;
}

/// Fixed 3 positions x 3 widths corpus of nonnegative bumps supported in the
/// interior of Omega x (0, t_end); positions are jittered by a seeded draw.
std::vector<SpaceTimeBump> interior_corpus(Interval domain, double t_end, std::uint64_t seed);

/// Same spatial layout, time profile peaking at t = 0 (for the weak form with
/// the initial-datum term).
std::vector<SpaceTimeBump> initial_time_corpus(Interval domain, double t_end, std::uint64_t seed);

/// Interior corpus rescaled so every member has C^1 norm exactly 1.
std::vector<SpaceTimeBump> unit_c1_corpus(Interval domain, double t_end, std::uint64_t seed);

}  // namespace vvl
