#include "vvlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "vvlab/errors.hpp"

namespace vvl {

double exact_burgers(const RiemannProblem& rp, double x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "exact_burgers: t must be positive");
  const double xi = (x - rp.x0) / t;
  if (rp.u_left > rp.u_right) {
    const double s = 0.5 * (rp.u_left + rp.u_right);
    return xi < s ? rp.u_left : rp.u_right;
  }
  if (xi <= rp.u_left) return rp.u_left;
  if (xi >= rp.u_right) return rp.u_right;
  return xi;
}

PiecewiseData to_piecewise(const std::vector<Piece>& pieces) {
  std::set<double> cuts;
  for (const auto& p : pieces) {
    cuts.insert(p.lo);
    cuts.insert(p.hi);
  }
  auto value_at = [&pieces](double x) {
    double v = 0.0;
    for (const auto& p : pieces) {
      if (x >= p.lo && x < p.hi) v += p.value;
    }
    return v;
  };
  PiecewiseData data;
  data.states.push_back(0.0);
  const std::vector<double> sorted(cuts.begin(), cuts.end());
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const double right = j + 1 < sorted.size() ? value_at(0.5 * (sorted[j] + sorted[j + 1])) : 0.0;
    if (right != data.states.back()) {
      data.breaks.push_back(sorted[j]);
      data.states.push_back(right);
    }
  }
  return data;
}

namespace {

struct WaveExtent {
  double lo, hi;
};

WaveExtent extent(double ul, double ur, double x0, double t) {
  if (ul > ur) {
    const double x = x0 + 0.5 * (ul + ur) * t;
    return {x, x};
  }
  return {x0 + ul * t, x0 + ur * t};
}

}  // namespace

double exact_burgers_piecewise(const PiecewiseData& data, double x, double t) {
  if (data.breaks.empty()) return data.states.front();
  if (t <= 0.0) {
    const auto it = std::upper_bound(data.breaks.begin(), data.breaks.end(), x);
    return data.states[static_cast<std::size_t>(it - data.breaks.begin())];
  }
  const std::size_t m = data.breaks.size();
  std::vector<WaveExtent> waves(m);
  for (std::size_t j = 0; j < m; ++j) {
    waves[j] = extent(data.states[j], data.states[j + 1], data.breaks[j], t);
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (waves[j].hi >= waves[j + 1].lo) {
      throw Error(ErrorKind::InvalidArgument,
                  "exact_burgers_piecewise: waves interact before t=" + std::to_string(t));
    }
  }
  std::size_t j = 0;
  while (j + 1 < m && x >= 0.5 * (waves[j].hi + waves[j + 1].lo)) ++j;
  return exact_burgers({data.states[j], data.states[j + 1], data.breaks[j]}, x, t);
}

namespace {

constexpr double kConvexityTol = 1e-10;

void require_convex(const FluxModel& flux, Interval range, int samples) {
  for (int i = 0; i < samples; ++i) {
    const double u = range.lo + (range.hi - range.lo) * i / (samples - 1);
    if (flux.deriv2(u) < -kConvexityTol) {
      throw Error(ErrorKind::NonConvexFlux,
                  "f'' < 0 at u=" + std::to_string(u) + " for flux '" + flux.name() + "'");
    }
  }
}

double convex_godunov(double ul, double ur, const FluxModel& flux) {
  if (ul > ur) return std::max(flux.eval(ul), flux.eval(ur));
  if (flux.deriv(ul) >= 0.0) return flux.eval(ul);
  if (flux.deriv(ur) <= 0.0) return flux.eval(ur);
  double lo = ul, hi = ur;  // f'(lo) < 0 < f'(hi)
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (flux.deriv(mid) < 0.0 ? lo : hi) = mid;
  }
  return flux.eval(0.5 * (lo + hi));
}

}  // namespace

double godunov_flux(double u_left, double u_right, const FluxModel& flux) {
  if (u_left != u_right) {
    require_convex(flux, {std::min(u_left, u_right), std::max(u_left, u_right)}, 33);
  }
  return convex_godunov(u_left, u_right, flux);
}

Trajectory godunov_solve(const ProblemSpec& spec, int n_cells, double t_end, int record_every) {
  spec.validate();
  if (n_cells < 200) throw Error(ErrorKind::InvalidArgument, "godunov_solve: n_cells < 200");
  if (!(t_end > 0.0) || t_end > spec.horizon) {
    throw Error(ErrorKind::InvalidArgument, "godunov_solve: t_end outside (0, horizon]");
  }
  if (record_every < 1) throw Error(ErrorKind::InvalidArgument, "godunov_solve: record_every < 1");
  require_convex(spec.flux, spec.working_interval(), 257);

  constexpr double kCfl = 0.45;
  const Grid1D grid(n_cells, spec.domain.lo, spec.domain.hi);
  const double h = grid.h();
  Trajectory traj;
  traj.config.epsilon = 0.0;
  traj.config.delta = 0.0;
  traj.config.cfl = kCfl;
  traj.config.t_end = t_end;
  traj.config.record_every = record_every;

  GridFunction u = sample_on_grid(grid, spec.initial);
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  std::vector<double> faces(n_cells + 1);
  double t = 0.0;
  long steps = 0;
  bool last = false;
  while (!last) {
    const double lambda = std::max(
        spec.flux.lipschitz_on({std::min(u.min(), 0.0), std::max(u.max(), 0.0)}), 1e-12);
    double dt = kCfl * h / lambda;
    if (t + dt >= t_end) {
      dt = t_end - t;
      last = true;
    }
    for (int j = 0; j <= n_cells; ++j) {
      faces[j] = convex_godunov(u.with_ghost(j - 1), u.with_ghost(j), spec.flux);
    }
    for (int i = 0; i < n_cells; ++i) u.values[i] -= dt / h * (faces[i + 1] - faces[i]);
    t = last ? t_end : t + dt;
    ++steps;
    if (last || steps % record_every == 0) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  return traj;
}

double total_variation(const GridFunction& u, bool include_ghosts) {
  double tv = 0.0;
  const int lo = include_ghosts ? -1 : 0;
  const int hi = include_ghosts ? u.size() : u.size() - 1;
  for (int i = lo; i < hi; ++i) tv += std::abs(u.with_ghost(i + 1) - u.with_ghost(i));
  return tv;
}

}  // namespace vvl
