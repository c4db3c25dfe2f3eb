#include "vvlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "vvlab/errors.hpp"

namespace vvl {

Grid1D::Grid1D(int n_cells, double a, double b) : n_(n_cells), a_(a), b_(b), h_(0.0) {
  if (n_cells < 1) throw Error(ErrorKind::InvalidArgument, "Grid1D: n_cells must be positive");
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "Grid1D: need a < b");
  h_ = (b - a) / n_cells;
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> c(n_);
  for (int i = 0; i < n_; ++i) c[i] = center(i);
  return c;
}

GridFunction::GridFunction(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n_cells()) {
    throw Error(ErrorKind::InvalidArgument, "GridFunction: value count does not match grid");
  }
}

double GridFunction::sample(double x) const {
  const double s = (x - grid.a()) / grid.h() - 0.5;
  const double left = std::floor(s);
  const int i = static_cast<int>(left);
  if (i < -1 || i >= size()) return 0.0;
  const double w = s - left;
  return (1.0 - w) * with_ghost(i) + w * with_ghost(i + 1);
}

double GridFunction::min() const { return *std::min_element(values.begin(), values.end()); }
double GridFunction::max() const { return *std::max_element(values.begin(), values.end()); }

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::mass() const {
  return grid.h() * std::accumulate(values.begin(), values.end(), 0.0);
}

double GridFunction::l1_norm() const {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s * grid.h();
}

double GridFunction::l2_norm_squared() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s * grid.h();
}

GridFunction sample_on_grid(const Grid1D& grid, const ScalarFn& u) {
  GridFunction g(grid);
  for (int i = 0; i < grid.n_cells(); ++i) g.values[i] = u(grid.center(i));
  return g;
}

void SolverConfig::validate(const ProblemSpec& spec) const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (!(delta >= 0.0)) fail("delta must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(dfl > 0.0 && dfl <= 0.5)) fail("dfl must lie in (0, 1/2]");
  if (!(t_end > 0.0)) fail("t_end must be positive");
  if (t_end > spec.horizon) fail("t_end exceeds the problem horizon");
  if (record_every < 1) fail("record_every must be >= 1");
  if (!(mollifier_width > 0.0)) fail("mollifier_width must be positive");
}

GridFunction Trajectory::at(double t) const {
  if (times.empty()) throw Error(ErrorKind::InvalidArgument, "Trajectory::at on empty trajectory");
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  GridFunction g(states[lo].grid);
  for (int i = 0; i < g.size(); ++i) {
    g.values[i] = (1.0 - w) * states[lo].values[i] + w * states[hi].values[i];
  }
  return g;
}

Trajectory make_trajectory(const Grid1D& grid, const std::vector<double>& times,
                           const std::function<double(double, double)>& u) {
  Trajectory traj;
  traj.config.epsilon = 0.0;
  traj.config.delta = 0.0;
  traj.config.t_end = times.empty() ? 0.0 : times.back();
  for (double t : times) {
    traj.times.push_back(t);
    traj.states.push_back(sample_on_grid(grid, [&](double x) { return u(x, t); }));
  }
  return traj;
}

double numerical_flux(double u_left, double u_right, const FluxModel& flux, double lambda) {
  return 0.5 * (flux.eval(u_left) + flux.eval(u_right)) - 0.5 * lambda * (u_right - u_left);
}

GridFunction diffusion_term(const GridFunction& u, const ViscosityModel& visc, double delta) {
  const int n = u.size();
  const double h2 = u.grid.h() * u.grid.h();
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = visc.eval(u.values[i]);
  const double b_ghost = visc.eval(0.0);
  auto coeff = [&](int face) {  // face between cells face-1 and face
    const double bl = face - 1 < 0 ? b_ghost : b[face - 1];
    const double br = face >= n ? b_ghost : b[face];
    return 0.5 * (bl + br) + delta;
  };
  GridFunction d(u.grid);
  double prev = coeff(0) * (u.with_ghost(0) - u.with_ghost(-1));
  for (int i = 0; i < n; ++i) {
    const double next = coeff(i + 1) * (u.with_ghost(i + 1) - u.values[i]);
    d.values[i] = (next - prev) / h2;
    prev = next;
  }
  return d;
}

namespace {

constexpr double kSpeedFloor = 1e-12;

Interval state_range(const GridFunction& u) {
  return {std::min(u.min(), 0.0), std::max(u.max(), 0.0)};
}

/// Advective face fluxes F and diffusive face gradients kappa * du / h for
/// faces 0..n (face j separates cells j-1 and j).
struct FaceFluxes {
  std::vector<double> advective;
  std::vector<double> gradient;
};

FaceFluxes face_fluxes(const GridFunction& u, const ProblemSpec& spec, double delta,
                       double lambda) {
  const int n = u.size();
  const double h = u.grid.h();
  std::vector<double> f(n + 2), b(n + 2), v(n + 2);
  for (int i = -1; i <= n; ++i) {
    const double value = u.with_ghost(i);
    v[i + 1] = value;
    f[i + 1] = spec.flux.eval(value);
    b[i + 1] = spec.viscosity.eval(value);
  }
  FaceFluxes out;
  out.advective.resize(n + 1);
  out.gradient.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double ul = v[j], ur = v[j + 1];
    out.advective[j] = 0.5 * (f[j] + f[j + 1]) - 0.5 * lambda * (ur - ul);
    out.gradient[j] = (0.5 * (b[j] + b[j + 1]) + delta) * (ur - ul) / h;
  }
  return out;
}

}  // namespace

double wave_speed_bound(const GridFunction& u, const FluxModel& flux) {
  return std::max(flux.lipschitz_on(state_range(u)), kSpeedFloor);
}

double stable_dt(const GridFunction& u, const ProblemSpec& spec, const SolverConfig& config) {
  const double h = u.grid.h();
  const double lambda = wave_speed_bound(u, spec.flux);
  const double kappa =
      std::max(spec.viscosity.sup_on(state_range(u)) + config.delta, kSpeedFloor);
  return std::min(config.cfl * h / lambda, config.dfl * h * h / (config.epsilon * kappa));
}

double boundary_outflow(const GridFunction& u, const ProblemSpec& spec,
                        const SolverConfig& config) {
  const auto faces = face_fluxes(u, spec, config.delta, wave_speed_bound(u, spec.flux));
  const int n = u.size();
  return (faces.advective[n] - faces.advective[0]) -
         config.epsilon * (faces.gradient[n] - faces.gradient[0]);
}

GridFunction step(const GridFunction& u, double dt, const ProblemSpec& spec,
                  const SolverConfig& config) {
  const double limit = stable_dt(u, spec, config);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::UnstableStep,
                "dt=" + std::to_string(dt) + " exceeds stable bound " + std::to_string(limit));
  }
  const int n = u.size();
  const double h = u.grid.h();
  const auto faces = face_fluxes(u, spec, config.delta, wave_speed_bound(u, spec.flux));
  GridFunction next(u.grid);
  for (int i = 0; i < n; ++i) {
    const double value =
        u.values[i] - dt / h * (faces.advective[i + 1] - faces.advective[i]) +
        dt * config.epsilon * (faces.gradient[i + 1] - faces.gradient[i]) / h;
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::NonFiniteState, "cell " + std::to_string(i) + " became non-finite");
    }
    next.values[i] = value;
  }
  return next;
}

Trajectory solve(const ProblemSpec& spec, const Grid1D& grid, const SolverConfig& config) {
  spec.validate();
  config.validate(spec);
  const auto datum = mollify_initial_data(spec, config.mollifier_width);

  Trajectory traj;
  traj.config = config;
  GridFunction u = sample_on_grid(grid, [&](double x) { return datum(x); });
  traj.times.push_back(0.0);
  traj.states.push_back(u);

  double t = 0.0;
  long steps = 0;
  bool last = false;
  while (!last) {
    double dt = stable_dt(u, spec, config);
    if (t + dt >= config.t_end) {
      dt = config.t_end - t;
      last = true;
    }
    try {
      u = step(u, dt, spec, config);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonFiniteState) throw;
      throw Error(ErrorKind::NonFiniteState,
                  "at t=" + std::to_string(t + dt) + " (" + e.what() + ")");
    }
    t = last ? config.t_end : t + dt;
    ++steps;
    if (last || steps % config.record_every == 0) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  return traj;
}

MaxPrincipleReport check_discrete_max_principle(const Trajectory& traj, double bound_a) {
  MaxPrincipleReport report;
  report.worst_overshoot = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const double over = traj.states[n].max_abs() - bound_a;
    if (over > report.worst_overshoot) {
      report.worst_overshoot = over;
      report.time_of_worst = traj.times[n];
    }
  }
  report.pass = report.worst_overshoot <= kMaxPrincipleTolerance;
  return report;
}

EnergyEstimate energy_functional(const Trajectory& traj, const ProblemSpec& spec) {
  EnergyEstimate e;
  const double eps = traj.config.epsilon;
  for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
    const double dt = traj.times[n + 1] - traj.times[n];
    const auto& u = traj.states[n];
    const double h = u.grid.h();
    double sum_b = 0.0, sum_plain = 0.0;
    double b_left = spec.viscosity.eval(0.0);
    for (int j = 0; j <= u.size(); ++j) {
      const double ul = u.with_ghost(j - 1), ur = u.with_ghost(j);
      const double b_right = spec.viscosity.eval(ur);
      const double grad = (ur - ul) / h;
      sum_b += h * 0.5 * (b_left + b_right) * grad * grad;
      sum_plain += h * grad * grad;
      b_left = b_right;
    }
    e.e_b += eps * dt * sum_b;
    e.e_plain += eps * dt * sum_plain;
  }
  return e;
}

EnergyBounds energy_bounds(const Trajectory& traj, const ProblemSpec& spec) {
  EnergyBounds b;
  b.bound_b = 0.5 * spec.bound_A * spec.bound_A * spec.domain.length();
  const double delta = traj.config.delta;
  b.bound_plain = delta > 0.0 ? traj.states.front().l2_norm_squared() / (2.0 * delta)
                              : std::numeric_limits<double>::infinity();
  return b;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::size_t>& snapshot_indices) {
  out << "t,x,u\n";
  char line[96];
  auto emit = [&](std::size_t n) {
    const auto& s = traj.states[n];
    for (int i = 0; i < s.size(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", traj.times[n], s.grid.center(i),
                    s.values[i]);
      out << line;
    }
  };
  if (snapshot_indices.empty()) {
    for (std::size_t n = 0; n < traj.size(); ++n) emit(n);
  } else {
    for (std::size_t n : snapshot_indices) emit(n);
  }
}

std::vector<std::size_t> spread_indices(const Trajectory& traj, std::size_t count) {
  std::vector<std::size_t> idx;
  const std::size_t n = traj.size();
  if (n == 0) return idx;
  if (count < 2 || n <= count) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = (k * (n - 1)) / (count - 1);
    if (idx.empty() || idx.back() != i) idx.push_back(i);
  }
  return idx;
}

}  // namespace vvl
