#include "vvlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

#include "vvlab/entropy.hpp"
#include "vvlab/errors.hpp"
#include "vvlab/kinetic.hpp"
#include "vvlab/reference.hpp"

namespace vvl {

namespace {

std::string fmt(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Runs jobs[i] for every i on `workers` threads; results land in slot i and
// the lowest-index exception is rethrown after all threads join.
template <class R, class F>
std::vector<R> run_indexed(std::size_t count, int workers, F&& job) {
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

constexpr int kAntishockSnapshots = 400;

Grid1D config_grid(const ExperimentConfig& cfg, const ProblemSpec& spec) {
  return Grid1D(cfg.n_cells, spec.domain.lo, spec.domain.hi);
}

Trajectory solve_tagged(const ProblemSpec& spec, const Grid1D& grid, const SolverConfig& sc) {
  try {
    return solve(spec, grid, sc);
  } catch (const Error& e) {
    throw Error(e.kind(), "run (epsilon=" + fmt(sc.epsilon, 6) + ", delta=" + fmt(sc.delta, 6) +
                              "): " + e.what());
  }
}

std::vector<Trajectory> solve_all(const ExperimentConfig& cfg, const ProblemSpec& spec,
                                  const std::vector<std::pair<double, double>>& jobs,
                                  int workers) {
  const Grid1D grid = config_grid(cfg, spec);
  return run_indexed<Trajectory>(jobs.size(), workers, [&](std::size_t i) {
    return solve_tagged(spec, grid, cfg.solver_config(jobs[i].first, jobs[i].second));
  });
}

double order_between(double d_prev, double d, double p_prev, double p) {
  if (!(d_prev > 0.0) || !(d > 0.0) || p_prev == p) return std::nan("");
  return std::log(d_prev / d) / std::log(p_prev / p);
}

void fill_orders(ConvergenceTable& table, const std::vector<double>& previous_params) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto& row = table.rows[i];
    row.observed_order = std::nan("");
    if (i == 0) continue;
    const auto& prev = table.rows[i - 1];
    row.observed_order = order_between(prev.l1_distance, row.l1_distance,
                                       previous_params.empty() ? prev.parameter : previous_params[i - 1],
                                       previous_params.empty() ? row.parameter : previous_params[i]);
  }
}

DeltaSweepResult delta_result(const ExperimentConfig& cfg, double epsilon,
                              std::vector<Trajectory> runs) {
  DeltaSweepResult res;
  res.table.parameter_name = "delta";
  res.table.problem = cfg.problem;
  res.table.n_cells = cfg.n_cells;
  res.table.t_end = cfg.t_end;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    res.table.rows.push_back({cfg.delta_list[i + 1], l1_space_time_distance(runs[i], runs[i + 1]),
                              std::nan("")});
  }
  fill_orders(res.table, {});
  res.decreasing = res.table.strictly_decreasing_distance();
  res.final_below_tolerance =
      !res.table.rows.empty() && res.table.rows.back().l1_distance < cfg.tolerances.delta_cauchy;
  res.runs = std::move(runs);
  (void)epsilon;
  return res;
}

ProblemSpec mollified_problem(const ProblemSpec& spec, double width) {
  ProblemSpec out = spec;
  out.initial = mollify_initial_data(spec, width);
  out.pieces.reset();
  return out;
}

int reference_record_every(const ProblemSpec& spec, int n_cells, double t_end) {
  // Aim at about 400 stored snapshots for the reference march.
  const double h = (spec.domain.hi - spec.domain.lo) / n_cells;
  const double lam = std::max(spec.flux.lipschitz_on(spec.working_interval()), 1e-12);
  const double steps = t_end / (0.45 * h / lam);
  return std::max(1, static_cast<int>(steps / 400.0));
}

void check_grid_resolves(const ExperimentConfig& cfg, const ProblemSpec& spec) {
  const double h = (spec.domain.hi - spec.domain.lo) / cfg.n_cells;
  const double eps_min = cfg.epsilon_list.back();
  if (h > eps_min / 4.0) {
    throw Error(ErrorKind::GridTooCoarse, "h = " + fmt(h, 6) + " exceeds eps_min / 4 = " +
                                              fmt(eps_min / 4.0, 6));
  }
}

Trajectory reference_run(const ExperimentConfig& cfg, const ProblemSpec& spec) {
  const ProblemSpec ref_spec = mollified_problem(spec, cfg.mollifier_width);
  return godunov_solve(ref_spec, cfg.reference_cells, cfg.t_end,
                       reference_record_every(spec, cfg.reference_cells, cfg.t_end));
}

EpsilonSweepResult epsilon_result(const ExperimentConfig& cfg, std::vector<Trajectory> runs,
                                  Trajectory reference) {
  EpsilonSweepResult res;
  for (auto* t : {&res.table, &res.cauchy}) {
    t->parameter_name = "epsilon";
    t->problem = cfg.problem;
    t->n_cells = cfg.n_cells;
    t->t_end = cfg.t_end;
  }
  const GridFunction ref_final = reference.states.back();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    res.table.rows.push_back({cfg.epsilon_list[i],
                              l1_interior_distance(runs[i].states.back(), ref_final),
                              std::nan("")});
  }
  fill_orders(res.table, {});
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    res.cauchy.rows.push_back({cfg.epsilon_list[i + 1], l1_space_time_distance(runs[i], runs[i + 1]),
                               std::nan("")});
  }
  fill_orders(res.cauchy, {});
  res.decreasing = res.table.strictly_decreasing_distance();
  res.runs = std::move(runs);
  res.reference = std::move(reference);
  return res;
}

}  // namespace

bool ConvergenceTable::strictly_decreasing_distance() const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].l1_distance < rows[i - 1].l1_distance)) return false;
  }
  return true;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << table.parameter_name << ",l1_distance,observed_order\n";
  for (const auto& r : table.rows) {
    out << fmt(r.parameter) << ',' << fmt(r.l1_distance) << ','
        << (std::isnan(r.observed_order) ? std::string("nan") : fmt(r.observed_order)) << '\n';
  }
}

double l1_space_time_distance(const Trajectory& a, const Trajectory& b, int levels) {
  if (a.grid().n_cells() != b.grid().n_cells() || a.grid().a() != b.grid().a() ||
      a.grid().b() != b.grid().b()) {
    throw Error(ErrorKind::InvalidArgument, "trajectories must share their grid");
  }
  if (levels < 1) throw Error(ErrorKind::InvalidArgument, "levels must be positive");
  const double T = std::min(a.t_end(), b.t_end());
  const double dt = T / levels;
  const double h = a.grid().h();
  double total = 0.0;
  for (int m = 0; m < levels; ++m) {
    const double t = m * dt;
    const GridFunction ua = a.at(t);
    const GridFunction ub = b.at(t);
    double row = 0.0;
    for (int i = 0; i < ua.size(); ++i) row += std::abs(ua[i] - ub[i]);
    total += dt * h * row;
  }
  return total;
}

double l1_interior_distance(const GridFunction& u, const GridFunction& reference, int margin) {
  const int n = u.size();
  const int m = reference.size();
  if (2 * margin >= n) throw Error(ErrorKind::InvalidArgument, "margin leaves no cells");
  const double h = u.grid.h();
  double total = 0.0;
  if (m % n == 0) {
    const int r = m / n;
    for (int i = margin; i < n - margin; ++i) {
      double avg = 0.0;
      for (int j = 0; j < r; ++j) avg += reference[i * r + j];
      total += std::abs(u[i] - avg / r);
    }
  } else {
    for (int i = margin; i < n - margin; ++i) {
      total += std::abs(u[i] - reference.sample(u.grid.center(i)));
    }
  }
  return h * total;
}

DeltaSweepResult run_delta_sweep(const ExperimentConfig& cfg, int workers) {
  if (cfg.epsilon_list.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "delta sweep needs exactly one epsilon");
  }
  if (cfg.delta_list.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "delta sweep needs at least two deltas");
  }
  const ProblemSpec spec = cfg.build_problem();
  std::vector<std::pair<double, double>> jobs;
  for (double d : cfg.delta_list) jobs.emplace_back(cfg.epsilon_list.front(), d);
  return delta_result(cfg, cfg.epsilon_list.front(), solve_all(cfg, spec, jobs, workers));
}

EpsilonSweepResult run_epsilon_sweep(const ExperimentConfig& cfg, int workers) {
  if (cfg.epsilon_list.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "epsilon sweep needs at least two epsilons");
  }
  const ProblemSpec spec = cfg.build_problem();
  check_grid_resolves(cfg, spec);
  std::vector<std::pair<double, double>> jobs;
  for (double e : cfg.epsilon_list) jobs.emplace_back(e, cfg.delta_list.back());
  // The oracle goes first so a non-convex flux fails before any viscous run.
  Trajectory reference = reference_run(cfg, spec);
  return epsilon_result(cfg, solve_all(cfg, spec, jobs, workers), std::move(reference));
}

double check_weak_residual(const Trajectory& traj, const FluxModel& flux,
                           const std::vector<SpaceTimeBump>& corpus) {
  const Grid1D& grid = traj.grid();
  const auto& u0 = traj.states.front();
  double worst = 0.0;
  for (const auto& phi : corpus) {
    require_support(traj, phi, SupportRule::TouchesInitialTime);
    double value = space_time_pairing(
        traj, phi, [](double u) { return u; }, [&](double u) { return flux.eval(u); });
    double initial = 0.0;
    for (int i = 0; i < grid.n_cells(); ++i) initial += u0[i] * phi.value(grid.center(i), 0.0);
    value += grid.h() * initial;
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

InteriorCheck check_otto_interior(const Trajectory& traj, const FluxModel& flux,
                                  const std::vector<double>& k_list,
                                  const std::vector<SpaceTimeBump>& corpus) {
  for (const auto& phi : corpus) {
    if (phi.amplitude < 0.0) {
      throw Error(ErrorKind::NegativeTestFunction, "interior test functions must be nonnegative");
    }
    require_support(traj, phi, SupportRule::Interior);
  }
  InteriorCheck out;
  bool first = true;
  for (double k : k_list) {
    const double fk = flux.eval(k);
    for (std::size_t p = 0; p < corpus.size(); ++p) {
      const double v = space_time_pairing(
          traj, corpus[p], [k](double u) { return std::abs(u - k); },
          [&](double u) { return sg(u - k) * (flux.eval(u) - fk); });
      if (first || v < out.worst) {
        out.worst = v;
        out.worst_k = k;
        out.worst_phi = p;
        first = false;
      }
    }
  }
  return out;
}

double BoundaryWeight::value(bool at_left, double t, double horizon) const {
  double w = at_left ? at_a : at_b;
  if (bubble) w *= 4.0 * t * (horizon - t) / (horizon * horizon);
  return w;
}

std::vector<BoundaryWeight> boundary_weight_corpus() {
  return {{1.0, 0.0, false}, {0.0, 1.0, false}, {1.0, 0.0, true}, {0.0, 1.0, true}};
}

double extrapolate_limit(const std::vector<double>& hs, const std::vector<double>& values) {
  if (hs.size() != values.size() || hs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "ladder and values must match and be nonempty");
  }
  const std::size_t n = hs.size();
  if (n < 3) return values.back();
  const double h1 = hs[n - 3], h2 = hs[n - 2], h3 = hs[n - 1];
  const double d1 = values[n - 3] - values[n - 2];
  const double d2 = values[n - 2] - values[n - 1];
  if (d2 == 0.0 || d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1)) return values.back();
  const double target = d1 / d2;
  auto ratio = [&](double p) {
    return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
  };
  double lo = 0.05, hi = 10.0;
  if (target <= ratio(lo) || target >= ratio(hi)) return values.back();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < target ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  const double c = d2 / (std::pow(h2, p) - std::pow(h3, p));
  return values.back() - c * std::pow(h3, p);
}

BoundaryCheck check_otto_boundary(const Trajectory& traj, const FluxModel& flux,
                                  const std::vector<double>& k_list,
                                  const std::vector<int>& l_list,
                                  const std::vector<BoundaryWeight>& betas,
                                  const std::vector<double>& h_list) {
  const Grid1D& grid = traj.grid();
  const double len = grid.b() - grid.a();
  for (double h : h_list) {
    if (!(h > 0.0) || !(h < len / 4.0)) {
      throw Error(ErrorKind::ProbeOutsideDomain, "boundary probe distance outside (0, (b-a)/4)");
    }
  }
  for (const auto& beta : betas) {
    if (beta.at_a < 0.0 || beta.at_b < 0.0) {
      throw Error(ErrorKind::NegativeTestFunction, "boundary weights must be nonnegative");
    }
  }
  const double T = traj.t_end();
  // Probe traces per h: za[h][n], zb[h][n].
  std::vector<std::vector<double>> za(h_list.size()), zb(h_list.size());
  for (std::size_t j = 0; j < h_list.size(); ++j) {
    for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
      za[j].push_back(traj.states[n].sample(grid.a() + h_list[j]));
      zb[j].push_back(traj.states[n].sample(grid.b() - h_list[j]));
    }
  }
  BoundaryCheck out;
  bool first = true;
  for (double k : k_list) {
    for (int l : l_list) {
      const BoundaryEntropyPair pair(k, l, flux);
      std::vector<std::vector<double>> qa(h_list.size()), qb(h_list.size());
      for (std::size_t j = 0; j < h_list.size(); ++j) {
        for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
          qa[j].push_back(pair.Q(za[j][n], 0.0));
          qb[j].push_back(pair.Q(zb[j][n], 0.0));
        }
      }
      for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        std::vector<double> values;
        for (std::size_t j = 0; j < h_list.size(); ++j) {
          double total = 0.0;
          for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
            const double t = traj.times[n];
            const double dt = traj.times[n + 1] - t;
            total += dt * (-qa[j][n] * betas[bi].value(true, t, T) +
                           qb[j][n] * betas[bi].value(false, t, T));
          }
          values.push_back(total);
        }
        const double limit = extrapolate_limit(h_list, values);
        if (first || limit < out.worst) {
          out.worst = limit;
          out.worst_k = k;
          out.worst_l = l;
          out.worst_beta = bi;
          first = false;
        }
      }
    }
  }
  return out;
}

InitialCheck check_otto_initial(const Trajectory& traj, const std::vector<double>& t_probes) {
  InitialCheck out;
  out.probes = t_probes;
  for (double t : out.probes) {
    if (!(t > 0.0) || !(t < traj.t_end())) {
      throw Error(ErrorKind::ProbeOutsideDomain, "initial probe outside (0, t_end)");
    }
  }
  std::sort(out.probes.begin(), out.probes.end(), std::greater<>());
  const GridFunction& u0 = traj.states.front();
  for (double t : out.probes) {
    const GridFunction u = traj.at(t);
    double gap = 0.0;
    for (int i = 0; i < u.size(); ++i) gap += std::abs(u[i] - u0[i]);
    out.gaps.push_back(gap * u.grid.h());
  }
  out.smallest_gap = out.gaps.empty() ? 0.0 : out.gaps.back();
  out.decreasing = true;
  for (std::size_t i = 1; i < out.gaps.size(); ++i) {
    if (out.gaps[i] > out.gaps[i - 1]) out.decreasing = false;
  }
  return out;
}

void write_otto_csv(std::ostream& out, const OttoReport& r) {
  out << "condition,worst_value,tolerance,pass\n";
  out << "interior," << fmt(r.interior_worst) << ',' << fmt(-r.interior_tolerance) << ','
      << (r.interior_pass ? 1 : 0) << '\n';
  out << "boundary," << fmt(r.boundary_worst) << ',' << fmt(-r.boundary_tolerance) << ','
      << (r.boundary_pass ? 1 : 0) << '\n';
  out << "initial," << fmt(r.initial_gap) << ',' << fmt(r.initial_tolerance) << ','
      << (r.initial_pass ? 1 : 0) << '\n';
}

Trajectory antishock_trajectory(const ProblemSpec& spec, const Grid1D& grid, double t_end,
                                int n_snapshots) {
  if (!spec.pieces) throw Error(ErrorKind::InvalidArgument, "antishock needs piecewise data");
  if (n_snapshots < 2) throw Error(ErrorKind::InvalidArgument, "need at least two snapshots");
  const PiecewiseData data = to_piecewise(*spec.pieces);
  std::vector<double> speeds;
  for (std::size_t j = 0; j < data.breaks.size(); ++j) {
    speeds.push_back(0.5 * (data.states[j] + data.states[j + 1]));
  }
  for (std::size_t j = 0; j + 1 < data.breaks.size(); ++j) {
    const double gap_end = (data.breaks[j + 1] + speeds[j + 1] * t_end) -
                           (data.breaks[j] + speeds[j] * t_end);
    if (gap_end <= 0.0) throw Error(ErrorKind::InvalidArgument, "discontinuities interact");
  }
  std::vector<double> times(n_snapshots);
  for (int n = 0; n < n_snapshots; ++n) times[n] = t_end * n / (n_snapshots - 1);
  Trajectory traj = make_trajectory(grid, times, [&](double x, double t) {
    std::size_t j = 0;
    while (j < data.breaks.size() && x >= data.breaks[j] + speeds[j] * t) ++j;
    return data.states[j];
  });
  traj.config.epsilon = 0.0;
  traj.config.delta = 0.0;
  traj.config.t_end = t_end;
  return traj;
}

namespace {

struct OttoDetail {
  OttoReport report;
  InteriorCheck interior;
  BoundaryCheck boundary;
  InitialCheck initial;
  double mollification_gap = 0.0;
};

OttoDetail otto_detail(const ExperimentConfig& cfg, const Trajectory& traj, const FluxModel& flux) {
  const ProblemSpec spec = cfg.build_problem();
  OttoDetail d;
  const double t_end = traj.t_end();
  d.interior = check_otto_interior(traj, flux, cfg.k_list,
                                   interior_corpus(spec.domain, t_end, cfg.seed));
  d.boundary = check_otto_boundary(traj, flux, cfg.k_list, cfg.l_list, boundary_weight_corpus(),
                                   cfg.h_list);
  d.initial = check_otto_initial(traj, cfg.t_probe_list);
  const GridFunction u0 = sample_on_grid(traj.grid(), spec.initial);
  for (int i = 0; i < u0.size(); ++i) {
    d.mollification_gap += std::abs(u0[i] - traj.states.front()[i]);
  }
  d.mollification_gap *= traj.grid().h();

  auto& r = d.report;
  r.interior_worst = d.interior.worst;
  r.boundary_worst = d.boundary.worst;
  r.initial_gap = d.initial.smallest_gap;
  r.interior_tolerance = cfg.tolerances.otto_interior;
  r.boundary_tolerance = cfg.tolerances.otto_boundary;
  r.initial_tolerance = cfg.tolerances.otto_initial * u0.l1_norm();
  r.interior_pass = r.interior_worst >= -r.interior_tolerance;
  r.boundary_pass = r.boundary_worst >= -r.boundary_tolerance;
  r.initial_pass = d.initial.decreasing &&
                   (r.initial_gap < r.initial_tolerance || r.initial_gap == 0.0);
  return d;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
}

template <class F>
void write_stream(const std::filesystem::path& path, F&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  fn(out);
}

double final_delta_epsilon(const ExperimentConfig& cfg) {
  return cfg.delta_sweep_epsilon.value_or(cfg.epsilon_list.back());
}

}  // namespace

Trajectory otto_trajectory(const ExperimentConfig& cfg) {
  const ProblemSpec spec = cfg.build_problem();
  const Grid1D grid = config_grid(cfg, spec);
  switch (cfg.otto_trajectory) {
    case OttoSource::Reference:
      return reference_run(cfg, spec);
    case OttoSource::Antishock:
      return antishock_trajectory(spec, grid, cfg.t_end, kAntishockSnapshots);
    case OttoSource::Solver:
      break;
  }
  return solve_tagged(spec, grid, cfg.solver_config(cfg.epsilon_list.back(), cfg.delta_list.back()));
}

OttoReport run_otto_checks(const ExperimentConfig& cfg, const Trajectory& traj,
                           const FluxModel& flux) {
  return otto_detail(cfg, traj, flux).report;
}

bool VerificationOutcome::passed() const {
  if (!errors.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

int VerificationOutcome::exit_code() const {
  if (!errors.empty()) return 2;
  return passed() ? 0 : 1;
}

VerificationOutcome run_full_verification(const ExperimentConfig& cfg,
                                          const std::filesystem::path& out_dir, int workers) {
  VerificationOutcome outcome;
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "config.echo", echo_config(cfg));

  const ProblemSpec spec = cfg.build_problem();
  const Grid1D grid = config_grid(cfg, spec);
  auto check = [&](const std::string& name, bool pass, const std::string& detail) {
    outcome.checks.push_back({name, pass, detail});
  };
  auto stage = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      outcome.errors.push_back(name + ": " + e.what());
    }
  };

  stage("hypothesis", [&] {
    const HypothesisReport h =
        check_hypothesis_g(spec, cfg.hypothesis_samples, cfg.hypothesis_tol, cfg.seed);
    write_stream(out_dir / "hypothesis.csv", [&](std::ostream& o) {
      o << "clause,value,pass\n";
      o << "a_sup_flux_deriv," << fmt(h.sup_flux_deriv) << ',' << h.clause_a << '\n';
      o << "b_min_viscosity," << fmt(h.min_viscosity) << ',' << h.clause_b << '\n';
      o << "c_sup_initial," << fmt(h.sup_initial) << ',' << h.clause_c << '\n';
      o << "d_max_fraction," << fmt(h.max_fraction) << ',' << h.clause_d << '\n';
      o << "d_max_fraction_fine," << fmt(h.max_fraction_fine) << ',' << h.clause_d << '\n';
    });
    check("hypothesis_g", h.passes(),
          "max_fraction=" + fmt(h.max_fraction, 6) + " fine=" + fmt(h.max_fraction_fine, 6));
  });

  // Every distinct (epsilon, delta) run is solved once.
  const double delta_eps = final_delta_epsilon(cfg);
  std::vector<std::pair<double, double>> jobs;
  std::map<std::pair<double, double>, std::size_t> index;
  auto add_job = [&](double e, double d) {
    if (!index.count({e, d})) {
      index[{e, d}] = jobs.size();
      jobs.emplace_back(e, d);
    }
  };
  for (double d : cfg.delta_list) add_job(delta_eps, d);
  for (double e : cfg.epsilon_list) add_job(e, cfg.delta_list.back());

  std::vector<std::optional<Trajectory>> runs(jobs.size());
  stage("solve", [&] {
    // Solve individually so one failing run does not discard the others.
    std::vector<std::optional<Trajectory>> slots(jobs.size());
    std::vector<std::string> messages(jobs.size());
    run_indexed<int>(jobs.size(), workers, [&](std::size_t i) {
      try {
        slots[i] = solve_tagged(spec, grid, cfg.solver_config(jobs[i].first, jobs[i].second));
      } catch (const std::exception& e) {
        messages[i] = e.what();
      }
      return 0;
    });
    runs = std::move(slots);
    for (const auto& m : messages) {
      if (!m.empty()) outcome.errors.push_back("solve: " + m);
    }
  });
  auto run_for = [&](double e, double d) -> const Trajectory& {
    const auto& r = runs[index.at({e, d})];
    if (!r) throw Error(ErrorKind::InvalidArgument, "run unavailable");
    return *r;
  };

  stage("max_principle", [&] {
    bool all = true;
    write_stream(out_dir / "max_principle.csv", [&](std::ostream& o) {
      o << "epsilon,delta,worst_overshoot,time_of_worst,pass\n";
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!runs[i]) continue;
        const auto mp = check_discrete_max_principle(*runs[i], spec.bound_A);
        all = all && mp.pass;
        o << fmt(jobs[i].first) << ',' << fmt(jobs[i].second) << ',' << fmt(mp.worst_overshoot)
          << ',' << fmt(mp.time_of_worst) << ',' << mp.pass << '\n';
      }
    });
    check("max_principle", all, "every run within A + 1e-8");
  });

  stage("energy", [&] {
    bool all = true;
    write_stream(out_dir / "energy.csv", [&](std::ostream& o) {
      o << "epsilon,delta,E_B,bound_B,E_plain,bound_plain\n";
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!runs[i]) continue;
        const auto e = energy_functional(*runs[i], spec);
        const auto b = energy_bounds(*runs[i], spec);
        all = all && e.e_b <= b.bound_b * (1.0 + kEnergyRelativeSlack) &&
              e.e_plain <= b.bound_plain * (1.0 + kEnergyRelativeSlack);
        o << fmt(jobs[i].first) << ',' << fmt(jobs[i].second) << ',' << fmt(e.e_b) << ','
          << fmt(b.bound_b) << ',' << fmt(e.e_plain) << ',' << fmt(b.bound_plain) << '\n';
      }
    });
    check("energy", all, "E_B and E_plain within 1% of their bounds");
  });

  stage("delta_sweep", [&] {
    if (cfg.delta_list.size() < 2) return;
    std::vector<Trajectory> sweep;
    for (double d : cfg.delta_list) sweep.push_back(run_for(delta_eps, d));
    const DeltaSweepResult res = delta_result(cfg, delta_eps, std::move(sweep));
    write_stream(out_dir / "convergence_delta.csv",
                 [&](std::ostream& o) { write_convergence_csv(o, res.table); });
    check("delta_sweep_decreasing", res.decreasing, "epsilon=" + fmt(delta_eps, 6));
    check("delta_sweep_final", res.final_below_tolerance,
          "final=" + fmt(res.table.rows.back().l1_distance, 6) +
              " tol=" + fmt(cfg.tolerances.delta_cauchy, 6));
  });

  std::optional<Trajectory> reference;
  std::optional<Trajectory> smallest;
  if (runs[index.at({cfg.epsilon_list.back(), cfg.delta_list.back()})]) {
    smallest = run_for(cfg.epsilon_list.back(), cfg.delta_list.back());
  }

  stage("epsilon_sweep", [&] {
    check_grid_resolves(cfg, spec);
    reference = reference_run(cfg, spec);
    std::vector<Trajectory> sweep;
    for (double e : cfg.epsilon_list) sweep.push_back(run_for(e, cfg.delta_list.back()));
    const EpsilonSweepResult res = epsilon_result(cfg, std::move(sweep), *reference);
    write_stream(out_dir / "convergence_eps.csv",
                 [&](std::ostream& o) { write_convergence_csv(o, res.table); });
    write_stream(out_dir / "convergence_eps_cauchy.csv",
                 [&](std::ostream& o) { write_convergence_csv(o, res.cauchy); });
    check("eps_sweep_decreasing", res.decreasing, "distance to reference at t_end");
    check("eps_cauchy_decreasing", res.cauchy.strictly_decreasing_distance(),
          "successive space-time distances");
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
      write_stream(out_dir / ("trajectory_eps" + std::to_string(i) + ".csv"), [&](std::ostream& o) {
        write_trajectory_csv(o, res.runs[i], spread_indices(res.runs[i], cfg.export_snapshots));
      });
    }
    write_stream(out_dir / "trajectory_reference.csv", [&](std::ostream& o) {
      write_trajectory_csv(o, *reference, spread_indices(*reference, cfg.export_snapshots));
    });
  });

  stage("weak_residual", [&] {
    const auto corpus = initial_time_corpus(spec.domain, cfg.t_end, cfg.seed);
    std::vector<double> residuals;
    write_stream(out_dir / "weak_residual.csv", [&](std::ostream& o) {
      o << "epsilon,residual\n";
      for (double e : cfg.epsilon_list) {
        const double r = check_weak_residual(run_for(e, cfg.delta_list.back()), spec.flux, corpus);
        residuals.push_back(r);
        o << fmt(e) << ',' << fmt(r) << '\n';
      }
    });
    bool decreasing = true;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
      decreasing = decreasing && residuals[i] < residuals[i - 1];
    }
    check("weak_residual_decreasing", decreasing, "largest |pairing| over the corpus");
  });

  stage("measure_bound", [&] {
    const CGrid cg = CGrid::covering(spec.bound_A, 0.1);
    const auto corpus = unit_c1_corpus(spec.domain, cfg.t_end, cfg.seed);
    std::vector<double> bounds;
    write_stream(out_dir / "kinetic.csv", [&](std::ostream& o) {
      o << "epsilon,measure_bound\n";
      for (double e : cfg.epsilon_list) {
        const double m = measure_bound_estimate(run_for(e, cfg.delta_list.back()), spec.flux, cg, corpus);
        bounds.push_back(m);
        o << fmt(e) << ',' << fmt(m) << '\n';
      }
    });
    if (smallest) {
      write_stream(out_dir / "dissipation.csv", [&](std::ostream& o) {
        write_dissipation_csv(o, dissipation_estimate(*smallest, spec.flux, cg, corpus));
      });
    }
    const auto [lo, hi] = std::minmax_element(bounds.begin(), bounds.end());
    const bool ok = *lo > 0.0 ? *hi / *lo < 4.0 : *hi == 0.0;
    check("measure_bound_ratio", ok, "max/min=" + (*lo > 0.0 ? fmt(*hi / *lo, 6) : std::string("inf")));
  });

  stage("otto", [&] {
    std::optional<Trajectory> traj;
    if (cfg.otto_trajectory == OttoSource::Solver && smallest) {
      traj = *smallest;
    } else if (cfg.otto_trajectory == OttoSource::Reference && reference) {
      traj = *reference;
    } else {
      traj = otto_trajectory(cfg);
    }
    const OttoDetail d = otto_detail(cfg, *traj, spec.flux);
    outcome.otto = d.report;
    write_stream(out_dir / "otto_report.csv", [&](std::ostream& o) { write_otto_csv(o, d.report); });
    write_stream(out_dir / "otto_initial.csv", [&](std::ostream& o) {
      o << "t,l1_gap\n";
      for (std::size_t i = 0; i < d.initial.probes.size(); ++i) {
        o << fmt(d.initial.probes[i]) << ',' << fmt(d.initial.gaps[i]) << '\n';
      }
      o << "mollification_gap," << fmt(d.mollification_gap) << '\n';
    });
    write_stream(out_dir / "trajectory_otto.csv", [&](std::ostream& o) {
      write_trajectory_csv(o, *traj, spread_indices(*traj, cfg.export_snapshots));
    });
    check("otto_interior", d.report.interior_pass,
          "worst=" + fmt(d.interior.worst, 6) + " at k=" + fmt(d.interior.worst_k, 6) +
              " phi=" + std::to_string(d.interior.worst_phi));
    check("otto_boundary", d.report.boundary_pass,
          "worst=" + fmt(d.boundary.worst, 6) + " at k=" + fmt(d.boundary.worst_k, 6) +
              " l=" + std::to_string(d.boundary.worst_l));
    check("otto_initial", d.report.initial_pass,
          "smallest_gap=" + fmt(d.initial.smallest_gap, 6) +
              " tol=" + fmt(d.report.initial_tolerance, 6));
  });

  write_stream(out_dir / "summary.txt", [&](std::ostream& o) {
    for (const auto& c : outcome.checks) {
      o << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    }
    for (const auto& e : outcome.errors) o << "ERROR " << e << '\n';
    o << "exit " << outcome.exit_code() << '\n';
  });
  return outcome;
}

}  // namespace vvl
