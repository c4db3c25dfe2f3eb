#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "vvlab/corpus.hpp"
#include "vvlab/errors.hpp"
#include "vvlab/solver.hpp"

using namespace vvl;

namespace {

SolverConfig config(double eps, double delta, double t_end, int record_every = 1) {
  SolverConfig c;
  c.epsilon = eps;
  c.delta = delta;
  c.t_end = t_end;
  c.record_every = record_every;
  return c;
}

ProblemSpec step_problem() {
  auto spec = make_problem("zero");
  spec.name = "step";
  spec.flux = flux::burgers();
  spec.viscosity = viscosity::quadratic();
  spec.pieces = std::vector<Piece>{{0.0, 0.5, 1.0}};
  spec.initial = initial::piecewise_constant(*spec.pieces);
  return spec;
}

}  // namespace

TEST(Grid, CentersAndSampleThroughGhosts) {
  const Grid1D g(4, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(g.h(), 0.25);
  EXPECT_DOUBLE_EQ(g.center(0), 0.125);
  GridFunction u(g, {1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(u.sample(0.125), 1.0);
  EXPECT_DOUBLE_EQ(u.sample(0.25), 1.5);
  EXPECT_DOUBLE_EQ(u.sample(0.0), 0.5);  // halfway to the zero ghost
  EXPECT_DOUBLE_EQ(u.with_ghost(-1), 0.0);
  EXPECT_DOUBLE_EQ(u.mass(), 2.5);
  EXPECT_DOUBLE_EQ(u.max_abs(), 4.0);
}

TEST(NumericalFlux, Examples) {
  const auto f = flux::burgers();
  EXPECT_DOUBLE_EQ(numerical_flux(2.0, 2.0, f, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(numerical_flux(1.0, 0.0, f, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(numerical_flux(0.0, 0.0, f, 1.0), 0.0);
}

TEST(DiffusionTerm, Examples) {
  const Grid1D g3(3, 0.0, 3.0);
  const auto d = diffusion_term(GridFunction(g3, {0.0, 1.0, 0.0}), viscosity::zero(), 0.1);
  EXPECT_NEAR(d[0], 0.1, 1e-15);
  EXPECT_NEAR(d[1], -0.2, 1e-15);
  EXPECT_NEAR(d[2], 0.1, 1e-15);

  const Grid1D g(20, 0.0, 1.0);
  const auto lin = sample_on_grid(g, [](double x) { return x; });
  const auto dl = diffusion_term(lin, viscosity::constant(1.0), 0.0);
  for (int i = 1; i < 19; ++i) EXPECT_NEAR(dl[i], 0.0, 1e-10);

  const auto cst = sample_on_grid(g, [](double) { return 0.7; });
  const auto dc = diffusion_term(cst, viscosity::quadratic(), 1e-3);
  for (int i = 1; i < 19; ++i) EXPECT_NEAR(dc[i], 0.0, 1e-12);
}

TEST(StableDt, Examples) {
  auto spec = step_problem();
  const Grid1D g(100, 0.0, 1.0);
  auto c = config(1e-6, 0.0, 0.3);
  c.cfl = 0.5;
  const auto u = sample_on_grid(g, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
  EXPECT_DOUBLE_EQ(stable_dt(u, spec, c), 0.005);

  spec.viscosity = viscosity::zero();
  const auto zero = GridFunction(g);
  auto c1 = config(1.0, 0.0, 0.3);
  EXPECT_GT(stable_dt(zero, spec, c1), 1e6);

  const Grid1D g2(200, 0.0, 1.0);
  const auto u2 = sample_on_grid(g2, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
  EXPECT_NEAR(stable_dt(u2, step_problem(), c), 0.5 * stable_dt(u, step_problem(), c), 1e-15);
}

TEST(Step, ZeroStaysZeroAndOversizedStepThrows) {
  const auto spec = step_problem();
  const Grid1D g(50, 0.0, 1.0);
  const auto c = config(0.05, 1e-3, 0.3);
  const auto next = step(GridFunction(g), 1e-3, spec, c);
  for (double v : next.values) EXPECT_EQ(v, 0.0);
  const auto u = sample_on_grid(g, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
  try {
    step(u, 10 * stable_dt(u, spec, c), spec, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnstableStep);
  }
}

TEST(StepProperty, MassChangesOnlyThroughBoundaryFaces) {
  prop::Gen gen(8);
  const Grid1D g(100, 0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto spec = step_problem();
    spec.viscosity = viscosity::library()[gen.integer(0, 3)];
    const double c0 = gen.uniform(0.3, 0.7);
    const double amp = gen.uniform(-1.0, 1.0);
    const auto u = sample_on_grid(g, [&](double x) {
      const double r = (x - c0) / 0.15;
      return std::abs(r) < 1 ? amp * (1 - r * r) : 0.0;
    });
    const auto c = config(gen.uniform(0.01, 0.1), gen.uniform(0.0, 1e-2), 0.3);
    const double dt = stable_dt(u, spec, c);
    const auto next = step(u, dt, spec, c);
    EXPECT_NEAR(next.mass() - u.mass(), -dt * boundary_outflow(u, spec, c), 1e-15);
    EXPECT_LT(std::abs(next.mass() - u.mass()), 1e-12);
  }
}

TEST(StepProperty, MonotoneUnderCflAndDfl) {
  prop::Gen gen(9);
  const Grid1D g(200, 0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto spec = step_problem();
    spec.viscosity = viscosity::library()[gen.integer(0, 3)];
    auto pieces = gen.pieces(0.0, 1.0, 3, 1.0);
    const auto u = sample_on_grid(g, initial::piecewise_constant(pieces));
    const auto c = config(gen.uniform(0.005, 0.1), gen.uniform(0.0, 1e-2), 0.3);
    const auto next = step(u, stable_dt(u, spec, c), spec, c);
    EXPECT_LE(next.max_abs(), std::max(u.max_abs(), 0.0) + 1e-10);
  }
  const auto spec = step_problem();
  const auto u = sample_on_grid(g, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
  const auto c = config(0.01, 1e-3, 0.3);
  EXPECT_LE(step(u, stable_dt(u, spec, c), spec, c).max_abs(), 1.0 + 1e-10);
}

TEST(Solve, ZeroDatumGivesZeroTrajectory) {
  const auto traj = solve(make_problem("zero"), Grid1D(50, 0.0, 1.0), config(0.05, 1e-3, 0.1, 5));
  EXPECT_DOUBLE_EQ(traj.t_end(), 0.1);
  for (const auto& s : traj.states) EXPECT_EQ(s.max_abs(), 0.0);
}

TEST(Solve, StepStaysMonotoneBehindTheFan) {
  const auto spec = step_problem();
  const auto traj = solve(spec, Grid1D(800, 0.0, 1.0), config(0.05, 1e-3, 0.3, 50));
  const auto& u = traj.states.back();
  EXPECT_NEAR(traj.times.back(), 0.3, 1e-15);
  for (int i = 0; i + 1 < u.size(); ++i) {
    if (u.grid.center(i) >= 0.5) EXPECT_LE(u[i + 1], u[i] + 1e-8) << i;
  }
}

TEST(Solve, RefinementConvergesAtFirstOrder) {
  const auto spec = step_problem();
  const auto c = config(0.05, 1e-3, 0.3, 1000000);
  auto final_on = [&](int n) { return solve(spec, Grid1D(n, 0.0, 1.0), c).states.back(); };
  const auto u1 = final_on(100), u2 = final_on(200), u3 = final_on(400);
  auto dist = [](const GridFunction& coarse, const GridFunction& fine) {
    double s = 0.0;
    for (int i = 0; i < coarse.size(); ++i) {
      s += std::abs(coarse[i] - 0.5 * (fine[2 * i] + fine[2 * i + 1]));
    }
    return s * coarse.grid.h();
  };
  const double d1 = dist(u1, u2), d2 = dist(u2, u3);
  EXPECT_LT(d2, d1);
  EXPECT_GT(d1 / d2, 1.5);
  EXPECT_LT(d1 / d2, 3.0);
}

TEST(Trajectory, AtInterpolatesLinearly) {
  const Grid1D g(2, 0.0, 1.0);
  const auto traj = make_trajectory(g, {0.0, 1.0}, [](double x, double t) { return x + t; });
  const auto mid = traj.at(0.25);
  EXPECT_DOUBLE_EQ(mid[0], 0.25 + 0.25);
  EXPECT_DOUBLE_EQ(mid[1], 0.75 + 0.25);
}

TEST(MaxPrinciple, Examples) {
  const Grid1D g(20, 0.0, 1.0);
  const auto zero = make_trajectory(g, {0.0, 1.0}, [](double, double) { return 0.0; });
  const auto rep = check_discrete_max_principle(zero, 1.0);
  EXPECT_DOUBLE_EQ(rep.worst_overshoot, -1.0);
  EXPECT_TRUE(rep.pass);

  auto run = solve(step_problem(), Grid1D(400, 0.0, 1.0), config(0.05, 1e-3, 0.3, 20));
  EXPECT_TRUE(check_discrete_max_principle(run, 1.0).pass);
  for (auto& s : run.states) {
    for (auto& v : s.values) v *= 2.0;
  }
  const auto bad = check_discrete_max_principle(run, 1.0);
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.worst_overshoot, 1.0, 1e-6);
}

TEST(Energy, ZeroAndBounds) {
  const auto spec = step_problem();
  const Grid1D g(400, 0.0, 1.0);
  const auto zero = solve(make_problem("zero"), g, config(0.05, 1e-3, 0.3, 10));
  const auto e0 = energy_functional(zero, make_problem("zero"));
  EXPECT_EQ(e0.e_b, 0.0);
  EXPECT_EQ(e0.e_plain, 0.0);

  const auto run = solve(spec, g, config(0.05, 1e-3, 0.3, 1));
  const auto e = energy_functional(run, spec);
  const auto b = energy_bounds(run, spec);
  EXPECT_DOUBLE_EQ(b.bound_b, 0.5);
  EXPECT_GT(e.e_b, 0.0);
  EXPECT_LE(e.e_b, b.bound_b * (1 + kEnergyRelativeSlack));
  EXPECT_LE(e.e_plain, b.bound_plain * (1 + kEnergyRelativeSlack));
}

TEST(Output, CsvHeaderAndSpread) {
  const Grid1D g(3, 0.0, 1.0);
  const auto traj = make_trajectory(g, {0.0, 0.5, 1.0}, [](double x, double) { return x; });
  std::ostringstream out;
  write_trajectory_csv(out, traj, {2});
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, 6), "t,x,u\n");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
  const auto idx = spread_indices(traj, 2);
  ASSERT_FALSE(idx.empty());
  EXPECT_EQ(idx.front(), 0u);
  EXPECT_EQ(idx.back(), 2u);
}

TEST(SolverConfig, ValidateRejectsOutOfRange) {
  const auto spec = step_problem();
  auto c = config(0.0, 1e-3, 0.3);
  EXPECT_THROW(c.validate(spec), Error);
  c = config(0.05, -1.0, 0.3);
  EXPECT_THROW(c.validate(spec), Error);
  c = config(0.05, 0.0, 2.0);
  EXPECT_THROW(c.validate(spec), Error);
  c = config(0.05, 0.0, 0.3);
  EXPECT_NO_THROW(c.validate(spec));
}
