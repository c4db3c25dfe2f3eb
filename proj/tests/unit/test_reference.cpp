#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "vvlab/corpus.hpp"
#include "vvlab/errors.hpp"
#include "vvlab/reference.hpp"

using namespace vvl;

namespace {

double l1_to_exact(const GridFunction& u, const PiecewiseData& data, double t) {
  // Cell averages of the exact solution by a 20-point midpoint rule per cell.
  double s = 0.0;
  const double h = u.grid.h();
  for (int i = 0; i < u.size(); ++i) {
    double avg = 0.0;
    for (int q = 0; q < 20; ++q) {
      avg += exact_burgers_piecewise(data, u.grid.a() + (i + (q + 0.5) / 20.0) * h, t);
    }
    s += std::abs(u[i] - avg / 20.0);
  }
  return s * h;
}

}  // namespace

TEST(ExactBurgers, Examples) {
  EXPECT_EQ(exact_burgers({1.0, 0.0, 0.0}, 0.4, 1.0), 1.0);
  EXPECT_EQ(exact_burgers({1.0, 0.0, 0.0}, 0.6, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(exact_burgers({0.0, 1.0, 0.0}, 0.5, 1.0), 0.5);
  for (double x : {-3.0, 0.0, 2.0}) EXPECT_EQ(exact_burgers({0.3, 0.3, 0.1}, x, 0.7), 0.3);
  EXPECT_THROW(exact_burgers({1.0, 0.0, 0.0}, 0.0, 0.0), Error);
}

TEST(ExactBurgers, PiecewiseCompositeAndInteraction) {
  const auto data = to_piecewise({{0.1, 0.5, 1.0}});
  EXPECT_EQ(exact_burgers_piecewise(data, 0.3, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(exact_burgers_piecewise(data, 0.2, 0.2), 0.5);
  EXPECT_EQ(exact_burgers_piecewise(data, 0.55, 0.2), 1.0);
  EXPECT_EQ(exact_burgers_piecewise(data, 0.65, 0.2), 0.0);
  EXPECT_THROW(exact_burgers_piecewise(data, 0.5, 0.9), Error);
}

TEST(GodunovFlux, Examples) {
  const auto f = flux::burgers();
  EXPECT_DOUBLE_EQ(godunov_flux(1.0, 0.0, f), 0.5);
  EXPECT_NEAR(godunov_flux(-1.0, 1.0, f), 0.0, 1e-15);
  for (double c : {-0.7, 0.0, 0.4}) EXPECT_DOUBLE_EQ(godunov_flux(c, c, f), f.eval(c));
  try {
    godunov_flux(-1.0, 1.0, flux::cubic());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvexFlux);
  }
}

TEST(GodunovFluxProperty, MonotoneInEachArgument) {
  const auto f = flux::burgers();
  prop::Gen gen(31);
  for (int i = 0; i < 1000; ++i) {
    const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1), d = gen.uniform(0, 0.1);
    EXPECT_GE(godunov_flux(a + d, b, f), godunov_flux(a, b, f) - 1e-15);
    EXPECT_LE(godunov_flux(a, b + d, f), godunov_flux(a, b, f) + 1e-15);
  }
}

TEST(Godunov, ZeroDatumAndPreconditions) {
  const auto traj = godunov_solve(make_problem("zero"), 200, 0.3);
  for (const auto& s : traj.states) EXPECT_EQ(s.max_abs(), 0.0);
  EXPECT_THROW(godunov_solve(make_problem("zero"), 100, 0.3), Error);
  auto spec = make_problem("burgers_shock");
  spec.flux = flux::cubic();
  EXPECT_THROW(godunov_solve(spec, 400, 0.3), Error);
}

TEST(Godunov, MatchesExactSolutionAndConverges) {
  const auto spec = make_problem("burgers_shock");
  const auto data = to_piecewise(*spec.pieces);
  const double t = 0.3;
  const double e1000 = l1_to_exact(godunov_solve(spec, 1000, t, 1000000).states.back(), data, t);
  const double e2000 = l1_to_exact(godunov_solve(spec, 2000, t, 1000000).states.back(), data, t);
  const double e4000 = l1_to_exact(godunov_solve(spec, 4000, t, 1000000).states.back(), data, t);
  EXPECT_LT(e4000, 5e-3);
  EXPECT_GE(e1000 / e2000, 1.5);
  EXPECT_GE(e2000 / e4000, 1.5);
}

TEST(GodunovProperty, TotalVariationDiminishing) {
  prop::Gen gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto spec = make_problem("burgers_shock");
    spec.pieces = gen.pieces(0.05, 0.95, 3, 1.0);
    spec.initial = initial::piecewise_constant(*spec.pieces);
    const auto traj = godunov_solve(spec, 200, 0.3, 5);
    double tv = total_variation(traj.states.front(), true);
    for (const auto& s : traj.states) {
      const double now = total_variation(s, true);
      EXPECT_LE(now, tv + 1e-12);
      tv = now;
      EXPECT_LE(s.max_abs(), 1.0 + 1e-12);
    }
  }
}

TEST(TotalVariation, GhostJumps) {
  const Grid1D g(3, 0.0, 1.0);
  const GridFunction u(g, {1.0, 0.0, 2.0});
  EXPECT_DOUBLE_EQ(total_variation(u, false), 3.0);
  EXPECT_DOUBLE_EQ(total_variation(u, true), 6.0);
}
