#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "vvlab/corpus.hpp"
#include "vvlab/errors.hpp"
#include "vvlab/problem.hpp"

using namespace vvl;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no vvl::Error thrown";
  return ErrorKind::IoError;
}

}  // namespace

TEST(FluxModel, DerivativeMatchesCentralDifferenceToSecondOrder) {
  prop::Gen gen(3);
  for (const auto& f : {flux::burgers(), flux::cubic(), flux::linear(-0.7)}) {
    for (double u : gen.uniforms(20, -2.0, 2.0)) {
      const auto err = [&](double h) {
        return std::abs((f.eval(u + h) - f.eval(u - h)) / (2 * h) - f.deriv(u));
      };
      EXPECT_LE(err(1e-3), 1e-5) << f.name();
      EXPECT_NEAR((f.eval(u + 1e-4) - 2 * f.eval(u) + f.eval(u - 1e-4)) / 1e-8, f.deriv2(u), 1e-4);
    }
  }
}

TEST(FluxModel, LipschitzBoundDominatesSamples) {
  for (const auto& f : {flux::burgers(), flux::cubic(), flux::linear(2.0)}) {
    for (const Interval r : {Interval{-1, 1}, Interval{-0.3, 0.8}, Interval{0.2, 0.2}}) {
      const double bound = f.lipschitz_on(r);
      for (int i = 0; i <= 1000; ++i) {
        const double u = r.lo + (r.hi - r.lo) * i / 1000.0;
        EXPECT_GE(bound + 1e-15, std::abs(f.deriv(u)));
      }
    }
  }
  const FluxModel sampled("sin", [](double u) { return std::sin(3 * u); },
                          [](double u) { return 3 * std::cos(3 * u); },
                          [](double u) { return -9 * std::sin(3 * u); });
  EXPECT_GE(sampled.lipschitz_on({-1, 1}), 3.0);
}

TEST(ViscosityModel, LibraryIsNonnegativeAndBoundedBySup) {
  const Interval work{-2.0, 2.0};
  for (const auto& b : viscosity::library()) {
    const double sup = b.sup_on(work);
    for (int i = 0; i <= 4000; ++i) {
      const double u = -2.0 + i * 1e-3;
      EXPECT_GE(b.eval(u), 0.0) << b.name();
      EXPECT_LE(b.eval(u), sup + 1e-14) << b.name();
    }
  }
  EXPECT_EQ(viscosity::shifted_quadratic(0.5).eval(0.3), 0.0);
  EXPECT_DOUBLE_EQ(viscosity::shifted_quadratic(0.5).eval(1.0), 0.25);
}

TEST(ProblemSpec, ValidateRejectsBadDomainAndHorizon) {
  auto spec = make_problem("burgers_shock");
  EXPECT_NO_THROW(spec.validate());
  auto bad = spec;
  bad.domain = {1.0, 0.0};
  EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::InvalidArgument);
  bad = spec;
  bad.horizon = 0.0;
  EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::InvalidArgument);
}

TEST(Hypothesis, BurgersPassesWithSmallNearZeroFraction) {
  const auto rep = check_hypothesis_g(make_problem("burgers_shock"), 100000, 1e-3, 5);
  EXPECT_TRUE(rep.passes());
  EXPECT_LT(rep.max_fraction, 0.01);
  EXPECT_TRUE(rep.clause_b);
  EXPECT_GE(rep.min_viscosity, 0.0);
}

TEST(Hypothesis, LinearFluxFailsClauseD) {
  auto spec = make_problem("linear_bump");
  const double a = 1.0;
  const auto rep = check_hypothesis_g(spec, 10000, 1e-3, 5);
  EXPECT_TRUE(rep.passes_abc());
  EXPECT_FALSE(rep.clause_d);
  std::vector<double> derivs(1000, a);
  const double s = std::sqrt(1 + a * a);
  EXPECT_EQ(nondegeneracy_fraction(derivs, -a / s, 1 / s, 1e-3), 1.0);
}

TEST(Hypothesis, InitialBoundViolationFailsClauseC) {
  auto spec = make_problem("zero");
  spec.initial = initial::constant(2.0);
  const auto rep = check_hypothesis_g(spec, 1000, 1e-3, 1);
  EXPECT_FALSE(rep.clause_c);
  EXPECT_NEAR(rep.sup_initial, 2.0, 1e-12);
}

TEST(Mollifier, ZeroDatumGivesZero) {
  const auto g = mollify_initial_data(make_problem("zero"), 0.05);
  for (int i = 0; i <= 100; ++i) EXPECT_EQ(g(i / 100.0), 0.0);
}

TEST(Mollifier, ConstantDatumIsReproducedAwayFromTheCutoff) {
  auto spec = make_problem("zero");
  spec.initial = initial::constant(1.0);
  const auto g = mollify_initial_data(spec, 0.05);
  for (int i = 0; i <= 600; ++i) EXPECT_NEAR(g(0.2 + i * 1e-3), 1.0, 1e-14);
  EXPECT_EQ(g(0.02), 0.0);
  EXPECT_EQ(g(0.98), 0.0);
}

TEST(Mollifier, StepErrorDecreasesWithWidth) {
  auto spec = make_problem("zero");
  spec.initial = initial::piecewise_constant({{0.0, 0.5, 1.0}});
  double previous = 1e300;
  for (double w : {0.04, 0.02, 0.01}) {
    const auto g = mollify_initial_data(spec, w);
    const int n = 10000;
    double l1 = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = static_cast<double>(i) / n;
      const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
      l1 += weight * std::abs(g(x) - spec.initial(x)) / n;
    }
    EXPECT_LT(l1, previous);
    previous = l1;
  }
}

TEST(Mollifier, WidthLimits) {
  const auto spec = make_problem("burgers_shock");
  EXPECT_EQ(kind_of([&] { mollify_initial_data(spec, 0.25); }), ErrorKind::WidthTooLarge);
  EXPECT_EQ(kind_of([&] { mollify_initial_data(spec, 0.0); }), ErrorKind::WidthTooLarge);
}

TEST(MollifierProperty, BoundedByAAndVanishesNearBoundary) {
  prop::Gen gen(21);
  for (int trial = 0; trial < 25; ++trial) {
    auto spec = make_problem("zero");
    spec.pieces = gen.pieces(0.0, 1.0, 4, 1.5);
    spec.initial = initial::piecewise_constant(*spec.pieces);
    const double w = gen.uniform(0.005, 0.1);
    const auto g = mollify_initial_data(spec, w);
    for (int i = 0; i <= 400; ++i) {
      const double x = i / 400.0;
      EXPECT_LE(std::abs(g(x)), spec.bound_A);
      if (x <= w || x >= 1.0 - w) EXPECT_EQ(g(x), 0.0);
    }
  }
}

TEST(Corpus, EveryProblemValidatesWithinBound) {
  for (const auto& name : problem_names()) {
    const auto spec = make_problem(name);
    EXPECT_NO_THROW(spec.validate()) << name;
    for (int i = 0; i <= 200; ++i) EXPECT_LE(std::abs(spec.initial(i / 200.0)), spec.bound_A);
  }
  EXPECT_THROW(make_problem("nope"), Error);
  EXPECT_THROW(make_viscosity("nope"), Error);
}
