#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "vvlab/entropy.hpp"

using namespace vvl;

TEST(Sign, Examples) {
  EXPECT_EQ(sg(2.0), 1.0);
  EXPECT_EQ(sg(0.0), 0.0);
  EXPECT_EQ(sg(-3.0), -1.0);
}

TEST(Kruzhkov, Examples) {
  const auto f = flux::burgers();
  EXPECT_EQ(kruzhkov_eta(3.0, 1.0), 2.0);
  EXPECT_EQ(kruzhkov_q(2.0, 0.0, f), 2.0);
  for (double c : {-1.0, 0.0, 0.3}) EXPECT_EQ(kruzhkov_q(c, c, f), 0.0);
  const KruzhkovPair p{0.5};
  EXPECT_EQ(p.eta(1.5), 1.0);
  EXPECT_EQ(p.q(1.5, f), 1.0);
}

TEST(SmoothG, Examples) {
  EXPECT_EQ(smooth_g(2.0), 2.0);
  EXPECT_EQ(smooth_g(0.0), 0.5);
  EXPECT_EQ(smooth_g(-1.0), 1.0);
  EXPECT_EQ(smooth_g_deriv(0.5), 0.5);
  const SmoothEntropy se(0.0, 0.1);
  EXPECT_DOUBLE_EQ(se.value(5.0), 5.0);
}

TEST(SmoothGProperty, WithinHalfGammaOfAbsoluteValue) {
  prop::Gen gen(2);
  for (int i = 0; i < 1000; ++i) {
    const double k = gen.uniform(-1, 1), gamma = gen.uniform(1e-3, 1), y = gen.uniform(-3, 3);
    const SmoothEntropy se(k, gamma);
    EXPECT_LE(std::abs(se.value(y) - std::abs(y - k)), 0.5 * gamma + 1e-15);
    const double h = 1e-6;
    EXPECT_NEAR((se.value(y + h) - se.value(y - h)) / (2 * h), se.deriv(y), 1e-6);
  }
}

TEST(BoundaryPair, EtaExamples) {
  const auto f = flux::burgers();
  for (int l : {1, 2, 10, 100}) {
    const BoundaryEntropyPair p(0.3, l, f);
    EXPECT_EQ(eta_l(0.3, p), 0.0);
  }
  const BoundaryEntropyPair p2(0.0, 2, f);
  EXPECT_NEAR(eta_l(1.0, p2), std::sqrt(1.25) - 0.5, 1e-15);
  EXPECT_NEAR(eta_l(1.0, p2), 0.6180340, 1e-7);
}

TEST(BoundaryPair, FluxConvergesToKruzhkov) {
  const auto f = flux::burgers();
  for (int l : {10, 100, 1000}) {
    const BoundaryEntropyPair p(0.0, l, f);
    EXPECT_LE(std::abs(q_l(2.0, p) - kruzhkov_q(2.0, 0.0, f)), 2.0 / l * 2.0);
  }
}

TEST(DistInterval, Examples) {
  EXPECT_EQ(dist_interval(1.5, 1.0, 2.0), 0.0);
  EXPECT_EQ(dist_interval(3.0, 1.0, 2.0), 1.0);
  EXPECT_EQ(dist_interval(0.0, 1.0, 2.0), 1.0);
  EXPECT_EQ(dist_interval(0.0, 2.0, 1.0), 1.0);
}

TEST(BoundaryPair, HAndQExamples) {
  const auto f = flux::burgers();
  const BoundaryEntropyPair p(0.0, 100, f);
  for (double w : {-1.0, 0.0, 0.4}) {
    EXPECT_EQ(boundary_H(w, w, p), 0.0);
    EXPECT_EQ(boundary_Q(w, w, p), 0.0);
    EXPECT_EQ(p.H_d1(w, w), 0.0);
  }
  EXPECT_NEAR(boundary_Q(1.0, 0.0, p), 0.5, 0.02);
  const BoundaryEntropyPair p2(0.8, 10, f);
  EXPECT_EQ(boundary_H(0.5, 0.2, p2), 0.0);
}

TEST(CalF, Examples) {
  const auto f = flux::burgers();
  EXPECT_EQ(calF(0.5, 0.2, 0.8, f), 0.0);
  EXPECT_DOUBLE_EQ(calF(2.0, 1.0, 0.0, f), 1.5);
  for (double w : {-1.0, 0.0, 0.7})
    for (double k : {-0.5, 0.0, 0.9}) EXPECT_EQ(calF(w, w, k, f), 0.0);
  EXPECT_DOUBLE_EQ(capF(2.0, 0.0, f), 2.0);
}

TEST(CalFProperty, ContinuousAcrossCaseBoundaries) {
  const auto f = flux::burgers();
  prop::Gen gen(4);
  for (int i = 0; i < 2000; ++i) {
    const double z = gen.uniform(-1.5, 1.5), w = gen.uniform(-1.5, 1.5), k = gen.uniform(-1.5, 1.5);
    const double e = 1e-7;
    EXPECT_NEAR(calF(z + e, w, k, f), calF(z - e, w, k, f), 1e-6);
    EXPECT_NEAR(calF(z, w + e, k, f), calF(z, w - e, k, f), 1e-6);
  }
}

TEST(BoundaryPairProperty, SmoothingBoundsHold) {
  const auto f = flux::burgers();
  prop::Gen gen(5);
  for (int l : {1, 10, 100}) {
    for (int i = 0; i < 200; ++i) {
      const double k = gen.uniform(-1, 1), z = gen.uniform(-1.5, 1.5), w = gen.uniform(-1, 1);
      const BoundaryEntropyPair p(k, l, f);
      EXPECT_LE(std::abs(p.eta(z) - std::abs(z - k)), 1.0 / l + 1e-15);
      EXPECT_LE(std::abs(p.H(z, w) - dist_interval(z, w, k)), 1.0 / l + 1e-15);
      EXPECT_GE(p.H(z, w), 0.0);
    }
  }
}

TEST(BoundaryPairProperty, FluxDerivativesAreCompatible) {
  const auto f = flux::burgers();
  prop::Gen gen(6);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double k = gen.uniform(-1, 1), z = gen.uniform(-1, 1), w = gen.uniform(-1, 1);
    const BoundaryEntropyPair p(k, 10, f);
    const double dq = (-p.q(z + 2 * h) + 8 * p.q(z + h) - 8 * p.q(z - h) + p.q(z - 2 * h)) / (12 * h);
    EXPECT_NEAR(dq, p.eta_deriv(z) * f.deriv(z), 1e-6);
    if (std::abs(z - w) < 4 * h || std::abs(z - k) < 4 * h) continue;
    const double dQ =
        (-p.Q(z + 2 * h, w) + 8 * p.Q(z + h, w) - 8 * p.Q(z - h, w) + p.Q(z - 2 * h, w)) / (12 * h);
    EXPECT_NEAR(dQ, p.H_d1(z, w) * f.deriv(z), 1e-6);
  }
}
