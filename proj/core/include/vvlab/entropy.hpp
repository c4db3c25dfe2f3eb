#pragma once

#include <functional>

#include "vvlab/problem.hpp"

namespace vvl {

/// Sign function with sg(0) = 0.
double sg(double s);

/// Kruzhkov entropy |u - c| and its flux sg(u - c) (f(u) - f(c)).
struct KruzhkovPair {
  double c = 0.0;

  double eta(double u) const;
  double q(double u, const FluxModel& flux) const;
};

double kruzhkov_eta(double u, double c);
double kruzhkov_q(double u, double c, const FluxModel& flux);

/// Convex C^1 profile: |x| for |x| >= 1, (x^2 + 1) / 2 inside.
double smooth_g(double x);
double smooth_g_deriv(double x);

/// gamma * G((y - k) / gamma); within gamma / 2 of |y - k|.
struct SmoothEntropy {
  double k = 0.0;
  double gamma = 1.0;

  SmoothEntropy(double k_, double gamma_);
  double value(double y) const;
  double deriv(double y) const;
};

/// Absolute tolerance of every flux quadrature below.
inline constexpr double kEntropyQuadratureTol = 1e-10;

/// Regularized Kruzhkov pairs (eta_l, q_l) and boundary pairs (H_l, Q_l)
/// built around the constant k at smoothing level 1 / l.
class BoundaryEntropyPair {
 public:
  BoundaryEntropyPair(double k, int l, const FluxModel& flux);

  double k() const { return k_; }
  int l() const { return l_; }
  const FluxModel& flux() const { return *flux_; }

  double eta(double z) const;
  double eta_deriv(double z) const;
  /// int_k^z eta_l'(r) f'(r) dr
  double q(double z) const;

  double H(double z, double w) const;
  /// Analytic partial derivative in the first argument.
  double H_d1(double z, double w) const;
  /// int_w^z d1 H_l(r, w) f'(r) dr
  double Q(double z, double w) const;

 private:
  double k_;
  int l_;
  double scale_;  // 1 / l
  const FluxModel* flux_;
};

double eta_l(double z, const BoundaryEntropyPair& pair);
double q_l(double z, const BoundaryEntropyPair& pair);
double boundary_H(double z, double w, const BoundaryEntropyPair& pair);
double boundary_Q(double z, double w, const BoundaryEntropyPair& pair);

/// Distance from z to the closed interval between w and k.
double dist_interval(double z, double w, double k);

/// sg(z - k) (f(z) - f(k))
double capF(double z, double k, const FluxModel& flux);

/// Uniform limit of Q_l(z, w) as l -> infinity; six ordered cases, first
/// match wins. Vanishes whenever z lies between w and k.
double calF(double z, double w, double k, const FluxModel& flux);

}  // namespace vvl
