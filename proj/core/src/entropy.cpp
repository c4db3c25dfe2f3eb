#include "vvlab/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "vvlab/errors.hpp"
#include "vvlab/quadrature.hpp"

namespace vvl {

double sg(double s) {
  if (s > 0.0) return 1.0;
  if (s < 0.0) return -1.0;
  return 0.0;
}

double kruzhkov_eta(double u, double c) { return std::abs(u - c); }

double kruzhkov_q(double u, double c, const FluxModel& flux) {
  return sg(u - c) * (flux.eval(u) - flux.eval(c));
}

double KruzhkovPair::eta(double u) const { return kruzhkov_eta(u, c); }
double KruzhkovPair::q(double u, const FluxModel& flux) const { return kruzhkov_q(u, c, flux); }

double smooth_g(double x) {
  const double a = std::abs(x);
  return a >= 1.0 ? a : 0.5 * (x * x + 1.0);
}

double smooth_g_deriv(double x) {
  if (x >= 1.0) return 1.0;
  if (x <= -1.0) return -1.0;
  return x;
}

SmoothEntropy::SmoothEntropy(double k_, double gamma_) : k(k_), gamma(gamma_) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "SmoothEntropy: gamma must be > 0");
}

double SmoothEntropy::value(double y) const { return gamma * smooth_g((y - k) / gamma); }
double SmoothEntropy::deriv(double y) const { return smooth_g_deriv((y - k) / gamma); }

namespace {

// sqrt(d^2 + s^2) - s without cancellation; exactly 0 at d = 0.
double regularized_abs(double d, double s) { return d * d / (std::sqrt(d * d + s * s) + s); }

}  // namespace

BoundaryEntropyPair::BoundaryEntropyPair(double k, int l, const FluxModel& flux)
    : k_(k), l_(l), scale_(0.0), flux_(&flux) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "BoundaryEntropyPair: l must be >= 1");
  scale_ = 1.0 / l;
}

double BoundaryEntropyPair::eta(double z) const { return regularized_abs(z - k_, scale_); }

double BoundaryEntropyPair::eta_deriv(double z) const {
  const double d = z - k_;
  return d / std::sqrt(d * d + scale_ * scale_);
}

double BoundaryEntropyPair::q(double z) const {
  auto integrand = [this](double r) { return eta_deriv(r) * flux_->deriv(r); };
  return integrate_adaptive(integrand, k_, z, kEntropyQuadratureTol);
}

double BoundaryEntropyPair::H(double z, double w) const {
  return regularized_abs(dist_interval(z, w, k_), scale_);
}

double BoundaryEntropyPair::H_d1(double z, double w) const {
  const double lo = std::min(w, k_), hi = std::max(w, k_);
  double d = 0.0, slope = 0.0;
  if (z < lo) {
    d = lo - z;
    slope = -1.0;
  } else if (z > hi) {
    d = z - hi;
    slope = 1.0;
  }
  if (d == 0.0) return 0.0;
  return d * slope / std::sqrt(d * d + scale_ * scale_);
}

double BoundaryEntropyPair::Q(double z, double w) const {
  if (z == w) return 0.0;
  const double lo = std::min(w, k_), hi = std::max(w, k_);
  // d1 H vanishes on [lo, hi]; integrate only the parts of [w, z] outside it.
  const double a = std::min(w, z), b = std::max(w, z);
  auto integrand = [this, w](double r) { return H_d1(r, w) * flux_->deriv(r); };
  double sum = 0.0;
  if (a < lo) sum += integrate_adaptive(integrand, a, std::min(b, lo), kEntropyQuadratureTol);
  if (b > hi) sum += integrate_adaptive(integrand, std::max(a, hi), b, kEntropyQuadratureTol);
  return z > w ? sum : -sum;
}

double eta_l(double z, const BoundaryEntropyPair& pair) { return pair.eta(z); }
double q_l(double z, const BoundaryEntropyPair& pair) { return pair.q(z); }
double boundary_H(double z, double w, const BoundaryEntropyPair& pair) { return pair.H(z, w); }
double boundary_Q(double z, double w, const BoundaryEntropyPair& pair) { return pair.Q(z, w); }

double dist_interval(double z, double w, double k) {
  const double lo = std::min(w, k), hi = std::max(w, k);
  if (z < lo) return lo - z;
  if (z > hi) return z - hi;
  return 0.0;
}

double capF(double z, double k, const FluxModel& flux) {
  return sg(z - k) * (flux.eval(z) - flux.eval(k));
}

double calF(double z, double w, double k, const FluxModel& flux) {
  const auto f = [&flux](double u) { return flux.eval(u); };
  if (z <= w && w <= k) return f(w) - f(z);
  if (w <= z && z <= k) return 0.0;
  if (w <= k && k <= z) return f(z) - f(k);
  if (z <= k && k <= w) return f(k) - f(z);
  if (k <= z && z <= w) return 0.0;
  return f(z) - f(w);  // k <= w <= z
}

}  // namespace vvl
