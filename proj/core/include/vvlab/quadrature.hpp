#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vvl {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n_points);

/// Adaptive Gauss-Legendre with interval bisection.
///
/// An interval is accepted when the 10-point rule on it and the sum over its
/// two halves agree to within the local tolerance; otherwise both halves are
/// refined with half the tolerance. Throws QuadratureFailure when a branch
/// needs more than `max_levels` bisections. Reversed limits flip the sign.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_levels = 20);

/// Same, split first at every breakpoint strictly inside the limits.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, double tol,
                           int max_levels = 20);

}  // namespace vvl
