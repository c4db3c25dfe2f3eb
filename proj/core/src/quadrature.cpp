#include "vvlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vvlab/errors.hpp"

namespace vvl {

GaussRule gauss_legendre(int n_points) {
  if (n_points < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre: n_points < 1");
  GaussRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  const int half = (n_points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n_points; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n_points * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n_points - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) rule.nodes[n_points / 2] = 0.0;
  return rule;
}

namespace {

const GaussRule& rule10() {
  static const GaussRule rule = gauss_legendre(10);
  return rule;
}

double apply(const std::function<double(double)>& f, double a, double b) {
  const auto& r = rule10();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return sum * half;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              double tol, int level, int max_levels) {
  const double m = 0.5 * (a + b);
  const double left = apply(f, a, m);
  const double right = apply(f, m, b);
  const double both = left + right;
  if (!std::isfinite(both)) {
    throw Error(ErrorKind::QuadratureFailure, "non-finite integrand on [" + std::to_string(a) +
                                                  ", " + std::to_string(b) + "]");
  }
  if (std::abs(both - whole) <= tol) return both;
  if (level >= max_levels) {
    throw Error(ErrorKind::QuadratureFailure,
                "tolerance not met after " + std::to_string(max_levels) + " bisections near " +
                    std::to_string(m));
  }
  return refine(f, a, m, left, 0.5 * tol, level + 1, max_levels) +
         refine(f, m, b, right, 0.5 * tol, level + 1, max_levels);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_levels) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_adaptive(f, b, a, tol, max_levels);
  return refine(f, a, b, apply(f, a, b), tol, 0, max_levels);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, double tol, int max_levels) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_piecewise(f, b, a, breakpoints, tol, max_levels);
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double share = tol / static_cast<double>(cuts.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate_adaptive(f, cuts[i], cuts[i + 1], share, max_levels);
  }
  return sum;
}

}  // namespace vvl
