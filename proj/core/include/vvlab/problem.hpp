#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vvl {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

using ScalarFn = std::function<double(double)>;
using BoundFn = std::function<double(Interval)>;

/// Scalar flux f with f', f'' and a Lipschitz bound sup|f'| on intervals.
///
/// When no analytic bound is supplied, lipschitz_on() samples f' on a
/// uniform grid and adds half a spacing times the sampled sup|f''|, which
/// keeps it an upper bound for any f' with that curvature.
class FluxModel {
 public:
  FluxModel(std::string name, ScalarFn f, ScalarFn df, ScalarFn d2f,
            BoundFn lipschitz = {});

  double eval(double u) const { return f_(u); }
  double deriv(double u) const { return df_(u); }
  double deriv2(double u) const { return d2f_(u); }
  double lipschitz_on(Interval range) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  ScalarFn f_, df_, d2f_;
  BoundFn lipschitz_;
};

/// Degenerate viscosity coefficient B >= 0.
class ViscosityModel {
 public:
  ViscosityModel(std::string name, ScalarFn b, ScalarFn db, BoundFn sup = {},
                 std::vector<Interval> degeneracy_set_hint = {});

  double eval(double u) const { return b_(u); }
  double deriv(double u) const { return db_(u); }
  /// sup of B over the interval (an upper bound when sampled).
  double sup_on(Interval range) const;
  const std::vector<Interval>& degeneracy_set_hint() const { return degeneracy_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  ScalarFn b_, db_;
  BoundFn sup_;
  std::vector<Interval> degeneracy_;
};

namespace flux {
FluxModel burgers();
FluxModel linear(double speed);
/// f(u) = u^3/3, non-convex on any interval around 0.
FluxModel cubic();
}  // namespace flux

namespace viscosity {
ViscosityModel constant(double value);
ViscosityModel zero();
/// B(u) = u^2.
ViscosityModel quadratic();
/// B(u) = max(0, u - threshold)^2, degenerate on (-inf, threshold].
ViscosityModel shifted_quadratic(double threshold);
/// B(u) = u^2 / (1 + u^2).
ViscosityModel saturating();
/// The four coefficients every shipped problem is checked against.
std::vector<ViscosityModel> library();
}  // namespace viscosity

struct Piece {
  double lo;
  double hi;
  double value;
};

namespace initial {
ScalarFn zero();
ScalarFn constant(double value);
/// Sum of indicators value * 1[lo, hi); zero elsewhere.
ScalarFn piecewise_constant(std::vector<Piece> pieces);
}  // namespace initial

/// Continuous problem data for u_t + f(u)_x = eps (B(u) u_x)_x on (a, b),
/// homogeneous Dirichlet data, bounded initial datum.
struct ProblemSpec {
  std::string name;
  Interval domain{0.0, 1.0};
  double horizon = 1.0;
  FluxModel flux;
  ViscosityModel viscosity;
  ScalarFn initial;
  double bound_A = 1.0;
  /// Set when `initial` is piecewise constant; used by exact solvers.
  std::optional<std::vector<Piece>> pieces;

  /// Throws InvalidArgument unless a < b, T > 0, A >= 0.
  void validate() const;
  /// [-A-1, A+1]: range used for all derivative and bound sampling.
  Interval working_interval() const { return {-bound_A - 1.0, bound_A + 1.0}; }
  Interval state_interval() const { return {-bound_A, bound_A}; }
};

struct HypothesisReport {
  // (a) f' bounded on I
  double sup_flux_deriv = 0.0;
  double sup_flux_deriv_at = 0.0;
  bool clause_a = false;
  // (b) B >= 0 on I
  double min_viscosity = 0.0;
  double min_viscosity_at = 0.0;
  bool clause_b = false;
  // (c) |u0| <= A on the domain
  double sup_initial = 0.0;
  bool clause_c = false;
  // (d) non-degeneracy: max over directions of the near-zero fraction
  double max_fraction = 0.0;
  double max_fraction_fine = 0.0;
  double worst_tau = 0.0;
  double worst_xi = 0.0;
  bool clause_d = false;

  bool passes_abc() const { return clause_a && clause_b && clause_c; }
  bool passes() const { return passes_abc() && clause_d; }
};

inline constexpr int kHypothesisDirections = 64;

/// Sampled certificate of the structural hypotheses on f, B and u0.
///
/// Samples are stratified over [-A, A] (one uniform draw per stratum, seeded).
/// Clause (d) compares the worst near-zero fraction of |tau + f'(c) xi| at
/// `tol` and `tol / 10` over 64 directions on the unit half circle and passes
/// when the fraction drops by at least a factor 5.
HypothesisReport check_hypothesis_g(const ProblemSpec& spec, int n_samples, double tol,
                                    std::uint64_t seed = 0);

/// Fraction of samples c with |tau + f'(c) xi| < tol; exposed for testing.
double nondegeneracy_fraction(const std::vector<double>& flux_derivs, double tau, double xi,
                              double tol);

/// Smooth, compactly supported approximation of the initial datum.
///
/// g = K_w * (clamp(u0, -A, A) * 1[a + 2w, b - 2w]) with the normalized bump
/// kernel exp(-1/(1-r^2)). The convolution is evaluated with a fixed
/// composite Gauss-Legendre rule whose kernel weights are renormalized to sum
/// to one, so sup|g| <= A holds exactly.
class MollifiedDatum {
 public:
  MollifiedDatum(const ProblemSpec& spec, double width);

  double operator()(double x) const;
  double width() const { return width_; }

 private:
  ScalarFn source_;
  Interval domain_;
  double bound_;
  double width_;
  std::vector<double> offsets_;
  std::vector<double> weights_;
};

/// Throws WidthTooLarge unless 0 < width < (b - a) / 4.
MollifiedDatum mollify_initial_data(const ProblemSpec& spec, double width);

}  // namespace vvl
