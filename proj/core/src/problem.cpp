#include "vvlab/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "vvlab/errors.hpp"
#include "vvlab/quadrature.hpp"

namespace vvl {

namespace {

constexpr int kBoundSamples = 257;

double sampled_sup_abs(const ScalarFn& g, const ScalarFn& dg, Interval range) {
  if (range.hi < range.lo) std::swap(range.lo, range.hi);
  const double spacing = range.length() / (kBoundSamples - 1);
  double sup = 0.0, sup_slope = 0.0;
  for (int i = 0; i < kBoundSamples; ++i) {
    const double x = range.lo + i * spacing;
    sup = std::max(sup, std::abs(g(x)));
    sup_slope = std::max(sup_slope, std::abs(dg(x)));
  }
  return sup + 0.5 * spacing * sup_slope;
}

double max_abs_endpoint(Interval r) { return std::max(std::abs(r.lo), std::abs(r.hi)); }

}  // namespace

FluxModel::FluxModel(std::string name, ScalarFn f, ScalarFn df, ScalarFn d2f, BoundFn lipschitz)
    : name_(std::move(name)),
      f_(std::move(f)),
      df_(std::move(df)),
      d2f_(std::move(d2f)),
      lipschitz_(std::move(lipschitz)) {}

double FluxModel::lipschitz_on(Interval range) const {
  if (range.hi < range.lo) std::swap(range.lo, range.hi);
  if (lipschitz_) return lipschitz_(range);
  return sampled_sup_abs(df_, d2f_, range);
}

ViscosityModel::ViscosityModel(std::string name, ScalarFn b, ScalarFn db, BoundFn sup,
                               std::vector<Interval> degeneracy_set_hint)
    : name_(std::move(name)),
      b_(std::move(b)),
      db_(std::move(db)),
      sup_(std::move(sup)),
      degeneracy_(std::move(degeneracy_set_hint)) {}

double ViscosityModel::sup_on(Interval range) const {
  if (range.hi < range.lo) std::swap(range.lo, range.hi);
  if (sup_) return sup_(range);
  return sampled_sup_abs(b_, db_, range);
}

namespace flux {

FluxModel burgers() {
  return FluxModel(
      "burgers", [](double u) { return 0.5 * u * u; }, [](double u) { return u; },
      [](double) { return 1.0; }, [](Interval r) { return max_abs_endpoint(r); });
}

FluxModel linear(double speed) {
  return FluxModel(
      "linear", [speed](double u) { return speed * u; }, [speed](double) { return speed; },
      [](double) { return 0.0; }, [speed](Interval) { return std::abs(speed); });
}

FluxModel cubic() {
  return FluxModel(
      "cubic", [](double u) { return u * u * u / 3.0; }, [](double u) { return u * u; },
      [](double u) { return 2.0 * u; },
      [](Interval r) { return std::max(r.lo * r.lo, r.hi * r.hi); });
}

}  // namespace flux

namespace viscosity {

ViscosityModel constant(double value) {
  return ViscosityModel(
      "constant", [value](double) { return value; }, [](double) { return 0.0; },
      [value](Interval) { return value; });
}

ViscosityModel zero() {
  return ViscosityModel(
      "zero", [](double) { return 0.0; }, [](double) { return 0.0; },
      [](Interval) { return 0.0; },
      {Interval{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}});
}

ViscosityModel quadratic() {
  return ViscosityModel(
      "quadratic", [](double u) { return u * u; }, [](double u) { return 2.0 * u; },
      [](Interval r) { return std::max(r.lo * r.lo, r.hi * r.hi); }, {Interval{0.0, 0.0}});
}

ViscosityModel shifted_quadratic(double threshold) {
  auto b = [threshold](double u) {
    const double s = std::max(0.0, u - threshold);
    return s * s;
  };
  return ViscosityModel(
      "shifted_quadratic", b,
      [threshold](double u) { return 2.0 * std::max(0.0, u - threshold); },
      [b](Interval r) { return b(r.hi); },
      {Interval{-std::numeric_limits<double>::infinity(), threshold}});
}

ViscosityModel saturating() {
  return ViscosityModel(
      "saturating", [](double u) { return u * u / (1.0 + u * u); },
      [](double u) {
        const double d = 1.0 + u * u;
        return 2.0 * u / (d * d);
      },
      [](Interval r) {
        const double m = std::max(r.lo * r.lo, r.hi * r.hi);
        return m / (1.0 + m);
      },
      {Interval{0.0, 0.0}});
}

std::vector<ViscosityModel> library() {
  return {constant(1.0), quadratic(), shifted_quadratic(0.5), saturating()};
}

}  // namespace viscosity

namespace initial {

ScalarFn zero() {
  return [](double) { return 0.0; };
}

ScalarFn constant(double value) {
  return [value](double) { return value; };
}

ScalarFn piecewise_constant(std::vector<Piece> pieces) {
  return [pieces = std::move(pieces)](double x) {
    double v = 0.0;
    for (const auto& p : pieces) {
      if (x >= p.lo && x < p.hi) v += p.value;
    }
    return v;
  };
}

}  // namespace initial

void ProblemSpec::validate() const {
  if (!(domain.lo < domain.hi)) {
    throw Error(ErrorKind::InvalidArgument, "problem '" + name + "': domain must satisfy a < b");
  }
  if (!(horizon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "problem '" + name + "': horizon must be positive");
  }
  if (!(bound_A >= 0.0) || !std::isfinite(bound_A)) {
    throw Error(ErrorKind::InvalidArgument, "problem '" + name + "': bound_A must be >= 0");
  }
  if (!initial) throw Error(ErrorKind::InvalidArgument, "problem '" + name + "': no initial datum");
}

namespace {

std::vector<double> stratified(Interval range, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(n);
  const double width = range.length() / n;
  for (int i = 0; i < n; ++i) out[i] = range.lo + (i + unit(rng)) * width;
  return out;
}

double checked(double value, const char* what, double at) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NonFiniteSample,
                std::string(what) + " is not finite at " + std::to_string(at));
  }
  return value;
}

}  // namespace

double nondegeneracy_fraction(const std::vector<double>& flux_derivs, double tau, double xi,
                              double tol) {
  if (flux_derivs.empty()) return 0.0;
  std::size_t hits = 0;
  for (double d : flux_derivs) {
    if (std::abs(tau + d * xi) < tol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(flux_derivs.size());
}

HypothesisReport check_hypothesis_g(const ProblemSpec& spec, int n_samples, double tol,
                                    std::uint64_t seed) {
  spec.validate();
  if (n_samples < 100) throw Error(ErrorKind::InvalidArgument, "check_hypothesis_g: n_samples < 100");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "check_hypothesis_g: tol must be > 0");

  std::mt19937_64 rng(seed);
  HypothesisReport report;
  const auto states = stratified(spec.state_interval(), n_samples, rng);

  std::vector<double> derivs(states.size());
  report.min_viscosity = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double c = states[i];
    checked(spec.flux.eval(c), "f", c);
    derivs[i] = checked(spec.flux.deriv(c), "f'", c);
    const double b = checked(spec.viscosity.eval(c), "B", c);
    if (std::abs(derivs[i]) > report.sup_flux_deriv) {
      report.sup_flux_deriv = std::abs(derivs[i]);
      report.sup_flux_deriv_at = c;
    }
    if (b < report.min_viscosity) {
      report.min_viscosity = b;
      report.min_viscosity_at = c;
    }
  }
  report.clause_a = std::isfinite(report.sup_flux_deriv);
  report.clause_b = report.min_viscosity >= -tol;

  for (double x : stratified(spec.domain, n_samples, rng)) {
    report.sup_initial = std::max(report.sup_initial, std::abs(checked(spec.initial(x), "u0", x)));
  }
  report.clause_c = report.sup_initial <= spec.bound_A;

  for (int j = 0; j < kHypothesisDirections; ++j) {
    const double theta = std::numbers::pi * j / kHypothesisDirections;
    const double tau = std::cos(theta), xi = std::sin(theta);
    const double coarse = nondegeneracy_fraction(derivs, tau, xi, tol);
    const double fine = nondegeneracy_fraction(derivs, tau, xi, 0.1 * tol);
    if (j == 0 || coarse > report.max_fraction) {
      report.max_fraction = coarse;
      report.worst_tau = tau;
      report.worst_xi = xi;
    }
    report.max_fraction_fine = std::max(report.max_fraction_fine, fine);
  }
  report.clause_d = report.max_fraction_fine * 5.0 <= report.max_fraction ||
                    (report.max_fraction == 0.0 && report.max_fraction_fine == 0.0);
  return report;
}

namespace {

constexpr int kMollifierPanels = 48;
constexpr int kMollifierPointsPerPanel = 6;

double bump(double r) { return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

}  // namespace

MollifiedDatum::MollifiedDatum(const ProblemSpec& spec, double width)
    : source_(spec.initial), domain_(spec.domain), bound_(spec.bound_A), width_(width) {
  const auto rule = gauss_legendre(kMollifierPointsPerPanel);
  const double panel = 2.0 / kMollifierPanels;
  double total = 0.0;
  for (int p = 0; p < kMollifierPanels; ++p) {
    const double mid = -1.0 + (p + 0.5) * panel;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = mid + 0.5 * panel * rule.nodes[q];
      const double w = 0.5 * panel * rule.weights[q] * bump(r);
      offsets_.push_back(r * width_);
      weights_.push_back(w);
      total += w;
    }
  }
  for (double& w : weights_) w /= total;
}

double MollifiedDatum::operator()(double x) const {
  const double lo = domain_.lo + 2.0 * width_;
  const double hi = domain_.hi - 2.0 * width_;
  if (x + width_ <= lo || x - width_ >= hi) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    const double y = x + offsets_[j];
    if (y < lo || y > hi) continue;
    sum += weights_[j] * std::clamp(source_(y), -bound_, bound_);
  }
  return std::clamp(sum, -bound_, bound_);
}

MollifiedDatum mollify_initial_data(const ProblemSpec& spec, double width) {
  spec.validate();
  if (!(width > 0.0) || !(width < spec.domain.length() / 4.0)) {
    throw Error(ErrorKind::WidthTooLarge, "mollifier width " + std::to_string(width) +
                                              " must lie in (0, (b-a)/4)");
  }
  return MollifiedDatum(spec, width);
}

}  // namespace vvl
