#include "vvlab/corpus.hpp"

#include <cmath>

#include "vvlab/errors.hpp"

namespace vvl {

FluxModel make_flux(const std::string& name, double speed) {
  if (name == "burgers") return flux::burgers();
  if (name == "linear") return flux::linear(speed);
  if (name == "cubic") return flux::cubic();
  throw Error(ErrorKind::ConfigError, "unknown flux '" + name + "'");
}

ViscosityModel make_viscosity(const std::string& name) {
  if (name == "constant") return viscosity::constant(1.0);
  if (name == "zero") return viscosity::zero();
  if (name == "quadratic") return viscosity::quadratic();
  if (name == "shifted_quadratic") return viscosity::shifted_quadratic(0.5);
  if (name == "saturating") return viscosity::saturating();
  throw Error(ErrorKind::ConfigError, "unknown viscosity '" + name + "'");
}

namespace {

ProblemSpec burgers_with(std::string name, std::vector<Piece> pieces) {
  ProblemSpec spec{std::move(name),    {0.0, 1.0},        1.0,
                   flux::burgers(),    viscosity::quadratic(),
                   initial::piecewise_constant(pieces), 1.0, pieces};
  return spec;
}

}  // namespace

ProblemSpec make_problem(const std::string& name) {
  if (name == "zero") {
    auto spec = burgers_with("zero", {});
    spec.initial = initial::zero();
    return spec;
  }
  if (name == "burgers_shock") return burgers_with(name, {{0.1, 0.5, 1.0}});
  if (name == "burgers_rarefaction") return burgers_with(name, {{0.4, 0.9, 1.0}});
  if (name == "burgers_sonic") return burgers_with(name, {{0.2, 0.5, -1.0}, {0.5, 0.8, 1.0}});
  if (name == "linear_bump") {
    ProblemSpec spec{name,
                     {0.0, 1.0},
                     1.0,
                     flux::linear(1.0),
                     viscosity::zero(),
                     [](double x) {
                       const double r = (x - 0.3) / 0.15;
                       return std::abs(r) < 1.0 ? 0.5 * std::exp(1.0 - 1.0 / (1.0 - r * r))
                                                : 0.0;
                     },
                     1.0,
                     std::nullopt};
    return spec;
  }
  throw Error(ErrorKind::ConfigError, "unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"zero", "burgers_shock", "burgers_rarefaction", "burgers_sonic", "linear_bump"};
}

}  // namespace vvl
