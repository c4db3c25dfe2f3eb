#pragma once

#include <string>
#include <vector>

#include "vvlab/problem.hpp"

namespace vvl {

/// Flux by name: "burgers", "linear" (unit speed unless given), "cubic".
FluxModel make_flux(const std::string& name, double speed = 1.0);

/// Viscosity by name: "constant" (B = 1), "zero", "quadratic",
/// "shifted_quadratic" (threshold 1/2), "saturating".
ViscosityModel make_viscosity(const std::string& name);

/// Built-in problems on (0, 1) with horizon 1 and A = 1:
///   zero                 u0 = 0
///   burgers_shock        u0 = 1 on [0.1, 0.5): fan at 0.1, shock at 0.5
///   burgers_rarefaction  u0 = 1 on [0.4, 0.9): fan at 0.4, shock leaves at b
///   burgers_sonic        u0 = -1 on [0.2, 0.5), 1 on [0.5, 0.8): transonic fan
///   linear_bump          unit-speed advection of a smooth bump, B = 0
/// Burgers problems default to B(u) = u^2.
ProblemSpec make_problem(const std::string& name);

std::vector<std::string> problem_names();

}  // namespace vvl
