#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "vvlab/corpus.hpp"
#include "vvlab/errors.hpp"
#include "vvlab/harness.hpp"

namespace vvl {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

void reject_unknown(const YAML::Node& node, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    config_error("key '" + key + "' has the wrong type");
  }
}

template <class T>
std::vector<T> list(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) config_error("key '" + key + "' must be a list");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(item, key));
  return out;
}

void parse_problem(const YAML::Node& node, ExperimentConfig& cfg) {
  if (node.IsScalar()) {
    cfg.problem = node.as<std::string>();
    return;
  }
  if (!node.IsMap()) config_error("'problem' must be a name or a mapping");
  reject_unknown(node,
                 {"name", "flux", "flux_speed", "viscosity", "domain", "horizon", "bound_A",
                  "pieces"},
                 "problem");
  auto& o = cfg.overrides;
  if (node["name"]) cfg.problem = scalar<std::string>(node["name"], "problem.name");
  if (node["flux"]) o.flux = scalar<std::string>(node["flux"], "problem.flux");
  if (node["flux_speed"]) o.flux_speed = scalar<double>(node["flux_speed"], "problem.flux_speed");
  if (node["viscosity"]) o.viscosity = scalar<std::string>(node["viscosity"], "problem.viscosity");
  if (node["domain"]) {
    const auto d = list<double>(node["domain"], "problem.domain");
    if (d.size() != 2) config_error("problem.domain must be [a, b]");
    o.domain = Interval{d[0], d[1]};
  }
  if (node["horizon"]) o.horizon = scalar<double>(node["horizon"], "problem.horizon");
  if (node["bound_A"]) o.bound_A = scalar<double>(node["bound_A"], "problem.bound_A");
  if (node["pieces"]) {
    std::vector<Piece> pieces;
    for (const auto& item : node["pieces"]) {
      const auto p = list<double>(item, "problem.pieces");
      if (p.size() != 3) config_error("each piece must be [lo, hi, value]");
      pieces.push_back({p[0], p[1], p[2]});
    }
    o.pieces = pieces;
  }
}

OttoSource parse_source(const std::string& s) {
  if (s == "solver") return OttoSource::Solver;
  if (s == "reference") return OttoSource::Reference;
  if (s == "antishock") return OttoSource::Antishock;
  config_error("otto_trajectory must be solver, reference or antishock");
}

const char* source_name(OttoSource s) {
  switch (s) {
    case OttoSource::Solver: return "solver";
    case OttoSource::Reference: return "reference";
    case OttoSource::Antishock: return "antishock";
  }
  return "solver";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) config_error("config must be a mapping");
  reject_unknown(root,
                 {"problem", "epsilon_list", "delta_list", "n_cells", "t_end", "k_list",
                  "l_list", "h_list", "t_probe_list", "tolerances", "seed", "solver",
                  "reference_cells", "delta_sweep_epsilon", "otto_trajectory",
                  "export_snapshots", "hypothesis"},
                 "config");
  ExperimentConfig cfg;
  if (root["problem"]) parse_problem(root["problem"], cfg);
  if (root["epsilon_list"]) cfg.epsilon_list = list<double>(root["epsilon_list"], "epsilon_list");
  if (root["delta_list"]) cfg.delta_list = list<double>(root["delta_list"], "delta_list");
  if (root["n_cells"]) cfg.n_cells = scalar<int>(root["n_cells"], "n_cells");
  if (root["t_end"]) cfg.t_end = scalar<double>(root["t_end"], "t_end");
  if (root["k_list"]) cfg.k_list = list<double>(root["k_list"], "k_list");
  if (root["l_list"]) cfg.l_list = list<int>(root["l_list"], "l_list");
  if (root["h_list"]) cfg.h_list = list<double>(root["h_list"], "h_list");
  if (root["t_probe_list"]) cfg.t_probe_list = list<double>(root["t_probe_list"], "t_probe_list");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (const auto tol = root["tolerances"]) {
    reject_unknown(tol, {"otto_interior", "otto_boundary", "otto_initial", "delta_cauchy"},
                   "tolerances");
    auto& t = cfg.tolerances;
    if (tol["otto_interior"]) t.otto_interior = scalar<double>(tol["otto_interior"], "otto_interior");
    if (tol["otto_boundary"]) t.otto_boundary = scalar<double>(tol["otto_boundary"], "otto_boundary");
    if (tol["otto_initial"]) t.otto_initial = scalar<double>(tol["otto_initial"], "otto_initial");
    if (tol["delta_cauchy"]) t.delta_cauchy = scalar<double>(tol["delta_cauchy"], "delta_cauchy");
  }
  if (const auto s = root["solver"]) {
    reject_unknown(s, {"cfl", "dfl", "record_every", "mollifier_width"}, "solver");
    if (s["cfl"]) cfg.cfl = scalar<double>(s["cfl"], "solver.cfl");
    if (s["dfl"]) cfg.dfl = scalar<double>(s["dfl"], "solver.dfl");
    if (s["record_every"]) cfg.record_every = scalar<int>(s["record_every"], "solver.record_every");
    if (s["mollifier_width"]) {
      cfg.mollifier_width = scalar<double>(s["mollifier_width"], "solver.mollifier_width");
    }
  }
  if (root["reference_cells"]) cfg.reference_cells = scalar<int>(root["reference_cells"], "reference_cells");
  if (root["delta_sweep_epsilon"]) {
    cfg.delta_sweep_epsilon = scalar<double>(root["delta_sweep_epsilon"], "delta_sweep_epsilon");
  }
  if (root["otto_trajectory"]) {
    cfg.otto_trajectory = parse_source(scalar<std::string>(root["otto_trajectory"], "otto_trajectory"));
  }
  if (root["export_snapshots"]) {
    cfg.export_snapshots = scalar<int>(root["export_snapshots"], "export_snapshots");
  }
  if (const auto h = root["hypothesis"]) {
    reject_unknown(h, {"samples", "tol"}, "hypothesis");
    if (h["samples"]) cfg.hypothesis_samples = scalar<int>(h["samples"], "hypothesis.samples");
    if (h["tol"]) cfg.hypothesis_tol = scalar<double>(h["tol"], "hypothesis.tol");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ProblemSpec ExperimentConfig::build_problem() const {
  ProblemSpec spec = make_problem(problem);
  const auto& o = overrides;
  if (o.flux) spec.flux = make_flux(*o.flux, o.flux_speed.value_or(1.0));
  if (o.viscosity) spec.viscosity = make_viscosity(*o.viscosity);
  if (o.domain) spec.domain = *o.domain;
  if (o.horizon) spec.horizon = *o.horizon;
  if (o.bound_A) spec.bound_A = *o.bound_A;
  if (o.pieces) {
    spec.pieces = *o.pieces;
    spec.initial = initial::piecewise_constant(*o.pieces);
  }
  spec.validate();
  return spec;
}

SolverConfig ExperimentConfig::solver_config(double epsilon, double delta) const {
  SolverConfig sc;
  sc.epsilon = epsilon;
  sc.delta = delta;
  sc.cfl = cfl;
  sc.dfl = dfl;
  sc.t_end = t_end;
  sc.record_every = record_every;
  sc.mollifier_width = mollifier_width;
  return sc;
}

void ExperimentConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) config_error(what);
  };
  need(!epsilon_list.empty(), "epsilon_list must be nonempty");
  need(!delta_list.empty(), "delta_list must be nonempty");
  need(!k_list.empty(), "k_list must be nonempty");
  need(!l_list.empty(), "l_list must be nonempty");
  need(!h_list.empty(), "h_list must be nonempty");
  need(!t_probe_list.empty(), "t_probe_list must be nonempty");
  for (std::size_t i = 0; i < epsilon_list.size(); ++i) {
    need(epsilon_list[i] > 0.0, "epsilon_list entries must be positive");
    if (i > 0) need(epsilon_list[i] < epsilon_list[i - 1], "epsilon_list must be strictly decreasing");
  }
  for (std::size_t i = 0; i < delta_list.size(); ++i) {
    need(delta_list[i] >= 0.0, "delta_list entries must be nonnegative");
    if (i > 0) need(delta_list[i] <= delta_list[i - 1], "delta_list must be decreasing");
  }
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    need(h_list[i] > 0.0, "h_list entries must be positive");
    if (i > 0) need(h_list[i] < h_list[i - 1], "h_list must be strictly decreasing");
  }
  for (double t : t_probe_list) need(t > 0.0, "t_probe_list entries must be positive");
  for (int l : l_list) need(l >= 1, "l_list entries must be >= 1");
  need(n_cells >= 1, "n_cells must be positive");
  need(reference_cells >= 200, "reference_cells must be >= 200");
  need(export_snapshots >= 2, "export_snapshots must be >= 2");
  need(hypothesis_samples >= 100, "hypothesis.samples must be >= 100");
  need(hypothesis_tol > 0.0, "hypothesis.tol must be positive");
  const auto& t = tolerances;
  need(t.otto_interior > 0.0 && t.otto_boundary > 0.0 && t.otto_initial > 0.0 &&
           t.delta_cauchy > 0.0,
       "all tolerances must be positive");
  if (delta_sweep_epsilon) need(*delta_sweep_epsilon > 0.0, "delta_sweep_epsilon must be positive");

  std::optional<ProblemSpec> built;
  try {
    built.emplace(build_problem());
  } catch (const Error& e) {
    config_error(e.what());
  }
  const ProblemSpec& spec = *built;
  need(t_end > 0.0, "t_end must be positive");
  need(t_end <= spec.horizon, "t_end exceeds the problem horizon");
  try {
    solver_config(epsilon_list.front(), delta_list.front()).validate(spec);
  } catch (const Error& e) {
    config_error(e.what());
  }
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string seq(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      s += num(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s + "]";
}

}  // namespace

std::string echo_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto& o = cfg.overrides;
  out << "problem:\n  name: " << cfg.problem << "\n";
  if (o.flux) out << "  flux: " << *o.flux << "\n";
  if (o.flux_speed) out << "  flux_speed: " << num(*o.flux_speed) << "\n";
  if (o.viscosity) out << "  viscosity: " << *o.viscosity << "\n";
  if (o.domain) out << "  domain: [" << num(o.domain->lo) << ", " << num(o.domain->hi) << "]\n";
  if (o.horizon) out << "  horizon: " << num(*o.horizon) << "\n";
  if (o.bound_A) out << "  bound_A: " << num(*o.bound_A) << "\n";
  if (o.pieces) {
    out << "  pieces: [";
    for (std::size_t i = 0; i < o.pieces->size(); ++i) {
      const auto& p = (*o.pieces)[i];
      out << (i ? ", " : "") << "[" << num(p.lo) << ", " << num(p.hi) << ", " << num(p.value) << "]";
    }
    out << "]\n";
  }
  out << "epsilon_list: " << seq(cfg.epsilon_list) << "\n";
  out << "delta_list: " << seq(cfg.delta_list) << "\n";
  out << "n_cells: " << cfg.n_cells << "\n";
  out << "t_end: " << num(cfg.t_end) << "\n";
  out << "k_list: " << seq(cfg.k_list) << "\n";
  out << "l_list: " << seq(cfg.l_list) << "\n";
  out << "h_list: " << seq(cfg.h_list) << "\n";
  out << "t_probe_list: " << seq(cfg.t_probe_list) << "\n";
  const auto& t = cfg.tolerances;
  out << "tolerances:\n  otto_interior: " << num(t.otto_interior)
      << "\n  otto_boundary: " << num(t.otto_boundary) << "\n  otto_initial: " << num(t.otto_initial)
      << "\n  delta_cauchy: " << num(t.delta_cauchy) << "\n";
  out << "seed: " << cfg.seed << "\n";
  out << "solver:\n  cfl: " << num(cfg.cfl) << "\n  dfl: " << num(cfg.dfl)
      << "\n  record_every: " << cfg.record_every << "\n  mollifier_width: " << num(cfg.mollifier_width)
      << "\n";
  out << "reference_cells: " << cfg.reference_cells << "\n";
  if (cfg.delta_sweep_epsilon) out << "delta_sweep_epsilon: " << num(*cfg.delta_sweep_epsilon) << "\n";
  out << "otto_trajectory: " << source_name(cfg.otto_trajectory) << "\n";
  out << "export_snapshots: " << cfg.export_snapshots << "\n";
  out << "hypothesis:\n  samples: " << cfg.hypothesis_samples << "\n  tol: " << num(cfg.hypothesis_tol)
      << "\n";
  return out.str();
}

}  // namespace vvl
