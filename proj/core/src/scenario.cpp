#include "heleshaw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "heleshaw/closed_form.hpp"
#include "heleshaw/errors.hpp"
#include "heleshaw/gravity.hpp"
#include "heleshaw/riemann_hilbert.hpp"

namespace heleshaw::scenario {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::map<std::string, double>;

std::string canonical_solver(const std::string& name) {
  if (name == "example1" || name == "source_sink_pair") return "example1";
  if (name == "dipole_limit") return "dipole_limit";
  if (name == "example2" || name == "dipole_on_charge") return "example2";
  if (name == "example3" || name == "quadrupole_pair") return "example3";
  if (name == "rh_unidirectional" || name == "rh_axisymmetric" ||
      name == "rh_composed" || name == "gravity_dynamics") {
    return name;
  }
  throw ConfigError("unknown solver '" + name + "'");
}

bool valid_grid(int n) { return n >= 64 && n <= 32768 && (n & (n - 1)) == 0; }

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool has_param(const ScenarioConfig& config, const std::string& name) {
  if (config.parameters.count(name)) return true;
  return config.sweep && config.sweep->parameter == name;
}

double require_param(const Params& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw ConfigError("missing required parameter '" + name + "'");
  }
  return it->second;
}

void require_params(const ScenarioConfig& config,
                    std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (!has_param(config, name)) {
      throw ConfigError("solver '" + config.solver +
                        "' needs parameter '" + std::string(name) + "'");
    }
  }
}

void validate(const ScenarioConfig& config) {
  canonical_solver(config.solver);
  if (!valid_grid(config.grid)) {
    throw ConfigError("grid must be a power of two in [64, 32768]");
  }
  if (!std::isfinite(config.tolerance) || config.tolerance <= 0.0) {
    throw ConfigError("tolerance must be positive");
  }
  for (const auto& [key, value] : config.parameters) {
    if (!std::isfinite(value)) {
      throw ConfigError("parameter '" + key + "' is not finite");
    }
  }
  if (config.sweep) {
    if (config.sweep->parameter.empty()) {
      throw ConfigError("sweep parameter name is empty");
    }
    if (config.sweep->values.empty()) {
      throw ConfigError("sweep value list is empty");
    }
    for (double v : config.sweep->values) {
      if (!std::isfinite(v)) throw ConfigError("sweep value is not finite");
    }
  }

  const std::string solver = canonical_solver(config.solver);
  if (solver == "example1") {
    require_params(config, {"q", "a", "b", "Q"});
  } else if (solver == "dipole_limit") {
    require_params(config, {"mu", "a", "Q"});
  } else if (solver == "example2") {
    require_params(config, {"mu", "Q", "A"});
  } else if (solver == "example3") {
    require_params(config, {"beta", "Q", "a"});
  } else if (solver == "gravity_dynamics") {
    require_params(config, {"C", "A", "mu"});
    if (!config.sweep || config.sweep->parameter != "t") {
      throw ConfigError("gravity_dynamics needs a sweep over 't'");
    }
    for (double t : config.sweep->values) {
      if (t < 0.0) throw ConfigError("evolution times must be nonnegative");
    }
  } else {  // rh_*
    const bool ab = has_param(config, "alpha") && has_param(config, "beta");
    const bool pm = has_param(config, "position") && has_param(config, "moment");
    if (ab == pm) {
      throw ConfigError(
          "give either alpha and beta or position and moment, not both");
    }
    if (has_param(config, "power")) {
      // The sweep may not vary the profile exponent; the table emitter and
      // the item labels both assume one fixed profile per run.
      if (config.sweep && config.sweep->parameter == "power") {
        throw ConfigError("sweeping the profile exponent is not supported");
      }
      const double p = config.parameters.at("power");
      if (!(p > 0.0)) throw ConfigError("profile exponent must be positive");
    }
    if (config.relation_table && solver != "rh_unidirectional") {
      throw ConfigError("relation_table applies to rh_unidirectional only");
    }
  }
}

field::MonotoneProfile profile_for(const std::string& solver,
                                   const Params& params) {
  double p = solver == "rh_axisymmetric" ? 1.0 : 2.0;
  if (auto it = params.find("power"); it != params.end()) p = it->second;
  if (p == 1.0) return field::MonotoneProfile::identity();
  if (p == 2.0) return field::MonotoneProfile::square();
  return field::MonotoneProfile::power(p);
}

// Boundary sampling plus the derived per-item facts.  Numeric maps carry
// their own resolution; never sample below it or the resample would drop
// live coefficients.
void fill_boundary(ItemResult& item, const geometry::ConformalMap& map,
                   int grid) {
  int n = std::max(grid, map.natural_grid());
  const auto curve = geometry::sample_boundary(map, n);
  item.phi.resize(n);
  for (int k = 0; k < n; ++k) item.phi[k] = 2.0 * kPi * k / n;
  item.z = curve.z;
  item.area = std::numeric_limits<double>::quiet_NaN();
  if (item.univalent) {
    try {
      item.area = geometry::domain_area(curve);
    } catch (const Error&) {
      // Marginal boundaries can self-touch at sampling precision; the
      // area is then reported as unavailable rather than wrong.
    }
  }
}

void verify_item(ItemResult& item, int grid, double tolerance) {
  if (!item.map || !item.fieldspec) return;
  int n = std::max(grid, item.map->natural_grid());
  const auto curve = geometry::sample_boundary(*item.map, n);
  const auto report = moments::check_equilibrium(curve, *item.fieldspec,
                                                 item.singularities, 12,
                                                 tolerance);
  item.verified = true;
  item.equilibrium = report.equilibrium;
  item.max_residual = report.max_residual;
  item.residual_scale = report.scale;
  item.residuals = report.residuals;
  try {
    item.feasibility =
        moments::feasibility_value(*item.fieldspec, item.singularities);
  } catch (const Error&) {
    // Profile-driven fields have no complex potential to evaluate.
  }
  try {
    item.rationality_defect =
        moments::rationality_check(*item.map, *item.fieldspec);
  } catch (const Error&) {
  }
}

void solve_closed_form(const std::string& solver, ItemResult& item,
                       const Params& params) {
  if (solver == "example1") {
    auto sol = closed_form::solve_source_sink_pair(
        require_param(params, "q"), require_param(params, "a"),
        require_param(params, "b"), require_param(params, "Q"));
    item.map = sol.map;
    item.fieldspec = sol.fieldspec;
    item.singularities = sol.singularities;
    item.univalent = sol.univalent;
    item.threshold_parameter = "a/b";
    item.threshold_value = closed_form::source_sink_critical_ratio(sol.lambda);
    item.threshold_actual = sol.a / sol.b;
  } else if (solver == "dipole_limit") {
    auto sol = closed_form::solve_dipole(require_param(params, "mu"),
                                         require_param(params, "a"),
                                         require_param(params, "Q"));
    item.map = sol.map;
    item.fieldspec = sol.fieldspec;
    item.singularities = sol.singularities;
    item.univalent = sol.univalent;
    item.threshold_parameter = "a";
    item.threshold_value =
        closed_form::dipole_critical_position(sol.mu, sol.Q);
    item.threshold_actual = sol.a;
  } else if (solver == "example2") {
    auto sol = closed_form::solve_dipole_on_charge(
        require_param(params, "mu"), require_param(params, "Q"),
        require_param(params, "A"));
    item.map = sol.map;
    item.fieldspec = sol.fieldspec;
    item.singularities = sol.singularities;
    item.univalent = sol.univalent;
    if (auto it = params.find("B"); it != params.end()) {
      // Deliberately off-balance shape: keep the field and singularities
      // but build the map with the given exponent instead of the
      // balancing 2 mu / (Q A).  Verification then shows the residual a
      // mismatched shape leaves, which is the point of the knob.
      item.map = geometry::ConformalMap::linear_exponential(sol.A, it->second);
      item.univalent = std::abs(it->second) <= 1.0;
    }
    item.threshold_parameter = "A";
    item.threshold_value =
        closed_form::dipole_on_charge_critical_scale(sol.mu, sol.Q);
    item.threshold_actual = sol.A;
  } else {  // example3
    auto sol = closed_form::solve_quadrupole(require_param(params, "beta"),
                                             require_param(params, "Q"),
                                             require_param(params, "a"));
    item.map = sol.map;
    item.fieldspec = sol.fieldspec;
    item.singularities = sol.singularities;
    item.univalent = sol.univalent;
    item.threshold_parameter = "a";
    item.threshold_value =
        closed_form::quadrupole_critical_spacing(sol.beta, sol.Q);
    item.threshold_actual = sol.a;
  }
}

void solve_rh(const std::string& solver, ItemResult& item,
              const Params& params, int grid) {
  const auto profile = profile_for(solver, params);
  const bool ab = params.count("alpha") && params.count("beta");
  rh::RHSolution sol = [&] {
    if (solver == "rh_unidirectional") {
      return ab ? rh::unidirectional_from_parameters(
                      profile, params.at("alpha"), params.at("beta"), grid)
                : rh::solve_unidirectional(profile, params.at("position"),
                                           params.at("moment"), grid);
    }
    if (solver == "rh_axisymmetric") {
      return ab ? rh::axisymmetric_from_parameters(
                      profile, params.at("alpha"), params.at("beta"), grid)
                : rh::solve_axisymmetric(profile, params.at("position"),
                                         params.at("moment"), grid);
    }
    return ab ? rh::composed_from_parameters(profile, params.at("alpha"),
                                             params.at("beta"), grid)
              : rh::solve_composed(profile, params.at("position"),
                                   params.at("moment"), grid);
  }();
  item.map = sol.map;
  item.fieldspec = sol.fieldspec;
  item.singularities = sol.singularities;
  item.univalent = geometry::check_univalence(sol.map).univalent;
  // Echo the solved-for half of the parameter set.
  item.parameters["alpha"] = sol.alpha;
  item.parameters["beta"] = sol.beta;
  item.parameters["position"] = sol.position;
  item.parameters["moment"] = sol.moment();
}

ItemResult make_gravity_item(const gravity::GravityScenario& sc,
                             const std::string& label,
                             const gravity::CauchyTransform& blob,
                             int grid) {
  ItemResult item;
  item.label = label;
  item.solved = true;
  item.univalent = true;
  const auto disk = gravity::disk_of_transform(blob);
  item.area = kPi * disk.coefficient;
  const double r = std::sqrt(disk.coefficient);
  if (r > 0.0) {
    item.phi.resize(grid);
    item.z.resize(grid);
    for (int k = 0; k < grid; ++k) {
      const double phi = 2.0 * kPi * k / grid;
      item.phi[k] = phi;
      item.z[k] = disk.center + std::polar(r, phi);
    }
  }
  item.singularities.push_back(
      moments::HydroSingularity::dipole(sc.dipole_moment, Complex(0.0)));
  return item;
}

std::vector<ItemResult> run_gravity(const ScenarioConfig& config) {
  const auto& p = config.parameters;
  auto sc = gravity::GravityScenario::with_dipole(require_param(p, "C"),
                                                  require_param(p, "A"),
                                                  require_param(p, "mu"));
  std::vector<ItemResult> items;
  {
    gravity::CauchyTransform steady;
    steady.poles.push_back(
        {Complex(sc.dipole_moment / sc.drift), Complex(0.0)});
    auto item = make_gravity_item(sc, "stationary", steady, config.grid);
    item.parameters = config.parameters;
    items.push_back(std::move(item));
  }
  for (double t : config.sweep->values) {
    const std::string label = "t=" + format_value(t);
    ItemResult item;
    try {
      auto parts = gravity::split_decomposition(sc, t);
      if (!parts.physical) {
        throw InvalidParameters(
            "initial blob is smaller than the steady one; the sinking "
            "remainder would have negative area");
      }
      item = make_gravity_item(sc, label, parts.sinking, config.grid);
    } catch (const Error& e) {
      item.label = label;
      item.error = e.what();
    }
    item.parameters = config.parameters;
    item.parameters["t"] = t;
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<RelationRow> build_relation_table(const ScenarioConfig& config) {
  const double alpha = require_param(config.parameters, "alpha");
  const auto profile = profile_for("rh_unidirectional", config.parameters);
  std::vector<RelationRow> rows;
  // beta from the marginal 2 alpha up to 3 alpha; the marginal endpoint
  // itself has finite closed-form values.
  for (int j = 0; j <= 25; ++j) {
    const double beta = alpha * (2.0 + 0.04 * j);
    const auto fv = rh::unidirectional_forward(profile, alpha, beta);
    rows.push_back({alpha, beta, fv.position, fv.fprime0});
  }
  return rows;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> known = {
      "solver", "parameters", "sweep",    "grid",
      "output", "verify",     "tolerance", "relation_table"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  ScenarioConfig config;
  if (!j.contains("solver") || !j["solver"].is_string()) {
    throw ConfigError("config needs a 'solver' string");
  }
  config.solver = j["solver"].get<std::string>();

  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) {
      throw ConfigError("'parameters' must be an object of numbers");
    }
    for (const auto& [key, value] : j["parameters"].items()) {
      if (!value.is_number()) {
        throw ConfigError("parameter '" + key + "' must be a number");
      }
      config.parameters[key] = value.get<double>();
    }
  }

  if (j.contains("sweep") && !j["sweep"].is_null()) {
    const auto& s = j["sweep"];
    if (!s.is_object() || !s.contains("parameter") || !s.contains("values") ||
        !s["parameter"].is_string() || !s["values"].is_array()) {
      throw ConfigError("'sweep' needs a parameter name and a value array");
    }
    SweepSpec sweep;
    sweep.parameter = s["parameter"].get<std::string>();
    for (const auto& v : s["values"]) {
      if (!v.is_number()) throw ConfigError("sweep values must be numbers");
      sweep.values.push_back(v.get<double>());
    }
    config.sweep = std::move(sweep);
  }

  if (j.contains("grid")) {
    if (!j["grid"].is_number_integer()) {
      throw ConfigError("'grid' must be an integer");
    }
    config.grid = j["grid"].get<int>();
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) throw ConfigError("'output' must be an object");
    if (o.contains("directory")) {
      config.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("stem")) config.output.stem = o["stem"].get<std::string>();
    if (o.contains("svg")) config.output.svg = o["svg"].get<bool>();
  }
  if (j.contains("verify")) config.verify = j["verify"].get<bool>();
  if (j.contains("tolerance")) {
    config.tolerance = j["tolerance"].get<double>();
  }
  if (j.contains("relation_table")) {
    config.relation_table = j["relation_table"].get<bool>();
  }

  validate(config);
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::vector<std::string> preset_ids() {
  return {"fig1", "fig2", "fig3", "fig4",
          "fig5", "fig7", "fig8", "gravity_split"};
}

ScenarioConfig preset(const std::string& id) {
  ScenarioConfig c;
  c.output.stem = id;
  c.grid = 1024;
  if (id == "fig1") {
    c.solver = "example1";
    c.parameters = {{"q", 1.0}, {"a", 1.0}, {"b", 4.0}};
    c.sweep = SweepSpec{
        "Q", {0.2734, 0.2959, 0.3189, 0.3424, 0.3664, 0.3909}};
  } else if (id == "fig2") {
    c.solver = "dipole_limit";
    c.parameters = {{"mu", 1.0}, {"a", 1.0}};
    c.sweep = SweepSpec{"Q", {0.2026, 0.2410, 0.2866, 0.3408, 0.4053}};
  } else if (id == "fig3") {
    c.solver = "example2";
    c.parameters = {{"mu", 1.0}, {"Q", 1.0}};
    c.sweep = SweepSpec{"A",
                        {1.0, std::sqrt(2.0), 2.0, 2.0 * std::sqrt(2.0), 4.0}};
  } else if (id == "fig4") {
    c.solver = "example3";
    c.parameters = {{"beta", 1.0}, {"Q", 1.0}};
    c.sweep = SweepSpec{"a", {0.2677, 0.3183, 0.3785, 0.4502}};
  } else if (id == "fig5") {
    c.solver = "rh_unidirectional";
    c.parameters = {{"alpha", 1.0}, {"power", 2.0}};
    c.sweep = SweepSpec{"beta", {2.00, 2.02, 2.06, 2.12, 2.20}};
    c.grid = 2048;
    c.relation_table = true;
  } else if (id == "fig7") {
    c.solver = "rh_axisymmetric";
    c.parameters = {{"alpha", 1.0}, {"power", 1.0}};
    c.sweep = SweepSpec{"beta", {2.0, 2.021, 2.061, 2.121, 2.201}};
    c.grid = 2048;
  } else if (id == "fig8") {
    c.solver = "rh_composed";
    c.parameters = {{"alpha", 1.0}, {"power", 2.0}};
    c.sweep = SweepSpec{"beta", {2.0001, 2.0201, 2.0601, 2.1201, 2.2001}};
    c.grid = 2048;
  } else if (id == "gravity_split") {
    c.solver = "gravity_dynamics";
    c.parameters = {{"C", 1.0}, {"A", 4.0}, {"mu", 2.0}};
    c.sweep = SweepSpec{"t", {0.5, 1.0, 1.5, 2.0}};
    c.grid = 512;
  } else {
    throw ConfigError("unknown preset '" + id + "'");
  }
  validate(c);
  return c;
}

std::string preset_summary(const std::string& id) {
  const ScenarioConfig c = preset(id);
  std::ostringstream line;
  line << id << ": " << c.solver << " with";
  for (const auto& [key, value] : c.parameters) {
    line << ' ' << key << '=' << format_value(value);
  }
  if (c.sweep) {
    line << "; sweep " << c.sweep->parameter << " over {";
    for (size_t i = 0; i < c.sweep->values.size(); ++i) {
      if (i) line << ", ";
      line << format_value(c.sweep->values[i]);
    }
    line << '}';
  }
  return line.str();
}

RunResult run_scenario(const ScenarioConfig& config) {
  validate(config);
  RunResult result;
  result.config = config;

  const std::string solver = canonical_solver(config.solver);
  if (solver == "gravity_dynamics") {
    result.items = run_gravity(config);
    return result;
  }

  std::vector<std::pair<std::string, Params>> jobs;
  if (config.sweep) {
    for (double v : config.sweep->values) {
      Params p = config.parameters;
      p[config.sweep->parameter] = v;
      jobs.emplace_back(config.sweep->parameter + "=" + format_value(v),
                        std::move(p));
    }
  } else {
    jobs.emplace_back(solver, config.parameters);
  }

  for (auto& [label, params] : jobs) {
    ItemResult item;
    item.label = label;
    item.parameters = params;
    try {
      if (solver == "rh_unidirectional" || solver == "rh_axisymmetric" ||
          solver == "rh_composed") {
        solve_rh(solver, item, params, config.grid);
      } else {
        solve_closed_form(solver, item, params);
      }
      fill_boundary(item, *item.map, config.grid);
      item.solved = true;
      if (config.verify) verify_item(item, config.grid, config.tolerance);
    } catch (const Error& e) {
      item.solved = false;
      item.error = e.what();
    }
    result.items.push_back(std::move(item));
  }

  if (config.relation_table) {
    result.relation = build_relation_table(config);
  }
  return result;
}

bool all_items_failed(const RunResult& result) {
  for (const auto& item : result.items) {
    if (item.solved) return false;
  }
  return !result.items.empty();
}

}  // namespace heleshaw::scenario
