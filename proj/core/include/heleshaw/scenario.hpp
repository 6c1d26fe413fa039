#pragma once

// Scenario ingestion and solver dispatch.  A scenario names one solver,
// gives its parameters, and optionally sweeps one parameter over a list of
// values; run_scenario executes every sweep item independently and returns
// the sampled boundaries plus per-item verification results.  Configs
// travel as JSON text so runs diff cleanly and reproduce byte for byte.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heleshaw/field.hpp"
#include "heleshaw/geometry.hpp"
#include "heleshaw/moments.hpp"

namespace heleshaw::scenario {

using Complex = std::complex<double>;

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct OutputSpec {
  std::string directory = ".";
  std::string stem;  // defaults to the solver name (or preset id)
  bool svg = true;
};

// Solver names accepted in configs.  The first column is canonical; the
// parser also takes the descriptive aliases.
//
//   example1          source_sink_pair   q, a, b, Q
//   dipole_limit                         mu, a, Q
//   example2          dipole_on_charge   mu, Q, A
//   example3          quadrupole_pair    beta, Q, a
//   rh_unidirectional                    alpha+beta or position+moment; power
//   rh_axisymmetric                      alpha+beta or position+moment; power
//   rh_composed                          alpha+beta or position+moment; power
//   gravity_dynamics                     C, A, mu; sweep over t
struct ScenarioConfig {
  std::string solver;
  std::map<std::string, double> parameters;
  std::optional<SweepSpec> sweep;
  int grid = 2048;
  OutputSpec output;
  bool verify = false;
  double tolerance = 1e-8;
  // rh_unidirectional only: also emit the position / moment relation as a
  // table over a dense range of the second parameter.
  bool relation_table = false;
};

// Parse and validate a config from JSON text (or a file).  Unknown
// solvers, missing required parameters, non-finite values, and empty
// sweeps all throw ConfigError before any solving starts.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

// Built-in parameter sets reproducing the survey figures.
std::vector<std::string> preset_ids();
ScenarioConfig preset(const std::string& id);
std::string preset_summary(const std::string& id);

// One sweep item after solving.  `solved` false means the solver threw;
// the error string then says why and the geometric fields are empty.
struct ItemResult {
  std::string label;
  std::map<std::string, double> parameters;

  bool solved = false;
  std::string error;

  std::vector<double> phi;  // boundary samples, phi_k = 2 pi k / n
  std::vector<Complex> z;
  bool univalent = false;
  double area = 0.0;  // NaN when unavailable (self-intersecting boundary)

  // Closed-form families report the exact univalence threshold of the
  // swept quantity next to its actual value.
  std::string threshold_parameter;
  std::optional<double> threshold_value;
  double threshold_actual = 0.0;

  // Filled when the config asks for verification.
  bool verified = false;
  bool equilibrium = false;
  double max_residual = 0.0;
  double residual_scale = 0.0;
  std::vector<double> residuals;
  std::optional<Complex> feasibility;
  std::optional<double> rationality_defect;

  std::optional<geometry::ConformalMap> map;
  std::optional<field::FieldSpec> fieldspec;
  std::vector<moments::HydroSingularity> singularities;
};

struct RelationRow {
  double alpha, beta, position, moment_ratio;
};

struct RunResult {
  ScenarioConfig config;
  std::vector<ItemResult> items;
  std::vector<RelationRow> relation;  // when config.relation_table
};

// Execute all sweep items (the bare parameter set when no sweep).  Throws
// ConfigError for malformed configs; individual solver failures land in
// the item results instead of propagating.
RunResult run_scenario(const ScenarioConfig& config);

// True when every item failed; the CLI maps this to its solver-failure
// exit code.
bool all_items_failed(const RunResult& result);

}  // namespace heleshaw::scenario
