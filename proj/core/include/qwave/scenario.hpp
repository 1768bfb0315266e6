#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qwave/info.hpp"
#include "qwave/potential.hpp"
#include "qwave/states.hpp"
#include "qwave/thermo.hpp"

namespace qwave {

/// Declarative potential description (the config-file form of Potential).
struct PotentialSpec {
  enum class Kind { free, harmonic, time_dependent_harmonic, tabulated };
  Kind kind = Kind::free;
  double omega = 1.0;
  double center = 0.0;
  double amp = 0.0;
  double nu = 1.0;
  std::string values_path;  // tabulated: one value per line, grid.n lines

  Potential build(const Grid1D& grid) const;
};

struct GridConfig {
  double x_min = -20.0;
  double x_max = 20.0;
  int n = 2048;
};

struct UnitsConfig {
  double D = 0.5;
  double m = 1.0;
  double beta0 = 1.0;
};

struct EvolutionConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  int snapshot_stride = 10;
  Scheme scheme = Scheme::split_step;
};

struct OutputConfig {
  std::string csv_path = "qwave_out.csv";
  bool fields_dump = false;
  int precision = 12;  // significant digits
};

struct ToleranceConfig {
  double tol_slack = 1e-7;  // inequality slacks
  double tol_rate = 1e-3;   // first-law / extremum residuals
  double tol_rate2 = 1e-2;  // feedback / speed residuals
};

struct ScenarioConfig {
  std::string name = "scenario";
  GridConfig grid;
  UnitsConfig units;
  StateSpec initial_state;
  PotentialSpec potential;
  EvolutionConfig evolution;
  OutputConfig outputs;
  ToleranceConfig tolerances;
};

/// Strict key = value config parser (a subset of TOML: [section] headers,
/// dotted subsections, '#' comments).  Unknown sections or keys are errors.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

/// Renders a config back to the same text format.
std::string config_to_text(const ScenarioConfig& config);

/// Built-in demo scenarios.
std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);

/// Outcome of a batch run: per-check verdicts plus residual extrema.
struct RunSummary {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> report_lines;  // human-readable summary
  std::string csv_path;
  int n_snapshots = 0;
};

/// Evolves the scenario, writes the time-series CSV (and the optional
/// fields dump), audits every hard invariant, and reports.  Throws
/// ConfigError for invalid configs; numerical invariant violations are
/// collected into the summary (ok = false), matching the CLI exit codes.
RunSummary run_scenario(const ScenarioConfig& config, std::ostream* log);

/// The fixed time-series CSV header.
const std::string& csv_header();

/// Single-state audit printout (InfoReport, velocity variances, Fisher
/// identities, inequality slacks) used by the `audit` subcommand.
std::string audit_report(const WaveFunction& wf, double D, double tol_slack);

}  // namespace qwave
