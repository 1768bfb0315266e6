#include "qwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "qwave/errors.hpp"

namespace qwave {

namespace {

// ---------------------------------------------------------------------------
// Strict key = value parser ([section] headers, '#' comments, no unknowns).
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

struct RawConfig {
  // section -> key -> value; top-level keys live under "".
  std::map<std::string, std::map<std::string, std::string>> sections;
};

RawConfig parse_raw(const std::string& text) {
  RawConfig raw;
  std::string section;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty section name");
      }
      raw.sections[section];  // a section may be empty (kind = free)
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    auto [it, inserted] = raw.sections[section].emplace(key, value);
    (void)it;
    if (!inserted) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
  }
  return raw;
}

// Typed access with consumed-key tracking so leftovers become errors.
class Section {
 public:
  Section(std::string name, const std::map<std::string, std::string>* kv)
      : name_(std::move(name)), kv_(kv) {}

  bool has(const std::string& key) const {
    return kv_ && kv_->count(key) > 0;
  }

  std::string get_string(const std::string& key) {
    if (!has(key)) {
      throw ConfigError("config section [" + name_ + "]: missing key '" +
                        key + "'");
    }
    consumed_.insert(key);
    return kv_->at(key);
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) {
    return parse_double(key, get_string(key));
  }
  double get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  int get_int(const std::string& key) {
    const std::string text = get_string(key);
    size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) {
      throw ConfigError("config section [" + name_ + "]: key '" + key +
                        "' is not an integer: '" + text + "'");
    }
    return value;
  }
  int get_int(const std::string& key, int fallback) {
    return has(key) ? get_int(key) : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string text = get_string(key);
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError("config section [" + name_ + "]: key '" + key +
                      "' must be true or false");
  }

  void finish() const {
    if (!kv_) return;
    for (const auto& [key, value] : *kv_) {
      if (!consumed_.count(key)) {
        throw ConfigError("config section [" + name_ + "]: unknown key '" +
                          key + "'");
      }
    }
  }

 private:
  double parse_double(const std::string& key, const std::string& text) const {
    size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !std::isfinite(value)) {
      throw ConfigError("config section [" + name_ + "]: key '" + key +
                        "' is not a finite number: '" + text + "'");
    }
    return value;
  }

  std::string name_;
  const std::map<std::string, std::string>* kv_;
  std::set<std::string> consumed_;
};

StateSpec parse_state_section(Section& sec, bool allow_superposition,
                              const RawConfig& raw,
                              std::set<std::string>* visited_sections);

StateSpec parse_state_kind(const std::string& kind, Section& sec,
                           bool allow_superposition, const RawConfig& raw,
                           std::set<std::string>* visited) {
  if (kind == "gaussian") {
    return StateSpec::gaussian(sec.get_double("x0", 0.0),
                               sec.get_double("p0", 0.0),
                               sec.get_double("var0"));
  }
  if (kind == "ho_eigenstate") {
    return StateSpec::ho(sec.get_int("n"), sec.get_double("omega"));
  }
  if (kind == "coherent") {
    return StateSpec::coherent(cdouble(sec.get_double("alpha_re", 0.0),
                                       sec.get_double("alpha_im", 0.0)),
                               sec.get_double("omega"));
  }
  if (kind == "free_gaussian_at") {
    return StateSpec::free_gaussian(
        sec.get_double("t", 0.0), sec.get_double("x0", 0.0),
        sec.get_double("p0", 0.0), sec.get_double("var0"));
  }
  if (kind == "superposition") {
    if (!allow_superposition) {
      throw ConfigError("config: nested superposition components");
    }
    const int count = sec.get_int("components");
    if (count < 1) {
      throw ConfigError("config: superposition needs components >= 1");
    }
    std::vector<StateSpec> parts;
    std::vector<cdouble> coeffs;
    for (int i = 0; i < count; ++i) {
      const std::string name = "initial_state.component_" + std::to_string(i);
      const auto it = raw.sections.find(name);
      if (it == raw.sections.end()) {
        throw ConfigError("config: missing section [" + name + "]");
      }
      visited->insert(name);
      Section comp(name, &it->second);
      coeffs.emplace_back(comp.get_double("coeff_re", 0.0),
                          comp.get_double("coeff_im", 0.0));
      parts.push_back(parse_state_section(comp, false, raw, visited));
      comp.finish();
    }
    return StateSpec::superposition(std::move(parts), std::move(coeffs));
  }
  throw ConfigError("config: unknown initial_state kind '" + kind + "'");
}

StateSpec parse_state_section(Section& sec, bool allow_superposition,
                              const RawConfig& raw,
                              std::set<std::string>* visited_sections) {
  const std::string kind = sec.get_string("kind");
  return parse_state_kind(kind, sec, allow_superposition, raw,
                          visited_sections);
}

Scheme parse_scheme(const std::string& text) {
  if (text == "split_step") return Scheme::split_step;
  if (text == "crank_nicolson") return Scheme::crank_nicolson;
  throw ConfigError("config: unknown scheme '" + text +
                    "' (split_step | crank_nicolson)");
}

PotentialSpec parse_potential_section(Section& sec) {
  PotentialSpec spec;
  const std::string kind = sec.get_string("kind");
  if (kind == "free") {
    spec.kind = PotentialSpec::Kind::free;
  } else if (kind == "harmonic") {
    spec.kind = PotentialSpec::Kind::harmonic;
    spec.omega = sec.get_double("omega");
    spec.center = sec.get_double("center", 0.0);
  } else if (kind == "time_dependent_harmonic") {
    spec.kind = PotentialSpec::Kind::time_dependent_harmonic;
    spec.omega = sec.get_double("omega0");
    spec.amp = sec.get_double("amp");
    spec.nu = sec.get_double("nu");
    spec.center = sec.get_double("center", 0.0);
  } else if (kind == "tabulated") {
    spec.kind = PotentialSpec::Kind::tabulated;
    spec.values_path = sec.get_string("values_path");
  } else {
    throw ConfigError("config: unknown potential kind '" + kind + "'");
  }
  return spec;
}

std::string format_double(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

}  // namespace

Potential PotentialSpec::build(const Grid1D& grid) const {
  switch (kind) {
    case Kind::free:
      return Potential::free_space();
    case Kind::harmonic:
      return Potential::harmonic(omega, center);
    case Kind::time_dependent_harmonic:
      return Potential::driven_harmonic(omega, amp, nu, center);
    case Kind::tabulated: {
      std::ifstream in(values_path);
      if (!in) {
        throw ConfigError("tabulated potential: cannot read '" + values_path +
                          "'");
      }
      std::vector<double> values;
      double v = 0.0;
      while (in >> v) values.push_back(v);
      if (static_cast<int>(values.size()) != grid.n) {
        throw ConfigError("tabulated potential: expected " +
                          std::to_string(grid.n) + " samples in '" +
                          values_path + "', found " +
                          std::to_string(values.size()));
      }
      return Potential::tabulated(std::move(values));
    }
  }
  throw ConfigError("PotentialSpec: unknown kind");
}

ScenarioConfig parse_config_text(const std::string& text) {
  const RawConfig raw = parse_raw(text);
  std::set<std::string> visited;
  ScenarioConfig config;

  auto section = [&](const std::string& name) {
    visited.insert(name);
    const auto it = raw.sections.find(name);
    return Section(name, it == raw.sections.end() ? nullptr : &it->second);
  };

  {
    Section top("", raw.sections.count("") ? &raw.sections.at("") : nullptr);
    visited.insert("");
    config.name = top.get_string("name", config.name);
    top.finish();
  }
  {
    Section sec = section("grid");
    config.grid.x_min = sec.get_double("x_min", config.grid.x_min);
    config.grid.x_max = sec.get_double("x_max", config.grid.x_max);
    config.grid.n = sec.get_int("n", config.grid.n);
    sec.finish();
  }
  {
    Section sec = section("units");
    config.units.D = sec.get_double("D", config.units.D);
    config.units.m = sec.get_double("m", config.units.m);
    config.units.beta0 = sec.get_double("beta0", config.units.beta0);
    sec.finish();
  }
  {
    if (!raw.sections.count("initial_state")) {
      throw ConfigError("config: missing [initial_state] section");
    }
    Section sec = section("initial_state");
    config.initial_state = parse_state_section(sec, true, raw, &visited);
    sec.finish();
  }
  {
    if (!raw.sections.count("potential")) {
      throw ConfigError("config: missing [potential] section");
    }
    Section sec = section("potential");
    config.potential = parse_potential_section(sec);
    sec.finish();
  }
  {
    Section sec = section("evolution");
    config.evolution.dt = sec.get_double("dt", config.evolution.dt);
    config.evolution.t_final =
        sec.get_double("t_final", config.evolution.t_final);
    config.evolution.snapshot_stride =
        sec.get_int("snapshot_stride", config.evolution.snapshot_stride);
    if (sec.has("scheme")) {
      config.evolution.scheme = parse_scheme(sec.get_string("scheme"));
    }
    sec.finish();
  }
  {
    Section sec = section("outputs");
    config.outputs.csv_path =
        sec.get_string("csv_path", config.outputs.csv_path);
    config.outputs.fields_dump =
        sec.get_bool("fields_dump", config.outputs.fields_dump);
    config.outputs.precision =
        sec.get_int("precision", config.outputs.precision);
    sec.finish();
  }
  {
    Section sec = section("tolerances");
    config.tolerances.tol_slack =
        sec.get_double("tol_slack", config.tolerances.tol_slack);
    config.tolerances.tol_rate =
        sec.get_double("tol_rate", config.tolerances.tol_rate);
    config.tolerances.tol_rate2 =
        sec.get_double("tol_rate2", config.tolerances.tol_rate2);
    sec.finish();
  }

  for (const auto& [name, kv] : raw.sections) {
    (void)kv;
    if (!visited.count(name)) {
      throw ConfigError("config: unknown section [" + name + "]");
    }
  }

  // Range checks beyond per-module validation.
  if (config.outputs.precision < 1 || config.outputs.precision > 17) {
    throw ConfigError("config: precision must be in [1, 17]");
  }
  if (!(config.evolution.dt > 0.0) || !(config.evolution.t_final > 0.0)) {
    throw ConfigError("config: dt and t_final must be positive");
  }
  if (config.evolution.snapshot_stride < 1) {
    throw ConfigError("config: snapshot_stride must be >= 1");
  }
  if (!(config.units.D > 0.0) || !(config.units.m > 0.0) ||
      !(config.units.beta0 > 0.0)) {
    throw ConfigError("config: D, m, beta0 must be positive");
  }
  return config;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

void write_state_spec(std::ostream& out, const StateSpec& spec,
                      const std::string& section) {
  out << "[" << section << "]\n";
  switch (spec.kind) {
    case StateSpec::Kind::gaussian:
      out << "kind = gaussian\n";
      out << "x0 = " << format_double(spec.x0, 17) << "\n";
      out << "p0 = " << format_double(spec.p0, 17) << "\n";
      out << "var0 = " << format_double(spec.var0, 17) << "\n";
      break;
    case StateSpec::Kind::ho_eigenstate:
      out << "kind = ho_eigenstate\n";
      out << "n = " << spec.n << "\n";
      out << "omega = " << format_double(spec.omega, 17) << "\n";
      break;
    case StateSpec::Kind::coherent:
      out << "kind = coherent\n";
      out << "alpha_re = " << format_double(spec.alpha.real(), 17) << "\n";
      out << "alpha_im = " << format_double(spec.alpha.imag(), 17) << "\n";
      out << "omega = " << format_double(spec.omega, 17) << "\n";
      break;
    case StateSpec::Kind::free_gaussian_at:
      out << "kind = free_gaussian_at\n";
      out << "t = " << format_double(spec.t, 17) << "\n";
      out << "x0 = " << format_double(spec.x0, 17) << "\n";
      out << "p0 = " << format_double(spec.p0, 17) << "\n";
      out << "var0 = " << format_double(spec.var0, 17) << "\n";
      break;
    case StateSpec::Kind::superposition:
      out << "kind = superposition\n";
      out << "components = " << spec.components.size() << "\n";
      break;
  }
}

}  // namespace

std::string config_to_text(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "name = " << config.name << "\n\n";
  out << "[grid]\n";
  out << "x_min = " << format_double(config.grid.x_min, 17) << "\n";
  out << "x_max = " << format_double(config.grid.x_max, 17) << "\n";
  out << "n = " << config.grid.n << "\n\n";
  out << "[units]\n";
  out << "D = " << format_double(config.units.D, 17) << "\n";
  out << "m = " << format_double(config.units.m, 17) << "\n";
  out << "beta0 = " << format_double(config.units.beta0, 17) << "\n\n";

  write_state_spec(out, config.initial_state, "initial_state");
  if (config.initial_state.kind == StateSpec::Kind::superposition) {
    for (size_t i = 0; i < config.initial_state.components.size(); ++i) {
      out << "\n";
      const std::string name = "initial_state.component_" + std::to_string(i);
      write_state_spec(out, config.initial_state.components[i], name);
      out << "coeff_re = "
          << format_double(config.initial_state.coeffs[i].real(), 17) << "\n";
      out << "coeff_im = "
          << format_double(config.initial_state.coeffs[i].imag(), 17) << "\n";
    }
  }
  out << "\n[potential]\n";
  switch (config.potential.kind) {
    case PotentialSpec::Kind::free:
      out << "kind = free\n";
      break;
    case PotentialSpec::Kind::harmonic:
      out << "kind = harmonic\n";
      out << "omega = " << format_double(config.potential.omega, 17) << "\n";
      out << "center = " << format_double(config.potential.center, 17) << "\n";
      break;
    case PotentialSpec::Kind::time_dependent_harmonic:
      out << "kind = time_dependent_harmonic\n";
      out << "omega0 = " << format_double(config.potential.omega, 17) << "\n";
      out << "amp = " << format_double(config.potential.amp, 17) << "\n";
      out << "nu = " << format_double(config.potential.nu, 17) << "\n";
      out << "center = " << format_double(config.potential.center, 17) << "\n";
      break;
    case PotentialSpec::Kind::tabulated:
      out << "kind = tabulated\n";
      out << "values_path = " << config.potential.values_path << "\n";
      break;
  }
  out << "\n[evolution]\n";
  out << "dt = " << format_double(config.evolution.dt, 17) << "\n";
  out << "t_final = " << format_double(config.evolution.t_final, 17) << "\n";
  out << "snapshot_stride = " << config.evolution.snapshot_stride << "\n";
  out << "scheme = "
      << (config.evolution.scheme == Scheme::split_step ? "split_step"
                                                        : "crank_nicolson")
      << "\n";
  out << "\n[outputs]\n";
  out << "csv_path = " << config.outputs.csv_path << "\n";
  out << "fields_dump = " << (config.outputs.fields_dump ? "true" : "false")
      << "\n";
  out << "precision = " << config.outputs.precision << "\n";
  out << "\n[tolerances]\n";
  out << "tol_slack = " << format_double(config.tolerances.tol_slack, 17)
      << "\n";
  out << "tol_rate = " << format_double(config.tolerances.tol_rate, 17)
      << "\n";
  out << "tol_rate2 = " << format_double(config.tolerances.tol_rate2, 17)
      << "\n";
  return out.str();
}

std::vector<std::string> builtin_scenario_names() {
  return {"stationary_ground", "coherent_oscillation", "free_spreading",
          "superposition_beat", "driven_oscillator"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig config;
  config.name = name;
  config.outputs.csv_path = name + ".csv";

  if (name == "stationary_ground") {
    config.initial_state = StateSpec::ho(0, 1.0);
    config.potential.kind = PotentialSpec::Kind::harmonic;
    config.potential.omega = 1.0;
    config.evolution.t_final = 2.0;
  } else if (name == "coherent_oscillation") {
    config.initial_state = StateSpec::coherent(cdouble(1.0, 0.0), 1.0);
    config.potential.kind = PotentialSpec::Kind::harmonic;
    config.potential.omega = 1.0;
    config.evolution.t_final = 2.0 * std::numbers::pi;
  } else if (name == "free_spreading") {
    config.initial_state = StateSpec::gaussian(0.0, 0.0, 0.5);
    config.potential.kind = PotentialSpec::Kind::free;
    config.evolution.t_final = 2.0;
  } else if (name == "superposition_beat") {
    const double w = std::sqrt(0.5);
    config.initial_state = StateSpec::superposition(
        {StateSpec::ho(0, 1.0), StateSpec::ho(1, 1.0)},
        {cdouble(w, 0.0), cdouble(w, 0.0)});
    config.potential.kind = PotentialSpec::Kind::harmonic;
    config.potential.omega = 1.0;
    config.evolution.t_final = 2.0 * std::numbers::pi;
    // The phase swings steeply while the moving quasi-node is deep; the
    // finite-difference ledger residuals are honest but larger here.
    config.tolerances.tol_rate = 2e-2;
    config.tolerances.tol_rate2 = 2e-1;
  } else if (name == "driven_oscillator") {
    config.initial_state = StateSpec::ho(0, 1.0);
    config.potential.kind = PotentialSpec::Kind::time_dependent_harmonic;
    config.potential.omega = 1.0;
    config.potential.amp = 0.05;
    config.potential.nu = 0.8;
    config.evolution.t_final = 6.0;
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  return config;
}

// ---------------------------------------------------------------------------
// Batch runner
// ---------------------------------------------------------------------------

const std::string& csv_header() {
  static const std::string header =
      "t,E,S_q,S_p,fisher,var_x,var_p,var_u,var_v,S_rate,S_int_rate,"
      "S_ext_rate,U,F,W_rate,Q_rate,res_first_law,res_extremum,res_feedback,"
      "slack_eq3,slack_eq7a,slack_eq7b,slack_eq26";
  return header;
}

namespace {

struct CheckCollector {
  RunSummary* summary;
  std::ostream* log;

  void line(const std::string& text) {
    summary->report_lines.push_back(text);
    if (log) *log << text << "\n";
  }

  void check(const std::string& name, double value, double tol, bool ok) {
    std::ostringstream out;
    out << (ok ? "  ok   " : "  FAIL ") << name << " = "
        << format_double(value, 6) << " (tol " << format_double(tol, 3)
        << ")";
    line(out.str());
    if (!ok) {
      summary->ok = false;
      summary->failures.push_back(name);
    }
  }
};

std::string fields_dump_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  if (dot == std::string::npos) return csv_path + "_fields.csv";
  return csv_path.substr(0, dot) + "_fields" + csv_path.substr(dot);
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& config, std::ostream* log) {
  RunSummary summary;
  summary.csv_path = config.outputs.csv_path;

  GridPtr grid = make_grid(config.grid.x_min, config.grid.x_max, config.grid.n);
  const Potential pot = config.potential.build(*grid);
  const ThermoParams params{config.units.D, config.units.m,
                            config.units.beta0};
  const WaveFunction wf0 =
      build_state(config.initial_state, grid, config.units.D);

  // Whole snapshot strides only, so the ledger differences stay uniform.
  const double dt = config.evolution.dt;
  const int stride = config.evolution.snapshot_stride;
  int n_steps = static_cast<int>(
      std::llround(config.evolution.t_final / (dt * stride))) * stride;
  if (n_steps < stride) n_steps = stride;

  CheckCollector out{&summary, log};
  {
    std::ostringstream head;
    head << "scenario " << config.name << ": n = " << config.grid.n
         << ", dt = " << format_double(dt, 6) << ", steps = " << n_steps
         << ", stride = " << stride << ", scheme = "
         << (config.evolution.scheme == Scheme::split_step ? "split_step"
                                                           : "crank_nicolson");
    out.line(head.str());
  }

  const Trajectory traj = evolve(wf0, pot, config.units.D, dt, n_steps, stride,
                                 config.evolution.scheme);
  const int n_snap = static_cast<int>(traj.snapshots.size());
  summary.n_snapshots = n_snap;

  ThermoLedger ledger = law_residuals(traj, pot, params);
  if (n_snap >= 5) feedback_and_speeds(ledger);

  // Per-snapshot information audit; inequality violations are collected so
  // the CSV still gets written for inspection.
  std::vector<InfoReport> reports(n_snap);
  bool audit_ok = true;
  std::string audit_message;
  for (int i = 0; i < n_snap; ++i) {
    try {
      reports[i] = audit_inequalities(traj.snapshots[i],
                                      config.tolerances.tol_slack);
    } catch (const NumericsError& err) {
      audit_ok = false;
      audit_message = err.what();
      reports[i] = audit_inequalities(traj.snapshots[i],
                                      std::numeric_limits<double>::infinity());
    }
  }

  // ---- CSV ----
  const int prec = config.outputs.precision;
  std::ofstream csv(config.outputs.csv_path);
  if (!csv) {
    throw ConfigError("cannot write CSV file '" + config.outputs.csv_path +
                      "'");
  }
  csv << csv_header() << "\n";
  auto cell = [&](double value) { return format_double(value, prec); };
  auto opt_cell = [&](const std::optional<double>& value) {
    return value ? format_double(*value, prec) : std::string();
  };
  for (int i = 0; i < n_snap; ++i) {
    const InfoReport& r = reports[i];
    const VelocityVariances vv{ledger.mean_u_sq[i], ledger.var_v[i], 0.0};
    csv << cell(ledger.times[i]) << ',' << cell(ledger.E[i]) << ','
        << cell(r.s_q) << ',' << cell(r.s_p) << ',' << cell(r.fisher) << ','
        << cell(r.var_x) << ',' << cell(r.var_p) << ',' << cell(vv.var_u)
        << ',' << cell(vv.var_v) << ',' << cell(ledger.S_rate[i]) << ','
        << cell(ledger.S_int_rate[i]) << ',' << cell(ledger.S_ext_rate[i])
        << ',' << opt_cell(ledger.U[i]) << ',' << opt_cell(ledger.F[i]) << ','
        << cell(ledger.W_rate[i]) << ',' << cell(ledger.Q_rate[i]) << ','
        << opt_cell(ledger.res_first_law[i]) << ','
        << opt_cell(ledger.res_extremum[i]) << ','
        << opt_cell(ledger.res_feedback[i]) << ','
        << cell(r.slack_entropic_sum) << ',' << cell(r.slack_stam_upper)
        << ',' << cell(r.slack_stam_lower) << ',' << cell(r.slack_sharp_upper)
        << "\n";
  }
  csv.close();

  if (config.outputs.fields_dump) {
    std::ofstream fields(fields_dump_path(config.outputs.csv_path));
    fields << "t,x,rho,u,v,Q\n";
    for (int i = 0; i < n_snap; ++i) {
      const HydroFields f = decompose(traj.snapshots[i], config.units.D);
      for (int j = 0; j < grid->n; ++j) {
        fields << cell(ledger.times[i]) << ',' << cell(grid->x[j]) << ','
               << cell(f.rho[j]) << ',' << cell(f.u[j]) << ',' << cell(f.v[j])
               << ',' << cell(f.q_pot[j]) << "\n";
      }
    }
  }

  // ---- Verdict ----
  const double tol_rate = config.tolerances.tol_rate;
  const double tol_rate2 = config.tolerances.tol_rate2;
  const double T0 = params.T0();

  double norm_drift = 0.0, edge = 0.0;
  for (const WaveFunction& snap : traj.snapshots) {
    norm_drift = std::max(norm_drift, std::abs(norm_sq(snap) - 1.0));
    edge = std::max(edge, edge_mass(snap));
  }
  out.check("norm drift max", norm_drift, 1e-8, norm_drift <= 1e-8);
  out.check("edge mass max", edge, 1e-6, edge <= 1e-6);

  if (!audit_ok) {
    out.line("  FAIL inequality audit: " + audit_message);
    summary.ok = false;
    summary.failures.push_back("inequality audit");
  } else {
    double min_slack = std::numeric_limits<double>::infinity();
    for (const InfoReport& r : reports) {
      for (const auto& [name, slack] : r.inequality_slacks()) {
        (void)name;
        min_slack = std::min(min_slack, slack);
      }
    }
    out.check("inequality slack min", min_slack, config.tolerances.tol_slack,
              true);
  }

  double s_int_min = std::numeric_limits<double>::infinity();
  for (double rate : ledger.S_int_rate) s_int_min = std::min(s_int_min, rate);
  out.check("entropy production min", s_int_min, 1e-10, s_int_min >= -1e-10);

  // T0 S_int' = T0 S' - Q' is algebra on the assembled series.
  double split_res = 0.0;
  for (int i = 0; i < n_snap; ++i) {
    split_res = std::max(split_res,
                         std::abs(T0 * ledger.S_int_rate[i] -
                                  (T0 * ledger.S_rate[i] - ledger.Q_rate[i])));
  }
  out.check("entropy split algebra", split_res, 1e-10, split_res <= 1e-10);

  // Finite-difference dS/dt against the analytic rate -<u v>/D.
  double ds_res = 0.0;
  for (int i = 1; i + 1 < n_snap; ++i) {
    const double fd =
        (ledger.S[i + 1] - ledger.S[i - 1]) / (2.0 * ledger.snapshot_dt);
    ds_res = std::max(ds_res, std::abs(fd - ledger.S_rate[i]));
  }
  out.check("dS/dt vs analytic rate", ds_res, tol_rate, ds_res <= tol_rate);

  auto max_opt = [](const std::vector<std::optional<double>>& series) {
    double worst = 0.0;
    for (const auto& v : series) {
      if (v) worst = std::max(worst, std::abs(*v));
    }
    return worst;
  };

  const double first_law = max_opt(ledger.res_first_law);
  out.check("first law residual max", first_law, tol_rate,
            first_law <= tol_rate);
  const double extremum = max_opt(ledger.res_extremum);
  out.check("extremum residual max", extremum, tol_rate,
            extremum <= tol_rate);

  // F' <= W' (the residual minus T0 S_int' is F' - W' and must stay <= 0).
  double extremum_sign = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_snap; ++i) {
    if (ledger.res_extremum[i]) {
      extremum_sign = std::max(
          extremum_sign, *ledger.res_extremum[i] - T0 * ledger.S_int_rate[i]);
    }
  }
  if (std::isfinite(extremum_sign)) {
    out.check("F rate below work rate", extremum_sign, tol_rate,
              extremum_sign <= tol_rate);
  }

  if (pot.is_static()) {
    double w_drift = 0.0;
    const double w_scale = std::max(std::abs(ledger.W_rate[0]), 1e-30);
    for (double w : ledger.W_rate) {
      w_drift = std::max(w_drift, std::abs(w - ledger.W_rate[0]) / w_scale);
    }
    out.check("work rate constancy (rel)", w_drift, 1e-6, w_drift <= 1e-6);
  }

  if (n_snap >= 5) {
    // For a driven trap the exact feedback balance picks up the work-rate
    // drift beta0 dE/dt; for static potentials that term vanishes.
    double feedback = 0.0, speed_h = 0.0, speed_s = 0.0;
    for (int i = 0; i < n_snap; ++i) {
      const double drive =
          (pot.is_static() || !ledger.w_rate_dot[i]) ? 0.0
                                                     : *ledger.w_rate_dot[i];
      if (ledger.res_feedback[i]) {
        feedback = std::max(feedback, std::abs(*ledger.res_feedback[i] -
                                               drive));
      }
      if (ledger.res_speed_helmholtz[i]) {
        speed_h = std::max(speed_h,
                           std::abs(*ledger.res_speed_helmholtz[i] + drive));
      }
      if (ledger.res_speed_entropy[i]) {
        speed_s = std::max(speed_s, std::abs(*ledger.res_speed_entropy[i]));
      }
    }
    const char* feedback_name = pot.is_static()
                                    ? "feedback residual max"
                                    : "feedback residual max (drive-corrected)";
    out.check(feedback_name, feedback, tol_rate2, feedback <= tol_rate2);
    out.check("helmholtz speed residual max", speed_h, tol_rate2,
              speed_h <= tol_rate2);
    out.check("entropy speed residual max", speed_s, tol_rate2,
              speed_s <= tol_rate2);
  }

  const ProductionProbe probe = minimum_entropy_production_probe(ledger);
  out.line("  info entropy production trend: " + to_string(probe.trend) +
           " (sign changes: " + std::to_string(probe.sign_changes) + ")");

  {
    std::ostringstream tail;
    tail << (summary.ok ? "verdict: PASS" : "verdict: FAIL") << " ("
         << summary.csv_path << ", " << n_snap << " snapshots)";
    out.line(tail.str());
  }
  return summary;
}

std::string audit_report(const WaveFunction& wf, double D, double tol_slack) {
  const InfoReport r = audit_inequalities(wf, tol_slack);
  const HydroFields fields = decompose(wf, D);
  const VelocityVariances vv = velocity_variances(fields);
  const FisherIdentityResiduals fid = fisher_identities(wf, D);

  auto fmt = [](double v) { return format_double(v, 10); };
  std::ostringstream out;
  out << "information functionals (2mD = 1 convention)\n";
  out << "  S_q               = " << fmt(r.s_q) << "\n";
  out << "  S_p               = " << fmt(r.s_p) << "\n";
  out << "  S_q + S_p         = " << fmt(r.s_q + r.s_p) << "\n";
  out << "  fisher            = " << fmt(r.fisher) << "\n";
  out << "  mean_x  / var_x   = " << fmt(r.mean_x) << " / " << fmt(r.var_x)
      << "\n";
  out << "  mean_p  / var_p   = " << fmt(r.mean_p) << " / " << fmt(r.var_p)
      << "\n";
  out << "  var_p_cl          = " << fmt(r.var_p_cl) << "\n";
  out << "  entropy power     = " << fmt(r.entropy_power_product) << "\n";
  out << "inequality slacks (>= 0 when the relation holds)\n";
  for (const auto& [name, slack] : r.inequality_slacks()) {
    out << "  " << name << std::string(16 - std::min<size_t>(16, name.size()),
                                       ' ')
        << "= " << fmt(slack) << "\n";
  }
  out << "  sharp chain mid residual = " << fmt(r.sharp_mid_residual) << "\n";
  out << "velocity fields (D = " << format_double(D, 6) << ")\n";
  out << "  var_u             = " << fmt(vv.var_u) << "\n";
  out << "  var_v             = " << fmt(vv.var_v) << "\n";
  out << "  mean_v            = " << fmt(vv.mean_v) << "\n";
  out << "  mean_u (should vanish) = " << fmt(fields.mean_u) << "\n";
  out << "fisher identity residuals\n";
  out << "  D^2 F - <u^2>          = " << fmt(fid.osmotic_vs_fisher) << "\n";
  out << "  (D^2/2) F + <Q>        = " << fmt(fid.quantum_potential) << "\n";
  out << "  <u^2> + D <u'>         = " << fmt(fid.osmotic_divergence) << "\n";
  out << "  <P^2> - m^2<v^2> - m^2 D^2 F = " << fmt(fid.momentum_split)
      << "\n";
  return out.str();
}

}  // namespace qwave
