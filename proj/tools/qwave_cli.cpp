// Command-line front-end: `run` evolves a scenario config and writes the
// time-series CSV, `audit` prints the functional audit of a single state,
// `list-scenarios` names the built-in demos.
//
// Exit codes: 0 success, 1 numerical invariant violation, 2 bad input.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qwave/qwave.hpp"

namespace {

constexpr int kExitNumerics = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string config_path;
  std::string scenario;
  bool emit_config = false;
  bool fields_dump = false;
  int precision = 0;  // 0 = keep config value
  std::string csv_path;
};

struct AuditArgs {
  std::vector<double> ho;        // n omega
  std::vector<double> gaussian;  // x0 p0 var0
  std::vector<double> coherent;  // re im omega
  std::vector<double> free_g;    // t x0 p0 var0
  double x_min = -20.0;
  double x_max = 20.0;
  int n = 2048;
  double D = 0.5;
  double tol_slack = 1e-7;
};

int do_run(const RunArgs& args, bool quiet) {
  qwave::ScenarioConfig config;
  if (!args.scenario.empty()) {
    config = qwave::builtin_scenario(args.scenario);
  } else if (!args.config_path.empty()) {
    config = qwave::parse_config_file(args.config_path);
  } else {
    std::cerr << "run: give a config path or --scenario NAME\n";
    return kExitUsage;
  }
  if (args.fields_dump) config.outputs.fields_dump = true;
  if (args.precision > 0) config.outputs.precision = args.precision;
  if (!args.csv_path.empty()) config.outputs.csv_path = args.csv_path;

  if (args.emit_config) {
    std::cout << qwave::config_to_text(config);
    return 0;
  }

  const qwave::RunSummary summary =
      qwave::run_scenario(config, quiet ? nullptr : &std::cout);
  if (quiet) {
    std::cout << (summary.ok ? "verdict: PASS" : "verdict: FAIL") << "\n";
    for (const std::string& failure : summary.failures) {
      std::cout << "failed: " << failure << "\n";
    }
  }
  return summary.ok ? 0 : kExitNumerics;
}

int do_audit(const AuditArgs& args) {
  const int chosen = (!args.ho.empty()) + (!args.gaussian.empty()) +
                     (!args.coherent.empty()) + (!args.free_g.empty());
  if (chosen != 1) {
    std::cerr << "audit: choose exactly one of --ho, --gaussian, --coherent, "
                 "--free\n";
    return kExitUsage;
  }
  qwave::GridPtr grid = qwave::make_grid(args.x_min, args.x_max, args.n);
  qwave::WaveFunction wf = [&] {
    if (!args.ho.empty()) {
      const int level = static_cast<int>(args.ho[0]);
      return qwave::ho_eigenstate(level, args.ho[1], grid, args.D);
    }
    if (!args.gaussian.empty()) {
      return qwave::gaussian_packet(args.gaussian[0], args.gaussian[1],
                                    args.gaussian[2], grid);
    }
    if (!args.coherent.empty()) {
      return qwave::coherent_state({args.coherent[0], args.coherent[1]},
                                   args.coherent[2], grid, args.D);
    }
    return qwave::free_gaussian_at(args.free_g[0], args.free_g[1],
                                   args.free_g[2], args.free_g[3], grid,
                                   args.D);
  }();
  std::cout << qwave::audit_report(wf, args.D, args.tol_slack);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D wave-packet evolution with information-functional and "
               "thermodynamic-identity audits"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "only print the verdict");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "evolve a scenario config");
  run->add_option("config", run_args.config_path, "scenario config file");
  run->add_option("--scenario", run_args.scenario,
                  "run a built-in scenario by name");
  run->add_flag("--emit-config", run_args.emit_config,
                "print the effective config instead of running");
  run->add_flag("--fields-dump", run_args.fields_dump,
                "also write the per-snapshot (x, rho, u, v, Q) matrix");
  run->add_option("--precision", run_args.precision,
                  "CSV significant digits (overrides config)");
  run->add_option("--csv", run_args.csv_path,
                  "CSV output path (overrides config)");

  AuditArgs audit_args;
  CLI::App* audit =
      app.add_subcommand("audit", "audit a single analytic state");
  audit->add_option("--ho", audit_args.ho, "oscillator eigenstate: N OMEGA")
      ->expected(2);
  audit->add_option("--gaussian", audit_args.gaussian,
                    "gaussian packet: X0 P0 VAR0")
      ->expected(3);
  audit->add_option("--coherent", audit_args.coherent,
                    "coherent state: RE IM OMEGA")
      ->expected(3);
  audit->add_option("--free", audit_args.free_g,
                    "free packet slice: T X0 P0 VAR0")
      ->expected(4);
  audit->add_option("--grid", [&audit_args](const CLI::results_t& res) {
    audit_args.x_min = std::stod(res[0]);
    audit_args.x_max = std::stod(res[1]);
    audit_args.n = std::stoi(res[2]);
    return true;
  }, "grid: XMIN XMAX N")->expected(3);
  audit->add_option("--D", audit_args.D, "diffusion constant hbar/2m");
  audit->add_option("--tol-slack", audit_args.tol_slack,
                    "inequality slack tolerance");

  CLI::App* list =
      app.add_subcommand("list-scenarios", "print built-in scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(run_args, quiet);
    if (audit->parsed()) return do_audit(audit_args);
    if (list->parsed()) {
      for (const std::string& name : qwave::builtin_scenario_names()) {
        std::cout << name << "\n";
      }
      return 0;
    }
  } catch (const qwave::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const qwave::NumericsError& err) {
    std::cerr << "numerics error: " << err.what() << "\n";
    return kExitNumerics;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerics;
  }
  return kExitUsage;
}
