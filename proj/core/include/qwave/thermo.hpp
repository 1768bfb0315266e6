#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwave/hydro.hpp"
#include "qwave/propagate.hpp"

namespace qwave {

/// Unit block of the thermodynamic analogy.  The temperature scale is the
/// dimensional identification k_B T0 = m D beta0 (k_B = 1), so only the
/// products T0*rates and beta0*energies are physical; beta0 is a free
/// positive parameter with default 1.
struct ThermoParams {
  double D = 0.5;
  double m = 1.0;
  double beta0 = 1.0;
  double T0() const { return m * D * beta0; }
};

/// Entropy-rate split D dS/dt = <v^2> - <b v>, i.e.
///   s_int_rate = <v^2>/D  (>= 0, the production term)
///   s_ext_rate = -<b v>/D
///   s_rate     = s_int_rate + s_ext_rate = -<u v>/D
struct EntropyRates {
  double s_rate = 0.0;
  double s_int_rate = 0.0;
  double s_ext_rate = 0.0;
};

EntropyRates entropy_rates(const HydroFields& fields,
                           const ThermoParams& params);
EntropyRates entropy_rates(const WaveFunction& wf, const ThermoParams& params);

/// Smoluchowski drift potential V(x) = -m beta0 (s + D ln rho) with
/// b = -grad(V)/(m beta0), and its mean U = <V>.  Defined only for
/// nodeless states (throws NodalStateError otherwise); a global phase
/// shifts U by a constant.
struct SmoluchowskiPotential {
  std::vector<double> values;
  double mean = 0.0;  // U
};

SmoluchowskiPotential smoluchowski_potential(const WaveFunction& wf,
                                             const ThermoParams& params);

/// Helmholtz analog F = U - T0 S, cross-computed as -m beta0 <s>; throws
/// NumericsError when the two routes disagree beyond tol.
double helmholtz(const WaveFunction& wf, const ThermoParams& params,
                 double tol = 1e-6);

/// Work rate W' = beta0 <H> (constant for static potentials) and heat rate
/// Q' = T0 * s_ext_rate.
struct WorkHeatRates {
  double w_rate = 0.0;
  double q_rate = 0.0;
};

WorkHeatRates work_and_heat_rates(const WaveFunction& wf, const Potential& pot,
                                  const ThermoParams& params, double t);

/// Time series of every thermodynamic quantity along a trajectory plus the
/// residuals of the identities that must hold.  U, F and the derived
/// residuals are absent on snapshots where the phase is undefined (nodal
/// states) and at series endpoints (centered differences).
struct ThermoLedger {
  std::vector<double> times;
  std::vector<double> S;
  std::vector<double> S_rate;
  std::vector<double> S_int_rate;
  std::vector<double> S_ext_rate;
  std::vector<double> E;
  std::vector<double> W_rate;
  std::vector<double> Q_rate;
  std::vector<double> mean_u_sq;  // <u^2> = var_u
  std::vector<double> var_v;
  std::vector<double> mean_v_sq;  // <v^2>
  std::vector<double> mean_pot;   // <V_ext>

  std::vector<std::optional<double>> U;
  std::vector<std::optional<double>> F;
  std::vector<std::optional<double>> res_first_law;  // U' - W' - Q'
  std::vector<std::optional<double>> res_extremum;   // F' - W' + T0 S_int'

  // Second-order (speed) residuals, filled by feedback_and_speeds:
  std::vector<std::optional<double>> res_feedback;      // F'' + T0 dS_int'/dt
  std::vector<std::optional<double>> res_speed_helmholtz;
  std::vector<std::optional<double>> res_speed_entropy;
  std::vector<std::optional<double>> w_rate_dot;  // beta0 dE/dt (drive term)

  // Gauge-continuity bookkeeping: snapshots sharing a chain id carry a
  // consistently aligned phase; residuals never straddle chains.
  std::vector<int> phase_chain;

  double snapshot_dt = 0.0;
  ThermoParams params;
};

/// Assembles the ledger: per-snapshot functionals analytically, time
/// derivatives of S, U, F by centered differences on the snapshot stride.
ThermoLedger law_residuals(const Trajectory& traj, const Potential& pot,
                           const ThermoParams& params);

/// Fills the feedback residual F'' + T0 d(S_int')/dt and the two speed
/// identities (helmholtz speed F'' vs beta0 d/dt(m<u^2> + 2<V>); entropy
/// speed T0 d(S_int')/dt vs m beta0 d<v^2>/dt) with second/centered
/// differences.  Needs at least 5 snapshots.
void feedback_and_speeds(ThermoLedger& ledger);

/// Sign pattern of d(S_int')/dt over the trajectory — the paper-level
/// qualitative probe of the classical minimum-entropy-production principle.
/// Informational; no pass/fail.
enum class ProductionTrend {
  identically_zero,
  monotone_decreasing,
  monotone_increasing,
  oscillatory,
  other,
};

struct ProductionProbe {
  ProductionTrend trend = ProductionTrend::other;
  int sign_changes = 0;
  double max_rate = 0.0;  // max |S_int_rate|
};

ProductionProbe minimum_entropy_production_probe(const ThermoLedger& ledger);

std::string to_string(ProductionTrend trend);

}  // namespace qwave
