#include "qwave/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/info.hpp"
#include "qwave/numerics.hpp"

namespace qwave {

namespace {

void check_params(const ThermoParams& p) {
  if (!(p.D > 0.0) || !(p.m > 0.0) || !(p.beta0 > 0.0)) {
    throw std::invalid_argument("ThermoParams: D, m, beta0 must be positive");
  }
}

// V_smol = -m beta0 (s + D ln rho); ln rho is clamped at the entropy floor
// so the constant-extended tails stay finite (they carry no weight).
SmoluchowskiPotential smoluchowski_from(const HydroFields& fields,
                                        const std::vector<double>& s,
                                        const ThermoParams& params) {
  const Grid1D& g = *fields.grid;
  const double rho_max =
      *std::max_element(fields.rho.begin(), fields.rho.end());
  const double floor = numerics::entropy_floor_rel * rho_max;
  const double ln_floor = std::log(floor);

  SmoluchowskiPotential result;
  result.values.resize(g.n);
  double mean = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double ln_rho =
        fields.rho[j] > floor ? std::log(fields.rho[j]) : ln_floor;
    result.values[j] =
        -params.m * params.beta0 * (s[j] + params.D * ln_rho);
    mean += fields.rho[j] * result.values[j];
  }
  result.mean = mean * g.dx;
  return result;
}

double mean_phase(const HydroFields& fields, const std::vector<double>& s) {
  double sum = 0.0;
  for (int j = 0; j < fields.grid->n; ++j) sum += fields.rho[j] * s[j];
  return sum * fields.grid->dx;
}

}  // namespace

EntropyRates entropy_rates(const HydroFields& fields,
                           const ThermoParams& params) {
  check_params(params);
  EntropyRates r;
  r.s_int_rate = fields.mean_v_sq / params.D;
  r.s_ext_rate = -(fields.mean_uv + fields.mean_v_sq) / params.D;
  r.s_rate = r.s_int_rate + r.s_ext_rate;  // = -<u v>/D
  return r;
}

EntropyRates entropy_rates(const WaveFunction& wf, const ThermoParams& params) {
  return entropy_rates(decompose(wf, params.D), params);
}

SmoluchowskiPotential smoluchowski_potential(const WaveFunction& wf,
                                             const ThermoParams& params) {
  check_params(params);
  const HydroFields fields = decompose(wf, params.D);
  if (!fields.s_phase) {
    throw NodalStateError(
        "smoluchowski_potential: state has nodes, the phase (and V, U, F) "
        "is undefined");
  }
  return smoluchowski_from(fields, *fields.s_phase, params);
}

double helmholtz(const WaveFunction& wf, const ThermoParams& params,
                 double tol) {
  check_params(params);
  const HydroFields fields = decompose(wf, params.D);
  if (!fields.s_phase) {
    throw NodalStateError("helmholtz: state has nodes, F is undefined");
  }
  const double U = smoluchowski_from(fields, *fields.s_phase, params).mean;
  const double S = shannon_entropy(fields.rho, *wf.grid);
  const double f_thermo = U - params.T0() * S;
  const double f_phase = -params.m * params.beta0 *
                         mean_phase(fields, *fields.s_phase);
  if (std::abs(f_thermo - f_phase) > tol) {
    std::ostringstream msg;
    msg << "helmholtz: U - T0 S = " << f_thermo << " disagrees with "
        << "-m beta0 <s> = " << f_phase << " beyond tol " << tol;
    throw NumericsError(msg.str());
  }
  return f_thermo;
}

WorkHeatRates work_and_heat_rates(const WaveFunction& wf, const Potential& pot,
                                  const ThermoParams& params, double t) {
  check_params(params);
  WorkHeatRates r;
  r.w_rate = params.beta0 * energy(wf, pot, t, params.D, params.m);
  r.q_rate = params.T0() * entropy_rates(wf, params).s_ext_rate;
  return r;
}

ThermoLedger law_residuals(const Trajectory& traj, const Potential& pot,
                           const ThermoParams& params) {
  check_params(params);
  const int n = static_cast<int>(traj.snapshots.size());
  if (n < 2) {
    throw std::invalid_argument("law_residuals: need at least 2 snapshots");
  }

  ThermoLedger led;
  led.times = traj.times;
  led.snapshot_dt = traj.snapshot_dt();
  led.params = params;
  led.S.resize(n);
  led.S_rate.resize(n);
  led.S_int_rate.resize(n);
  led.S_ext_rate.resize(n);
  led.E.resize(n);
  led.W_rate.resize(n);
  led.Q_rate.resize(n);
  led.mean_u_sq.resize(n);
  led.var_v.resize(n);
  led.mean_v_sq.resize(n);
  led.mean_pot.resize(n);
  led.U.assign(n, std::nullopt);
  led.F.assign(n, std::nullopt);
  led.res_first_law.assign(n, std::nullopt);
  led.res_extremum.assign(n, std::nullopt);
  led.res_feedback.assign(n, std::nullopt);
  led.res_speed_helmholtz.assign(n, std::nullopt);
  led.res_speed_entropy.assign(n, std::nullopt);
  led.w_rate_dot.assign(n, std::nullopt);
  led.phase_chain.assign(n, -1);

  const double T0 = params.T0();
  // 2 pi * 2D: the phase ambiguity quantum of s = 2D arg(psi).
  const double s_quantum = 4.0 * std::numbers::pi * params.D;

  std::vector<double> prev_s;
  bool prev_defined = false;
  int chain = -1;

  for (int i = 0; i < n; ++i) {
    const WaveFunction& wf = traj.snapshots[i];
    const double t = traj.times[i];
    const HydroFields fields = decompose(wf, params.D);

    led.S[i] = shannon_entropy(fields.rho, *wf.grid);
    const EntropyRates rates = entropy_rates(fields, params);
    led.S_rate[i] = rates.s_rate;
    led.S_int_rate[i] = rates.s_int_rate;
    led.S_ext_rate[i] = rates.s_ext_rate;
    led.E[i] = energy(wf, pot, t, params.D, params.m);
    led.W_rate[i] = params.beta0 * led.E[i];
    led.Q_rate[i] = T0 * rates.s_ext_rate;
    led.mean_u_sq[i] = fields.mean_u_sq;
    led.mean_v_sq[i] = fields.mean_v_sq;
    led.var_v[i] = fields.mean_v_sq - fields.mean_v * fields.mean_v;

    const std::vector<double> v_ext = pot.sample(*wf.grid, t);
    double mean_pot = 0.0;
    for (int j = 0; j < wf.grid->n; ++j) mean_pot += fields.rho[j] * v_ext[j];
    led.mean_pot[i] = mean_pot * wf.grid->dx;

    if (fields.s_phase) {
      std::vector<double> s = *fields.s_phase;
      if (prev_defined) {
        // Temporal gauge continuity: the per-snapshot unwrap anchors at a
        // principal phase which may hop by 2 pi between snapshots; re-anchor
        // at the density maximum so <s>(t) stays smooth for the
        // finite-difference derivatives.
        int j_star = 0;
        for (int j = 1; j < wf.grid->n; ++j) {
          if (fields.rho[j] > fields.rho[j_star]) j_star = j;
        }
        const double hop =
            std::round((s[j_star] - prev_s[j_star]) / s_quantum);
        if (hop != 0.0) {
          for (double& value : s) value -= hop * s_quantum;
        }
      } else {
        ++chain;
      }
      led.phase_chain[i] = chain;
      const SmoluchowskiPotential smol = smoluchowski_from(fields, s, params);
      led.U[i] = smol.mean;
      led.F[i] = -params.m * params.beta0 * mean_phase(fields, s);
      prev_s = std::move(s);
      prev_defined = true;
    } else {
      prev_defined = false;
      prev_s.clear();
    }
  }

  const double h = led.snapshot_dt;
  for (int i = 1; i + 1 < n; ++i) {
    const bool triple = led.U[i - 1] && led.U[i] && led.U[i + 1] &&
                        led.phase_chain[i - 1] == led.phase_chain[i + 1] &&
                        led.phase_chain[i - 1] >= 0;
    led.w_rate_dot[i] = (led.W_rate[i + 1] - led.W_rate[i - 1]) / (2.0 * h);
    if (!triple) continue;
    const double u_dot = (*led.U[i + 1] - *led.U[i - 1]) / (2.0 * h);
    const double f_dot = (*led.F[i + 1] - *led.F[i - 1]) / (2.0 * h);
    led.res_first_law[i] = u_dot - led.W_rate[i] - led.Q_rate[i];
    led.res_extremum[i] = f_dot - led.W_rate[i] + T0 * led.S_int_rate[i];
  }
  return led;
}

void feedback_and_speeds(ThermoLedger& ledger) {
  const int n = static_cast<int>(ledger.times.size());
  if (n < 5) {
    throw std::invalid_argument("feedback_and_speeds: need >= 5 snapshots");
  }
  const double h = ledger.snapshot_dt;
  const ThermoParams& p = ledger.params;
  const double T0 = p.T0();

  for (int i = 1; i + 1 < n; ++i) {
    const bool triple =
        ledger.F[i - 1] && ledger.F[i] && ledger.F[i + 1] &&
        ledger.phase_chain[i - 1] == ledger.phase_chain[i + 1] &&
        ledger.phase_chain[i - 1] >= 0;
    const double s_int_dot =
        (ledger.S_int_rate[i + 1] - ledger.S_int_rate[i - 1]) / (2.0 * h);
    const double v_sq_dot =
        (ledger.mean_v_sq[i + 1] - ledger.mean_v_sq[i - 1]) / (2.0 * h);
    ledger.res_speed_entropy[i] = T0 * s_int_dot - p.m * p.beta0 * v_sq_dot;
    if (!triple) continue;
    const double f_ddot =
        (*ledger.F[i + 1] - 2.0 * *ledger.F[i] + *ledger.F[i - 1]) / (h * h);
    ledger.res_feedback[i] = f_ddot + T0 * s_int_dot;
    const double drive_dot =
        (p.m * ledger.mean_u_sq[i + 1] + 2.0 * ledger.mean_pot[i + 1] -
         p.m * ledger.mean_u_sq[i - 1] - 2.0 * ledger.mean_pot[i - 1]) /
        (2.0 * h);
    ledger.res_speed_helmholtz[i] = f_ddot - p.beta0 * drive_dot;
  }
}

ProductionProbe minimum_entropy_production_probe(const ThermoLedger& ledger) {
  ProductionProbe probe;
  const int n = static_cast<int>(ledger.S_int_rate.size());
  for (double rate : ledger.S_int_rate) {
    probe.max_rate = std::max(probe.max_rate, std::abs(rate));
  }
  if (probe.max_rate < 1e-10 || n < 3) {
    probe.trend = ProductionTrend::identically_zero;
    return probe;
  }

  const double h = ledger.snapshot_dt;
  std::vector<double> deriv;
  deriv.reserve(n - 2);
  double deriv_max = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    deriv.push_back(
        (ledger.S_int_rate[i + 1] - ledger.S_int_rate[i - 1]) / (2.0 * h));
    deriv_max = std::max(deriv_max, std::abs(deriv.back()));
  }

  const double deadband = 1e-3 * deriv_max;
  int last_sign = 0;
  bool any_positive = false;
  bool any_negative = false;
  for (double d : deriv) {
    if (std::abs(d) <= deadband) continue;
    const int sign = d > 0.0 ? 1 : -1;
    (sign > 0 ? any_positive : any_negative) = true;
    if (last_sign != 0 && sign != last_sign) ++probe.sign_changes;
    last_sign = sign;
  }

  if (last_sign == 0) {
    probe.trend = ProductionTrend::other;  // constant, non-zero production
  } else if (probe.sign_changes == 0) {
    probe.trend = any_negative ? ProductionTrend::monotone_decreasing
                               : ProductionTrend::monotone_increasing;
  } else if (probe.sign_changes >= 2) {
    probe.trend = ProductionTrend::oscillatory;
  } else {
    probe.trend = ProductionTrend::other;
  }
  return probe;
}

std::string to_string(ProductionTrend trend) {
  switch (trend) {
    case ProductionTrend::identically_zero: return "identically zero";
    case ProductionTrend::monotone_decreasing: return "monotone-decreasing";
    case ProductionTrend::monotone_increasing: return "monotone-increasing";
    case ProductionTrend::oscillatory: return "oscillatory";
    case ProductionTrend::other: return "other";
  }
  return "other";
}

}  // namespace qwave
