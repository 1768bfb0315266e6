#include "qwave/info.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/fourier.hpp"
#include "qwave/hydro.hpp"
#include "qwave/numerics.hpp"

namespace qwave {

namespace {

void check_density(std::span<const double> density, double cell,
                   const char* who) {
  double total = 0.0;
  for (double value : density) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument(std::string(who) + ": non-finite density");
    }
    if (value < -1e-12) {
      std::ostringstream msg;
      msg << who << ": negative density sample " << value;
      throw NumericsError(msg.str());
    }
    total += value;
  }
  total *= cell;
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << who << ": density integrates to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

double entropy_with_cell(std::span<const double> density, double cell) {
  const double rho_max = *std::max_element(density.begin(), density.end());
  const double floor = numerics::entropy_floor_rel * rho_max;
  double sum = 0.0;
  for (double rho : density) {
    if (rho > floor) sum -= rho * std::log(rho);
  }
  return sum * cell;
}

}  // namespace

double shannon_entropy(std::span<const double> density, const Grid1D& grid) {
  if (static_cast<int>(density.size()) != grid.n) {
    throw std::invalid_argument("shannon_entropy: length mismatch");
  }
  check_density(density, grid.dx, "shannon_entropy");
  return entropy_with_cell(density, grid.dx);
}

double fisher_information(std::span<const double> density,
                          const Grid1D& grid) {
  if (static_cast<int>(density.size()) != grid.n) {
    throw std::invalid_argument("fisher_information: length mismatch");
  }
  check_density(density, grid.dx, "fisher_information");

  const std::vector<double> rho_p = spectral_derivative(density, grid, 1);
  const std::vector<double> rho_pp = spectral_derivative(density, grid, 2);

  const double rho_max = *std::max_element(density.begin(), density.end());
  double rho_p_max = 0.0, rho_pp_max = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    rho_p_max = std::max(rho_p_max, std::abs(rho_p[j]));
    rho_pp_max = std::max(rho_pp_max, std::abs(rho_pp[j]));
  }

  const double rho_floor = numerics::quotient_floor_rel * rho_max;
  double sum = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double rho = density[j];
    if (rho >= rho_floor) {
      sum += rho_p[j] * rho_p[j] / rho;
      continue;
    }
    const bool signal =
        std::abs(rho_p[j]) >= numerics::derivative_signal_rel * rho_p_max ||
        std::abs(rho_pp[j]) >= numerics::derivative_signal_rel * rho_pp_max;
    if (!signal) continue;  // far tail at the FFT noise floor
    if (rho > 0.0) {
      sum += rho_p[j] * rho_p[j] / rho;
    } else {
      // Exact node sample: (rho')^2/rho tends to 2 rho'' across a simple
      // zero, keeping the integrand (and e.g. F = 6 for the first excited
      // oscillator level) intact.
      sum += std::max(2.0 * rho_pp[j], 0.0);
    }
  }
  return sum * grid.dx;
}

Moments moments(const WaveFunction& wf) {
  const Grid1D& g = *wf.grid;
  Moments m;

  double sum_x = 0.0, sum_xx = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double rho = std::norm(wf.psi[j]);
    sum_x += rho * g.x[j];
    sum_xx += rho * g.x[j] * g.x[j];
  }
  m.mean_x = sum_x * g.dx;
  m.var_x = sum_xx * g.dx - m.mean_x * m.mean_x;

  const MomentumWave mw = to_momentum(wf);
  const double dk = g.dk();
  double sum_k = 0.0, sum_kk = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double rho_k = std::norm(mw.phi[j]);
    sum_k += rho_k * g.k[j];
    sum_kk += rho_k * g.k[j] * g.k[j];
  }
  m.mean_p = sum_k * dk;
  m.var_p = sum_kk * dk - m.mean_p * m.mean_p;
  return m;
}

double classical_momentum_variance(const WaveFunction& wf) {
  // p_cl = (arg psi)' equals the current velocity at 2mD = 1; the current
  // route needs no phase unwrap and is exact across nodes.
  const HydroFields f = decompose(wf, 0.5);
  return f.mean_v_sq - f.mean_v * f.mean_v;
}

std::vector<std::pair<std::string, double>> InfoReport::inequality_slacks()
    const {
  return {
      {"entropic_sum", slack_entropic_sum},
      {"power_outer", slack_power_outer},
      {"power_inner", slack_power_inner},
      {"max_entropy", slack_max_entropy},
      {"stam_upper", slack_stam_upper},
      {"stam_lower", slack_stam_lower},
      {"sharp_upper", slack_sharp_upper},
      {"momentum_split", slack_split},
  };
}

InfoReport audit_inequalities(const WaveFunction& wf, double tol_slack) {
  const Grid1D& g = *wf.grid;
  const std::vector<double> rho = density(wf);
  const MomentumWave mw = to_momentum(wf);
  const std::vector<double> rho_k = density(mw);

  InfoReport r;
  r.s_q = shannon_entropy(rho, g);
  r.s_p = entropy_with_cell(rho_k, g.dk());
  r.fisher = fisher_information(rho, g);

  const Moments m = moments(wf);
  r.mean_x = m.mean_x;
  r.var_x = m.var_x;
  r.mean_p = m.mean_p;
  r.var_p = m.var_p;
  r.var_p_cl = classical_momentum_variance(wf);

  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  r.entropy_power_product = std::exp(r.s_q + r.s_p) / two_pi_e;

  const double dx_dp = std::sqrt(r.var_x * r.var_p);
  r.slack_entropic_sum = r.s_q + r.s_p - (1.0 + std::log(std::numbers::pi));
  r.slack_power_outer = dx_dp - r.entropy_power_product;
  r.slack_power_inner = r.entropy_power_product - 0.5;
  r.slack_max_entropy = 0.5 * std::log(two_pi_e * r.var_x) - r.s_q;
  const double stam_mid = two_pi_e * std::exp(-2.0 * r.s_q);
  r.slack_stam_upper = r.fisher - stam_mid;
  r.slack_stam_lower = stam_mid - 1.0 / r.var_x;
  r.slack_sharp_upper = 4.0 * r.var_p - r.fisher;
  r.slack_split = r.var_p - r.var_p_cl;
  r.sharp_mid_residual = r.fisher - 4.0 * (r.var_p - r.var_p_cl);

  for (const auto& [name, slack] : r.inequality_slacks()) {
    if (slack < -tol_slack) {
      std::ostringstream msg;
      msg << "audit_inequalities: relation '" << name
          << "' violated (slack = " << slack << ", tol = " << tol_slack
          << "); this indicates a numerics bug";
      throw NumericsError(msg.str());
    }
  }
  return r;
}

}  // namespace qwave
