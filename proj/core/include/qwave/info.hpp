#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwave/wavefunction.hpp"

namespace qwave {

// Information functionals are evaluated in the dimensionless convention
// 2mD = 1 (hbar = 1): momentum means the wavenumber lattice, and the
// classical momentum p_cl is the phase gradient (arg psi)'.  In this
// convention every relation below is parameter-free mathematics.

/// Differential Shannon entropy -\int rho ln(rho) dx in nats.  Points with
/// rho below the relative entropy floor contribute 0.
double shannon_entropy(std::span<const double> density, const Grid1D& grid);

/// Fisher information \int (rho')^2/rho dx with a spectral derivative.
/// Near-node samples are kept via the curvature limit 2*rho''; far-tail
/// samples below the quotient floor contribute 0.
double fisher_information(std::span<const double> density, const Grid1D& grid);

struct Moments {
  double mean_x = 0.0;
  double var_x = 0.0;
  double mean_p = 0.0;
  double var_p = 0.0;
};

/// Position moments against rho, momentum moments against |F psi|^2 on the
/// wavenumber lattice (agrees with the -i d/dx operator route).
Moments moments(const WaveFunction& wf);

/// Variance of p_cl = (arg psi)' under rho, computed from the probability
/// current (no phase unwrap).  Zero for any real state.
double classical_momentum_variance(const WaveFunction& wf);

/// Signed slack of every audited relation (>= 0 when the relation holds)
/// plus the functionals entering them.
struct InfoReport {
  double s_q = 0.0;
  double s_p = 0.0;
  double fisher = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double var_p_cl = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
  double entropy_power_product = 0.0;  // (1/2 pi e) exp(S_q + S_p)

  double slack_entropic_sum = 0.0;   // S_q + S_p - (1 + ln pi)
  double slack_power_outer = 0.0;    // dX dP - entropy_power_product
  double slack_power_inner = 0.0;    // entropy_power_product - 1/2
  double slack_max_entropy = 0.0;    // (1/2) ln(2 pi e var_x) - S_q
  double slack_stam_upper = 0.0;     // F - 2 pi e exp(-2 S_q)
  double slack_stam_lower = 0.0;     // 2 pi e exp(-2 S_q) - 1/var_x
  double slack_sharp_upper = 0.0;    // 4 var_p - F
  double slack_split = 0.0;          // var_p - var_p_cl
  double sharp_mid_residual = 0.0;   // F - 4 (var_p - var_p_cl), signed

  /// (name, slack) pairs for the relations that are inequalities.
  std::vector<std::pair<std::string, double>> inequality_slacks() const;
};

/// Fills an InfoReport and enforces every inequality: any slack below
/// -tol_slack throws NumericsError naming the failed relation.
InfoReport audit_inequalities(const WaveFunction& wf,
                              double tol_slack = 1e-7);

}  // namespace qwave
