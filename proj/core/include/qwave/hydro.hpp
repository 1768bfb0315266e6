#pragma once

#include <optional>
#include <vector>

#include "qwave/wavefunction.hpp"

namespace qwave {

/// Madelung fields of a state psi = rho^{1/2} exp(i s / 2D):
///   rho     probability density |psi|^2
///   u       osmotic velocity  D (ln rho)'          (rho'-quotient form)
///   v       current velocity  2D Im(conj(psi) psi') / rho  (= s')
///   q_pot   quantum potential (1/2) u^2 + D u'
///   b_drift u + v, the Fokker-Planck drift
///   du_dx   D (rho''/rho - (rho'/rho)^2), the u-gradient entering q_pot
///   s_phase phase s, present only for nodeless states (continuous unwrap
///           anchored at the leftmost point of the density support)
///
/// Field arrays are zero on masked points (density below the quotient
/// floor with no derivative signal).  All rho-weighted moments are
/// evaluated with node-safe quotient integrands during decomposition and
/// stored below; prefer them over re-integrating the masked arrays.
struct HydroFields {
  GridPtr grid;
  double D = 0.5;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> q_pot;
  std::vector<double> b_drift;
  std::vector<double> du_dx;
  std::optional<std::vector<double>> s_phase;

  // rho-weighted moments (node-safe integrals, not array sums).
  double mean_u = 0.0;    // <u>, vanishes with decaying boundary data
  double mean_u_sq = 0.0; // <u^2>
  double mean_v = 0.0;    // <v>
  double mean_v_sq = 0.0; // <v^2>
  double mean_uv = 0.0;   // <u v>
  double mean_du = 0.0;   // <u'>
  double mean_q = 0.0;    // <Q>
};

/// Velocity-field spreads; m^2 (var_u + var_v) equals the momentum
/// variance (Delta P)^2.
struct VelocityVariances {
  double var_u = 0.0;
  double var_v = 0.0;
  double mean_v = 0.0;
};

HydroFields decompose(const WaveFunction& wf, double D);

/// var_u = <u^2> (since <u> = 0), var_v = <v^2> - <v>^2.
VelocityVariances velocity_variances(const HydroFields& fields);

/// Residuals of the osmotic/Fisher identities (m = 1):
///   osmotic_vs_fisher    D^2 F(rho) - <u^2>
///   quantum_potential    (D^2/2) F(rho) + <Q>
///   osmotic_divergence   <u^2> + D <u'>
///   momentum_split       (<P^2> - m^2 <v^2>) - m^2 D^2 F(rho)
/// All vanish for exact arithmetic; throws NumericsError when any residual
/// exceeds tol.
struct FisherIdentityResiduals {
  double osmotic_vs_fisher = 0.0;
  double quantum_potential = 0.0;
  double osmotic_divergence = 0.0;
  double momentum_split = 0.0;
  double worst() const;
};

FisherIdentityResiduals fisher_identities(const WaveFunction& wf, double D,
                                          double tol = 1e-6);

/// Probability current j = 2D Im(conj(psi) psi') = v*rho (smooth route, no
/// division).
std::vector<double> probability_current(const WaveFunction& wf, double D);

/// div(v rho) = 2D Im(conj(psi) psi'') — the continuity-equation flux term
/// computed without quotients.
std::vector<double> current_divergence(const WaveFunction& wf, double D);

/// Right-hand side D*Lap(rho) - div(b rho) of the Fokker-Planck form; with
/// b = u + v this equals -div(v rho) identically.
std::vector<double> fokker_planck_rhs(const WaveFunction& wf, double D);

/// Phase s = 2D * unwrap(arg psi), or nullopt when the state has nodes
/// (split density support or an unresolvable phase jump).
std::optional<std::vector<double>> unwrap_phase(const WaveFunction& wf,
                                                double D);

}  // namespace qwave
