#include "qwave/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/fourier.hpp"
#include "qwave/info.hpp"
#include "qwave/numerics.hpp"

namespace qwave {

namespace {

// Spectral building blocks, all derivatives applied to globally smooth
// fields (psi itself); quotients and masking happen pointwise afterwards.
struct SmoothDerivatives {
  std::vector<double> rho;     // |psi|^2
  std::vector<double> rho_p;   // rho'  = 2 Re(conj(psi) psi')
  std::vector<double> rho_pp;  // rho'' = 2 Re(conj(psi) psi'') + 2|psi'|^2
  std::vector<double> current; // Im(conj(psi) psi')  (j = 2D * current)
  double rho_max = 0.0;
  double rho_p_max = 0.0;
  double rho_pp_max = 0.0;
  double current_max = 0.0;
};

SmoothDerivatives smooth_derivatives(const WaveFunction& wf) {
  const Grid1D& g = *wf.grid;
  const std::vector<cdouble> psi_p = spectral_derivative(wf.psi, g, 1);
  const std::vector<cdouble> psi_pp = spectral_derivative(wf.psi, g, 2);

  SmoothDerivatives d;
  d.rho.resize(g.n);
  d.rho_p.resize(g.n);
  d.rho_pp.resize(g.n);
  d.current.resize(g.n);
  for (int j = 0; j < g.n; ++j) {
    const cdouble conj_psi = std::conj(wf.psi[j]);
    d.rho[j] = std::norm(wf.psi[j]);
    d.rho_p[j] = 2.0 * (conj_psi * psi_p[j]).real();
    d.rho_pp[j] = 2.0 * (conj_psi * psi_pp[j]).real() + 2.0 * std::norm(psi_p[j]);
    d.current[j] = (conj_psi * psi_p[j]).imag();
    d.rho_max = std::max(d.rho_max, d.rho[j]);
    d.rho_p_max = std::max(d.rho_p_max, std::abs(d.rho_p[j]));
    d.rho_pp_max = std::max(d.rho_pp_max, std::abs(d.rho_pp[j]));
    d.current_max = std::max(d.current_max, std::abs(d.current[j]));
  }
  return d;
}

enum class PointClass { direct, node_limit, masked };

// Far tails (density and every derivative at the FFT noise floor) are
// masked; interior low-density points with live derivative signals are
// kept, and exact zeros take the curvature limits of the quotients.
PointClass classify(const SmoothDerivatives& d, int j) {
  if (d.rho[j] >= numerics::quotient_floor_rel * d.rho_max) {
    return PointClass::direct;
  }
  const bool signal =
      std::abs(d.rho_p[j]) >= numerics::derivative_signal_rel * d.rho_p_max ||
      std::abs(d.rho_pp[j]) >= numerics::derivative_signal_rel * d.rho_pp_max ||
      std::abs(d.current[j]) >=
          numerics::derivative_signal_rel * d.current_max;
  if (!signal) return PointClass::masked;
  return d.rho[j] > 0.0 ? PointClass::direct : PointClass::node_limit;
}

}  // namespace

std::optional<std::vector<double>> unwrap_phase(const WaveFunction& wf,
                                                double D) {
  const Grid1D& g = *wf.grid;
  const std::vector<double> rho = density(wf);
  const double rho_max = *std::max_element(rho.begin(), rho.end());
  const double threshold = numerics::node_threshold_rel * rho_max;

  int first = -1;
  int last = -1;
  for (int j = 0; j < g.n; ++j) {
    if (rho[j] >= threshold) {
      if (first < 0) first = j;
      last = j;
    }
  }
  if (first < 0) return std::nullopt;
  // Support must be one contiguous block: interior gaps are nodes.
  for (int j = first; j <= last; ++j) {
    if (rho[j] < threshold) return std::nullopt;
  }

  std::vector<double> s(g.n);
  double acc = std::arg(wf.psi[first]);
  s[first] = 2.0 * D * acc;
  for (int j = first + 1; j <= last; ++j) {
    const double step = std::arg(wf.psi[j] * std::conj(wf.psi[j - 1]));
    // A resolved smooth phase moves much less than pi/2 per cell; larger
    // jumps mean an (unresolvable) node and no well-defined phase.
    if (std::abs(step) > numerics::phase_jump_limit) return std::nullopt;
    acc += step;
    s[j] = 2.0 * D * acc;
  }
  // Constant extension into the tails; all uses are rho-weighted.
  for (int j = 0; j < first; ++j) s[j] = s[first];
  for (int j = last + 1; j < g.n; ++j) s[j] = s[last];
  return s;
}

HydroFields decompose(const WaveFunction& wf, double D) {
  if (!(D > 0.0)) throw std::invalid_argument("decompose: D must be positive");
  const Grid1D& g = *wf.grid;
  const SmoothDerivatives d = smooth_derivatives(wf);

  HydroFields f;
  f.grid = wf.grid;
  f.D = D;
  f.rho = d.rho;
  f.u.assign(g.n, 0.0);
  f.v.assign(g.n, 0.0);
  f.du_dx.assign(g.n, 0.0);
  f.q_pot.assign(g.n, 0.0);
  f.b_drift.assign(g.n, 0.0);

  double sum_u = 0.0, sum_u_sq = 0.0, sum_v = 0.0, sum_v_sq = 0.0;
  double sum_uv = 0.0, sum_du = 0.0, sum_q = 0.0;

  for (int j = 0; j < g.n; ++j) {
    switch (classify(d, j)) {
      case PointClass::direct: {
        const double inv_rho = 1.0 / d.rho[j];
        const double u = D * d.rho_p[j] * inv_rho;
        const double v = 2.0 * D * d.current[j] * inv_rho;
        const double du =
            D * (d.rho_pp[j] * inv_rho - (d.rho_p[j] * inv_rho) *
                                             (d.rho_p[j] * inv_rho));
        f.u[j] = u;
        f.v[j] = v;
        f.du_dx[j] = du;
        f.q_pot[j] = 0.5 * u * u + D * du;
        f.b_drift[j] = u + v;
        sum_u += d.rho[j] * u;
        sum_u_sq += d.rho[j] * u * u;
        sum_v += d.rho[j] * v;
        sum_v_sq += d.rho[j] * v * v;
        sum_uv += d.rho[j] * u * v;
        sum_du += d.rho[j] * du;
        sum_q += d.rho[j] * f.q_pot[j];
        break;
      }
      case PointClass::node_limit: {
        // Simple-node limits: rho u^2 -> 2 D^2 rho'', rho u' -> -D rho'',
        // every current-weighted integrand -> 0, rho Q -> 0.
        sum_u_sq += 2.0 * D * D * d.rho_pp[j];
        sum_du += -D * d.rho_pp[j];
        break;
      }
      case PointClass::masked:
        break;
    }
  }

  const double dx = g.dx;
  f.mean_u = sum_u * dx;
  f.mean_u_sq = sum_u_sq * dx;
  f.mean_v = sum_v * dx;
  f.mean_v_sq = sum_v_sq * dx;
  f.mean_uv = sum_uv * dx;
  f.mean_du = sum_du * dx;
  f.mean_q = sum_q * dx;

  f.s_phase = unwrap_phase(wf, D);
  return f;
}

VelocityVariances velocity_variances(const HydroFields& fields) {
  VelocityVariances vv;
  vv.var_u = fields.mean_u_sq;  // <u> = 0 under decaying boundary data
  vv.var_v = fields.mean_v_sq - fields.mean_v * fields.mean_v;
  vv.mean_v = fields.mean_v;
  return vv;
}

double FisherIdentityResiduals::worst() const {
  return std::max(std::max(std::abs(osmotic_vs_fisher),
                           std::abs(quantum_potential)),
                  std::max(std::abs(osmotic_divergence),
                           std::abs(momentum_split)));
}

FisherIdentityResiduals fisher_identities(const WaveFunction& wf, double D,
                                          double tol) {
  const HydroFields f = decompose(wf, D);
  const double fisher = fisher_information(f.rho, *wf.grid);
  const Moments mom = moments(wf);

  FisherIdentityResiduals r;
  r.osmotic_vs_fisher = D * D * fisher - f.mean_u_sq;
  r.quantum_potential = 0.5 * D * D * fisher + f.mean_q;
  r.osmotic_divergence = f.mean_u_sq + D * f.mean_du;
  // <P^2> with P = -i (2mD) d/dx, m = 1; <(P - mv)^2> = <P^2> - m^2 <v^2>.
  const double mean_k_sq = mom.var_p + mom.mean_p * mom.mean_p;
  r.momentum_split = 4.0 * D * D * mean_k_sq - f.mean_v_sq - D * D * fisher;

  if (r.worst() > tol) {
    std::ostringstream msg;
    msg << "fisher_identities: identity violation (osmotic_vs_fisher="
        << r.osmotic_vs_fisher << ", quantum_potential=" << r.quantum_potential
        << ", osmotic_divergence=" << r.osmotic_divergence
        << ", momentum_split=" << r.momentum_split << ", tol=" << tol << ")";
    throw NumericsError(msg.str());
  }
  return r;
}

std::vector<double> probability_current(const WaveFunction& wf, double D) {
  const Grid1D& g = *wf.grid;
  const std::vector<cdouble> psi_p = spectral_derivative(wf.psi, g, 1);
  std::vector<double> j(g.n);
  for (int i = 0; i < g.n; ++i) {
    j[i] = 2.0 * D * (std::conj(wf.psi[i]) * psi_p[i]).imag();
  }
  return j;
}

std::vector<double> current_divergence(const WaveFunction& wf, double D) {
  const Grid1D& g = *wf.grid;
  const std::vector<cdouble> psi_pp = spectral_derivative(wf.psi, g, 2);
  std::vector<double> div(g.n);
  for (int i = 0; i < g.n; ++i) {
    div[i] = 2.0 * D * (std::conj(wf.psi[i]) * psi_pp[i]).imag();
  }
  return div;
}

std::vector<double> fokker_planck_rhs(const WaveFunction& wf, double D) {
  const Grid1D& g = *wf.grid;
  const SmoothDerivatives d = smooth_derivatives(wf);
  // b rho = u rho + v rho = D rho' + j, all smooth products; its divergence
  // is taken spectrally so the comparison against -div(v rho) genuinely
  // cross-checks the spectral algebra.
  std::vector<double> b_rho(g.n);
  for (int i = 0; i < g.n; ++i) {
    b_rho[i] = D * d.rho_p[i] + 2.0 * D * d.current[i];
  }
  const std::vector<double> d_brho = spectral_derivative(b_rho, g, 1);
  std::vector<double> rhs(g.n);
  for (int i = 0; i < g.n; ++i) {
    rhs[i] = D * d.rho_pp[i] - d_brho[i];
  }
  return rhs;
}

}  // namespace qwave
