#include "qwave/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwave/errors.hpp"

namespace qwave {

namespace {

constexpr double kEdgeMassLimit = 1e-6;

void check_packet_fits(const WaveFunction& wf, const char* who) {
  const double mass = edge_mass(wf);
  if (mass > kEdgeMassLimit) {
    std::ostringstream msg;
    msg << who << ": packet mass at the box boundary is " << mass
        << " (> 1e-6); enlarge the box or move the packet";
    throw ConfigError(msg.str());
  }
}

}  // namespace

WaveFunction gaussian_packet(double x0, double p0, double var0, GridPtr grid) {
  if (!(var0 > 0.0)) {
    throw ConfigError("gaussian_packet: var0 must be positive");
  }
  const double norm = std::pow(2.0 * std::numbers::pi * var0, -0.25);
  std::vector<cdouble> psi(grid->n);
  for (int j = 0; j < grid->n; ++j) {
    const double dxj = grid->x[j] - x0;
    const double amp = norm * std::exp(-dxj * dxj / (4.0 * var0));
    const double phase = p0 * grid->x[j];
    psi[j] = amp * cdouble(std::cos(phase), std::sin(phase));
  }
  WaveFunction wf = make_wavefunction(std::move(grid), std::move(psi), true);
  check_packet_fits(wf, "gaussian_packet");
  return wf;
}

WaveFunction ho_eigenstate(int n, double omega, GridPtr grid, double D) {
  if (n < 0) throw ConfigError("ho_eigenstate: n must be >= 0");
  if (!(omega > 0.0) || !(D > 0.0)) {
    throw ConfigError("ho_eigenstate: omega and D must be positive");
  }

  const double ell = std::sqrt(2.0 * D / omega);  // oscillator length
  // Resolution guard: the state's wavenumber content ~ sqrt(2n+1)/ell must
  // stay well below Nyquist, and the classical turning point well inside
  // the box.
  const double k_state = std::sqrt(2.0 * n + 1.0) / ell;
  const double turning_point = ell * std::sqrt(2.0 * n + 1.0);
  const double half_box = std::min(-grid->x_min, grid->x_max);
  if (k_state > 0.5 * grid->k_max() || turning_point > 0.8 * half_box) {
    std::ostringstream msg;
    msg << "ho_eigenstate: level n=" << n << " (omega=" << omega
        << ") is under-resolved on this grid";
    throw ConfigError(msg.str());
  }

  // Stable three-term recurrence on normalized Hermite functions
  // phi_0 = pi^{-1/4} exp(-xi^2/2),
  // phi_{k+1} = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1}.
  std::vector<cdouble> psi(grid->n);
  const double amp0 = std::pow(std::numbers::pi, -0.25) / std::sqrt(ell);
  for (int j = 0; j < grid->n; ++j) {
    const double xi = grid->x[j] / ell;
    double prev = 0.0;
    double cur = amp0 * std::exp(-0.5 * xi * xi);
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * xi * cur -
                          std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    psi[j] = cur;
  }
  return make_wavefunction(std::move(grid), std::move(psi), true);
}

WaveFunction coherent_state(cdouble alpha, double omega, GridPtr grid,
                            double D) {
  if (!(omega > 0.0) || !(D > 0.0)) {
    throw ConfigError("coherent_state: omega and D must be positive");
  }
  const double var0 = D / omega;  // ground-state width, rigid under motion
  const double x_c = 2.0 * std::sqrt(D / omega) * alpha.real();
  const double k_c = std::sqrt(omega / D) * alpha.imag();

  const double norm = std::pow(2.0 * std::numbers::pi * var0, -0.25);
  std::vector<cdouble> psi(grid->n);
  for (int j = 0; j < grid->n; ++j) {
    const double dxj = grid->x[j] - x_c;
    const double amp = norm * std::exp(-dxj * dxj / (4.0 * var0));
    const double phase = k_c * grid->x[j];
    psi[j] = amp * cdouble(std::cos(phase), std::sin(phase));
  }
  WaveFunction wf = make_wavefunction(std::move(grid), std::move(psi), true);
  check_packet_fits(wf, "coherent_state");
  return wf;
}

WaveFunction free_gaussian_at(double t, double x0, double p0, double var0,
                              GridPtr grid, double D) {
  if (!(var0 > 0.0) || !(D > 0.0)) {
    throw ConfigError("free_gaussian_at: var0 and D must be positive");
  }
  // Exact free solution: with gamma = var0 + i D t and
  // xi = x - x0 - 2 D p0 t,
  //   psi(x,t) = (2 pi var0)^{-1/4} sqrt(var0/gamma)
  //              * exp(-xi^2/(4 gamma) + i p0 x - i D p0^2 t),
  // so the position variance grows as var0 + (D t)^2 / var0.
  const cdouble gamma(var0, D * t);
  const cdouble prefactor =
      std::pow(2.0 * std::numbers::pi * var0, -0.25) * std::sqrt(var0 / gamma);
  const double drift = x0 + 2.0 * D * p0 * t;
  const double phase0 = -D * p0 * p0 * t;

  std::vector<cdouble> psi(grid->n);
  for (int j = 0; j < grid->n; ++j) {
    const double xi = grid->x[j] - drift;
    const cdouble exponent =
        -xi * xi / (4.0 * gamma) + cdouble(0.0, p0 * grid->x[j] + phase0);
    psi[j] = prefactor * std::exp(exponent);
  }
  WaveFunction wf = make_wavefunction(std::move(grid), std::move(psi), true);
  check_packet_fits(wf, "free_gaussian_at");
  return wf;
}

StateSpec StateSpec::gaussian(double x0, double p0, double var0) {
  StateSpec s;
  s.kind = Kind::gaussian;
  s.x0 = x0;
  s.p0 = p0;
  s.var0 = var0;
  return s;
}

StateSpec StateSpec::ho(int n, double omega) {
  StateSpec s;
  s.kind = Kind::ho_eigenstate;
  s.n = n;
  s.omega = omega;
  return s;
}

StateSpec StateSpec::coherent(cdouble alpha, double omega) {
  StateSpec s;
  s.kind = Kind::coherent;
  s.alpha = alpha;
  s.omega = omega;
  return s;
}

StateSpec StateSpec::free_gaussian(double t, double x0, double p0,
                                   double var0) {
  StateSpec s;
  s.kind = Kind::free_gaussian_at;
  s.t = t;
  s.x0 = x0;
  s.p0 = p0;
  s.var0 = var0;
  return s;
}

StateSpec StateSpec::superposition(std::vector<StateSpec> parts,
                                   std::vector<cdouble> coeffs) {
  StateSpec s;
  s.kind = Kind::superposition;
  s.components = std::move(parts);
  s.coeffs = std::move(coeffs);
  return s;
}

WaveFunction superposition(std::span<const StateSpec> specs,
                           std::span<const cdouble> coeffs, GridPtr grid,
                           double D) {
  if (specs.empty() || specs.size() != coeffs.size()) {
    throw ConfigError(
        "superposition: needs >= 1 component with matching coefficients");
  }
  std::vector<cdouble> acc(grid->n, cdouble(0.0, 0.0));
  for (size_t i = 0; i < specs.size(); ++i) {
    const WaveFunction part = build_state(specs[i], grid, D);
    for (int j = 0; j < grid->n; ++j) acc[j] += coeffs[i] * part.psi[j];
  }
  double nsq = 0.0;
  for (const cdouble& c : acc) nsq += std::norm(c);
  nsq *= grid->dx;
  if (nsq < 1e-12) {
    throw ConfigError("superposition: components cancel to the zero vector");
  }
  WaveFunction wf = make_wavefunction(std::move(grid), std::move(acc), true);
  check_packet_fits(wf, "superposition");
  return wf;
}

WaveFunction build_state(const StateSpec& spec, GridPtr grid, double D) {
  switch (spec.kind) {
    case StateSpec::Kind::gaussian:
      return gaussian_packet(spec.x0, spec.p0, spec.var0, std::move(grid));
    case StateSpec::Kind::ho_eigenstate:
      return ho_eigenstate(spec.n, spec.omega, std::move(grid), D);
    case StateSpec::Kind::coherent:
      return coherent_state(spec.alpha, spec.omega, std::move(grid), D);
    case StateSpec::Kind::free_gaussian_at:
      return free_gaussian_at(spec.t, spec.x0, spec.p0, spec.var0,
                              std::move(grid), D);
    case StateSpec::Kind::superposition:
      return superposition(spec.components, spec.coeffs, std::move(grid), D);
  }
  throw ConfigError("build_state: unknown state kind");
}

}  // namespace qwave
