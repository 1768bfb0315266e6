#pragma once

#include <vector>

#include "qwave/wavefunction.hpp"

namespace qwave {

// Units: all defaults assume hbar = m = 1, i.e. D = hbar/2m = 1/2.  Builders
// that depend on hbar take D explicitly so the convention stays visible.

/// Gaussian packet psi(x) = (2*pi*var0)^{-1/4}
///   * exp(-(x-x0)^2/(4*var0) + i*p0*x).
/// Position density is Gaussian with variance var0; p0 is a wavenumber.
WaveFunction gaussian_packet(double x0, double p0, double var0, GridPtr grid);

/// Real Hermite-function eigenstate of V = (1/2) omega^2 x^2 (m = 1) with
/// energy 2*D*omega*(n + 1/2).  Built by the stable three-term recurrence
/// on normalized functions.  Rejects states the grid cannot resolve.
WaveFunction ho_eigenstate(int n, double omega, GridPtr grid, double D = 0.5);

/// Displaced ground state of the omega-trap.  With D = 1/2:
/// <X> = sqrt(2/omega) Re(alpha), <P> = sqrt(2*omega) Im(alpha),
/// energy omega (|alpha|^2 + 1/2).
WaveFunction coherent_state(cdouble alpha, double omega, GridPtr grid,
                            double D = 0.5);

/// Exact free-evolution time slice of gaussian_packet(x0, p0, var0):
/// position variance var0 + (D t)^2 / var0, drift velocity 2 D p0.
WaveFunction free_gaussian_at(double t, double x0, double p0, double var0,
                              GridPtr grid, double D = 0.5);

/// Declarative state description; the in-memory form of a scenario
/// config's initial_state block.
struct StateSpec {
  enum class Kind {
    gaussian,
    ho_eigenstate,
    coherent,
    free_gaussian_at,
    superposition,
  };

  Kind kind = Kind::gaussian;
  double x0 = 0.0;
  double p0 = 0.0;
  double var0 = 0.5;
  int n = 0;          // ho_eigenstate level
  double omega = 1.0; // trap frequency
  cdouble alpha{0.0, 0.0};
  double t = 0.0;     // free_gaussian_at time slice
  std::vector<StateSpec> components;  // superposition members
  std::vector<cdouble> coeffs;        // superposition coefficients

  static StateSpec gaussian(double x0, double p0, double var0);
  static StateSpec ho(int n, double omega);
  static StateSpec coherent(cdouble alpha, double omega);
  static StateSpec free_gaussian(double t, double x0, double p0, double var0);
  static StateSpec superposition(std::vector<StateSpec> parts,
                                 std::vector<cdouble> coeffs);
};

/// Normalized linear combination of component states on a shared grid.
WaveFunction superposition(std::span<const StateSpec> specs,
                           std::span<const cdouble> coeffs, GridPtr grid,
                           double D = 0.5);

/// Builds any StateSpec.
WaveFunction build_state(const StateSpec& spec, GridPtr grid, double D = 0.5);

}  // namespace qwave
