#pragma once

#include <complex>
#include <vector>

#include "qwave/grid.hpp"

namespace qwave {

using cdouble = std::complex<double>;

/// Position-space pure state: complex amplitudes on a Grid1D with unit L2
/// norm (sum |psi_j|^2 dx = 1 within 1e-10).
struct WaveFunction {
  GridPtr grid;
  std::vector<cdouble> psi;
};

/// Momentum-space counterpart: values of the unitary Fourier transform on
/// the grid's wavenumber lattice; Parseval holds within 1e-10.
struct MomentumWave {
  GridPtr grid;
  std::vector<cdouble> phi;
};

/// sum |psi_j|^2 dx.
double norm_sq(const WaveFunction& wf);
double norm_sq(const MomentumWave& mw);

/// |psi_j|^2 samples.
std::vector<double> density(const WaveFunction& wf);
std::vector<double> density(const MomentumWave& mw);

/// Wraps amplitudes into a WaveFunction.  Validates the normalization
/// invariant, or rescales to exact unit norm when renormalize is set.
WaveFunction make_wavefunction(GridPtr grid, std::vector<cdouble> psi,
                               bool renormalize = false);

/// Probability mass in the outermost four cells on each side — the edge
/// monitor that stands in for "the box is effectively infinite".
double edge_mass(const WaveFunction& wf);

}  // namespace qwave
