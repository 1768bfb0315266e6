#pragma once

#include <memory>
#include <span>
#include <vector>

namespace qwave {

/// Uniform periodic spatial lattice together with its conjugate wavenumber
/// lattice.  x samples are x_min + j*dx for j = 0..n-1 (x_max excluded);
/// k carries the n frequencies 2*pi*m/(n*dx), m in {-n/2,...,n/2-1}, stored
/// in FFT order to match the transform convention.  Immutable after
/// construction; share via GridPtr.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  int n = 0;
  std::vector<double> x;
  std::vector<double> k;

  double length() const { return x_max - x_min; }
  double dk() const;
  double k_max() const;  // Nyquist magnitude pi/dx
};

using GridPtr = std::shared_ptr<const Grid1D>;

/// Builds the lattice.  n must be a power of two, n >= 8, and x_max > x_min.
GridPtr make_grid(double x_min, double x_max, int n);

/// Rectangle-rule integral sum(f_j)*dx — exact for periodic band-limited
/// integrands, spectrally accurate for decayed tails.  Rejects NaN/Inf.
double quadrature(std::span<const double> f, const Grid1D& grid);

/// True when both lattices describe the same discretization.
bool same_grid(const Grid1D& a, const Grid1D& b);

}  // namespace qwave
