#pragma once

#include <memory>
#include <span>

#include "qwave/wavefunction.hpp"

namespace qwave {

/// Unitary approximation of the continuous Fourier transform
/// phi(k) = (1/sqrt(2*pi)) \int psi(x) e^{-ikx} dx on the wavenumber
/// lattice, including the dx scaling and the exp(-i k x_min) phase.
MomentumWave to_momentum(const WaveFunction& wf);

/// Exact inverse of to_momentum (round-trips to ~1e-15 pointwise).
WaveFunction from_momentum(const MomentumWave& mw);

/// Spectral derivative: transform, multiply by (ik)^order, transform back.
/// order must be 1 or 2; the Nyquist mode is zeroed for order 1 so real
/// inputs give real derivatives.
std::vector<cdouble> spectral_derivative(std::span<const cdouble> f,
                                         const Grid1D& grid, int order);
std::vector<double> spectral_derivative(std::span<const double> f,
                                        const Grid1D& grid, int order);

/// Raw complex DFT of the grid size, plan reuse included.  forward() is the
/// unnormalized DFT sum, inverse() includes the 1/n factor.  One instance
/// is not safe for concurrent use; create one per thread.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const;
  void forward(std::span<const cdouble> in, std::span<cdouble> out) const;
  void inverse(std::span<const cdouble> in, std::span<cdouble> out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qwave
