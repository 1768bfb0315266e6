#pragma once

#include <span>
#include <vector>

#include "qwave/grid.hpp"

namespace qwave {

/// External potential V(x, t) in energy units, bounded below on the grid.
/// Kinds: free (V = 0), harmonic (1/2) omega^2 (x-c)^2, a driven trap with
/// omega(t) = omega0 (1 + amp sin(nu t)), or values tabulated on the grid.
class Potential {
 public:
  enum class Kind { free, harmonic, driven_harmonic, tabulated };

  static Potential free_space();
  static Potential harmonic(double omega, double center = 0.0);
  static Potential driven_harmonic(double omega0, double amp, double nu,
                                   double center = 0.0);
  static Potential tabulated(std::vector<double> values);

  Kind kind() const { return kind_; }
  bool is_static() const { return kind_ != Kind::driven_harmonic; }
  double omega() const { return omega_; }
  double center() const { return center_; }
  double drive_amp() const { return amp_; }
  double drive_nu() const { return nu_; }

  /// omega(t); equals omega() for the static trap.
  double omega_at(double t) const;

  /// Samples V(., t) on the grid.  Tabulated values must match grid.n.
  void sample(const Grid1D& grid, double t, std::span<double> out) const;
  std::vector<double> sample(const Grid1D& grid, double t) const;

 private:
  Potential() = default;
  Kind kind_ = Kind::free;
  double omega_ = 0.0;
  double center_ = 0.0;
  double amp_ = 0.0;
  double nu_ = 0.0;
  std::vector<double> values_;
};

}  // namespace qwave
