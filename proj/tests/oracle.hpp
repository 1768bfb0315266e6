// Shared analytic oracles and helpers for the test suites.  Everything in
// here derives expected values independently of the library path it checks
// (closed forms, classical trajectories, finite differences).
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qwave/qwave.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Differential entropy of a Gaussian density with variance var.
inline double gaussian_entropy(double var) {
  return 0.5 * std::log(2.0 * pi * std::numbers::e * var);
}

/// Fisher information of a Gaussian density with variance var.
inline double gaussian_fisher(double var) { return 1.0 / var; }

/// Oscillator-eigenstate moments at hbar = m = 1: <x^2> = (n+1/2)/omega,
/// <p^2> = (n+1/2)*omega.
inline double ho_var_x(int n, double omega) { return (n + 0.5) / omega; }
inline double ho_var_p(int n, double omega) { return (n + 0.5) * omega; }

/// L2 distance between two states on the same grid (absolute phase kept).
inline double l2_distance(const qwave::WaveFunction& a,
                          const qwave::WaveFunction& b) {
  double sum = 0.0;
  for (size_t j = 0; j < a.psi.size(); ++j) {
    sum += std::norm(a.psi[j] - b.psi[j]);
  }
  return std::sqrt(sum * a.grid->dx);
}

/// Exact coherent evolution in the omega-trap at hbar = m = 1: the packet
/// keeps the ground-state width while its center follows the classical
/// trajectory, with the phase fixed by the classical action and the 1/2
/// zero-point term:
///   x_c(t) = x0 cos(wt) + (k0/w) sin(wt),
///   k_c(t) = k0 cos(wt) - w x0 sin(wt),
///   S_cl(t) = (k0^2 - w^2 x0^2) sin(2wt)/(4w) - k0 x0 (1 - cos(2wt))/2,
///   psi(x,t) = (2 pi s2)^{-1/4} exp(-(x-x_c)^2/(4 s2)
///              + i [k_c (x - x_c) + S_cl - w t/2 + k0 x0]),  s2 = 1/(2w).
inline qwave::WaveFunction coherent_exact(double t, double x0, double k0,
                                          double omega, qwave::GridPtr grid) {
  const double s2 = 1.0 / (2.0 * omega);
  const double xc = x0 * std::cos(omega * t) + (k0 / omega) * std::sin(omega * t);
  const double kc = k0 * std::cos(omega * t) - omega * x0 * std::sin(omega * t);
  const double s_cl =
      (k0 * k0 - omega * omega * x0 * x0) * std::sin(2.0 * omega * t) /
          (4.0 * omega) -
      k0 * x0 * (1.0 - std::cos(2.0 * omega * t)) / 2.0;
  const double phase0 = s_cl - 0.5 * omega * t + k0 * x0;
  const double norm = std::pow(2.0 * pi * s2, -0.25);

  std::vector<qwave::cdouble> psi(grid->n);
  for (int j = 0; j < grid->n; ++j) {
    const double dx = grid->x[j] - xc;
    const double amp = norm * std::exp(-dx * dx / (4.0 * s2));
    const double phase = kc * dx + phase0;
    psi[j] = amp * qwave::cdouble(std::cos(phase), std::sin(phase));
  }
  return qwave::make_wavefunction(std::move(grid), std::move(psi), true);
}

/// Seeded random superposition of distinct oscillator eigenstates with
/// complex normal coefficients (the property-test state generator).
inline qwave::WaveFunction random_ho_superposition(unsigned seed,
                                                   qwave::GridPtr grid,
                                                   int terms = 5,
                                                   int max_level = 12) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<int> levels(max_level + 1);
  for (int i = 0; i <= max_level; ++i) levels[i] = i;
  std::shuffle(levels.begin(), levels.end(), rng);

  std::vector<qwave::StateSpec> parts;
  std::vector<qwave::cdouble> coeffs;
  for (int i = 0; i < terms; ++i) {
    parts.push_back(qwave::StateSpec::ho(levels[i], 1.0));
    coeffs.emplace_back(normal(rng), normal(rng));
  }
  double scale = 0.0;
  for (const auto& c : coeffs) scale += std::norm(c);
  scale = 1.0 / std::sqrt(scale);
  for (auto& c : coeffs) c *= scale;
  return qwave::superposition(parts, coeffs, std::move(grid));
}

}  // namespace oracle
