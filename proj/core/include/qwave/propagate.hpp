#pragma once

#include <vector>

#include "qwave/potential.hpp"
#include "qwave/wavefunction.hpp"

namespace qwave {

enum class Scheme { split_step, crank_nicolson };

/// Strided snapshot record of an evolution.  times[i] = i * stride * dt,
/// snapshots[0] is the initial state, every snapshot is normalized within
/// the unitarity monitor's tolerance.
struct Trajectory {
  std::vector<double> times;
  std::vector<WaveFunction> snapshots;
  double dt = 0.0;
  int stride = 1;
  Scheme scheme = Scheme::split_step;

  double snapshot_dt() const { return dt * stride; }

  /// Same trajectory sampled at every thin-th snapshot (for step-size
  /// studies of finite-difference residuals).
  Trajectory thinned(int thin) const;
};

struct EvolveOptions {
  double norm_tol = 1e-6;  // abort when |norm - 1| exceeds this
  double edge_tol = 1e-6;  // abort when edge mass exceeds this
};

/// Evolves wf0 under i dpsi/dt = -D Lap(psi) + (V / 2mD) psi for
/// n_steps steps of dt, keeping every stride-th state (m = 1).
///
/// split_step: Strang splitting — kinetic half step in momentum space,
/// full potential step with V evaluated at the midpoint time, kinetic
/// half step; exactly norm-preserving, global error O(dt^2).
/// crank_nicolson: second-order central differences in space, tridiagonal
/// (cyclic) solve per step; independent cross-check scheme.
Trajectory evolve(const WaveFunction& wf0, const Potential& pot, double D,
                  double dt, int n_steps, int stride,
                  Scheme scheme = Scheme::split_step,
                  const EvolveOptions& options = {});

/// <H> = <P^2>/2m + <V(., t)> with the kinetic term evaluated spectrally
/// and P = -i (2mD) d/dx.
double energy(const WaveFunction& wf, const Potential& pot, double t,
              double D, double m = 1.0);

/// Hydrodynamic energy (1/2)(<v^2> + <u^2>) + <V>/m.  Must equal
/// energy(...)/m; throws NumericsError beyond tol.
double hydrodynamic_energy(const WaveFunction& wf, const Potential& pot,
                           double t, double D, double m = 1.0,
                           double tol = 1e-6);

}  // namespace qwave
