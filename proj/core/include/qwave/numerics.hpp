#pragma once

namespace qwave::numerics {

/// Relative density floor below which rho*ln(rho) is treated as 0.
/// The integrand vanishes in this limit for every state in scope.
inline constexpr double entropy_floor_rel = 1e-30;

/// Relative density floor for quotient integrands ((rho')^2/rho, j^2/rho)
/// and for the pointwise velocity fields u, v.  Below this level the
/// spectral derivatives sit at the FFT round-off floor (~1e-13 absolute),
/// so the quotients would be noise-dominated; the exact integrands there
/// are exponentially small.  Interior near-nodes are NOT excluded by this
/// floor: points whose derivative signals are above noise stay in.
inline constexpr double quotient_floor_rel = 1e-12;

/// Relative signal threshold for first/second density derivatives and for
/// the probability current.  A low-density point is kept in quotient
/// integrals whenever one of these signals is above its noise floor,
/// which is what distinguishes a node neighbourhood from a far tail.
inline constexpr double derivative_signal_rel = 1e-10;

/// Relative density threshold for phase-unwrap support (nodeless check).
inline constexpr double node_threshold_rel = 1e-10;

/// Largest adjacent-point phase increment (radians) tolerated inside the
/// unwrap support.  A resolved smooth phase moves far less per grid cell;
/// a node flips the phase by ~pi between neighbours.
inline constexpr double phase_jump_limit = 1.5707963267948966;  // pi/2

/// L2 normalization tolerance for WaveFunction / MomentumWave invariants.
inline constexpr double norm_tol = 1e-10;

/// Default hard tolerance for signed inequality slacks.
inline constexpr double default_tol_slack = 1e-7;

/// Default tolerance for pointwise/integral identity residuals.
inline constexpr double default_tol_identity = 1e-6;

}  // namespace qwave::numerics
