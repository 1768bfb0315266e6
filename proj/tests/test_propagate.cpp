#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qwave/qwave.hpp"

using namespace qwave;

TEST_SUITE_BEGIN("propagate");

namespace {
GridPtr default_grid() { return make_grid(-20.0, 20.0, 2048); }
constexpr double kD = 0.5;
}  // namespace

TEST_CASE("stationary state: density frozen, phase only") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = ho_eigenstate(0, 1.0, g);
  const Potential trap = Potential::harmonic(1.0);
  const Trajectory traj = evolve(wf0, trap, kD, 1e-3, 2000, 500);

  const std::vector<double> rho0 = density(traj.snapshots.front());
  for (const WaveFunction& snap : traj.snapshots) {
    const std::vector<double> rho = density(snap);
    double worst = 0.0;
    for (int j = 0; j < g->n; ++j) {
      worst = std::max(worst, std::abs(rho[j] - rho0[j]));
    }
    CHECK(worst < 1e-8);
  }
  // Up to a global phase the state is unchanged: overlap magnitude 1.
  cdouble overlap(0.0, 0.0);
  for (int j = 0; j < g->n; ++j) {
    overlap += std::conj(wf0.psi[j]) * traj.snapshots.back().psi[j];
  }
  CHECK(std::abs(overlap) * g->dx == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("free packet matches the closed form at t = 1") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = gaussian_packet(0.0, 0.0, 0.5, g);
  const Trajectory traj =
      evolve(wf0, Potential::free_space(), kD, 1e-3, 1000, 1000);
  const WaveFunction exact = free_gaussian_at(1.0, 0.0, 0.0, 0.5, g);
  CHECK(oracle::l2_distance(traj.snapshots.back(), exact) < 1e-6);
  CHECK(moments(traj.snapshots.back()).var_x ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("coherent packet swings to -sqrt(2) after half a period") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const int n_steps = static_cast<int>(std::llround(oracle::pi / 1e-3));
  const Trajectory traj = evolve(wf0, Potential::harmonic(1.0), kD,
                                 oracle::pi / n_steps, n_steps, n_steps);
  CHECK(moments(traj.snapshots.back()).mean_x ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("split-step order: coherent closed-form error scales as dt^2") {
  GridPtr g = default_grid();
  const double x0 = std::sqrt(2.0), k0 = 0.0, omega = 1.0, t_final = 1.0;
  const WaveFunction wf0 = coherent_state(cdouble(1.0, 0.0), omega, g);
  const WaveFunction exact = oracle::coherent_exact(t_final, x0, k0, omega, g);

  auto error_at = [&](double dt) {
    const int n = static_cast<int>(std::llround(t_final / dt));
    const Trajectory traj =
        evolve(wf0, Potential::harmonic(omega), kD, dt, n, n);
    return oracle::l2_distance(traj.snapshots.back(), exact);
  };
  const double e1 = error_at(2e-3);
  const double e2 = error_at(1e-3);
  CHECK(e1 < 1e-5);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("unitarity over ten thousand split steps") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const Trajectory traj =
      evolve(wf0, Potential::harmonic(1.0), kD, 1e-3, 10000, 2000);
  for (const WaveFunction& snap : traj.snapshots) {
    CHECK(std::abs(norm_sq(snap) - 1.0) < 1e-8);
  }
}

TEST_CASE("energy: eigenvalues and kinetic-only packets") {
  GridPtr g = default_grid();
  const Potential trap = Potential::harmonic(1.0);
  CHECK(energy(ho_eigenstate(0, 1.0, g), trap, 0.0, kD) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(energy(ho_eigenstate(1, 1.0, g), trap, 0.0, kD) ==
        doctest::Approx(1.5).epsilon(1e-10));
  CHECK(energy(gaussian_packet(0.0, 0.0, 0.5, g), Potential::free_space(), 0.0,
               kD) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("energy conservation: relative drift below 1e-6 to t = 10") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const Potential trap = Potential::harmonic(1.0);
  const Trajectory traj = evolve(wf0, trap, kD, 1e-3, 10000, 100);
  const double e0 = energy(traj.snapshots.front(), trap, 0.0, kD);
  double drift = 0.0;
  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    const double e = energy(traj.snapshots[i], trap, traj.times[i], kD);
    drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
  }
  CHECK(drift < 1e-6);
}

TEST_CASE("hydrodynamic energy equals <H>/m and is conserved") {
  GridPtr g = default_grid();
  const Potential trap = Potential::harmonic(1.0);

  // Ground state: 0.5 = <u^2>/2 + <V> = 0.25 + 0.25.
  const WaveFunction ground = ho_eigenstate(0, 1.0, g);
  const HydroFields f = decompose(ground, kD);
  CHECK(0.5 * f.mean_u_sq == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(hydrodynamic_energy(ground, trap, 0.0, kD) ==
        doctest::Approx(0.5).epsilon(1e-9));

  // Boosted free packet: (1/2)<v^2> + (1/2)<u^2> = <P^2>/2 = 2.25.
  const WaveFunction boosted = gaussian_packet(0.0, 2.0, 0.5, g);
  CHECK(hydrodynamic_energy(boosted, Potential::free_space(), 0.0, kD) ==
        doctest::Approx(2.25).epsilon(1e-9));

  // Constancy along a trajectory for a static trap.
  const Trajectory traj = evolve(coherent_state(cdouble(1.0, 0.0), 1.0, g),
                                 trap, kD, 1e-3, 4000, 400);
  const double h0 = hydrodynamic_energy(traj.snapshots.front(), trap, 0.0, kD);
  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    const double h = hydrodynamic_energy(traj.snapshots[i], trap,
                                         traj.times[i], kD);
    CHECK(std::abs(h - h0) < 1e-5);
  }
}

TEST_CASE("crank-nicolson cross-checks split-step on the coherent scenario") {
  GridPtr g = make_grid(-20.0, 20.0, 4096);
  const WaveFunction wf0 = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  const Potential trap = Potential::harmonic(1.0);
  const double dt = 2e-4, t_final = 1.0;
  const int n = static_cast<int>(std::llround(t_final / dt));
  const Trajectory split =
      evolve(wf0, trap, kD, dt, n, n, Scheme::split_step);
  const Trajectory cn =
      evolve(wf0, trap, kD, dt, n, n, Scheme::crank_nicolson);
  CHECK(oracle::l2_distance(split.snapshots.back(), cn.snapshots.back()) <
        1e-4);
  CHECK(std::abs(norm_sq(cn.snapshots.back()) - 1.0) < 1e-10);
}

TEST_CASE("crank-nicolson converges at second order on the free packet") {
  GridPtr g = make_grid(-20.0, 20.0, 4096);
  const WaveFunction wf0 = gaussian_packet(0.0, 0.0, 0.5, g);
  const WaveFunction exact = free_gaussian_at(0.5, 0.0, 0.0, 0.5, g);
  auto error_at = [&](double dt) {
    const int n = static_cast<int>(std::llround(0.5 / dt));
    const Trajectory traj = evolve(wf0, Potential::free_space(), kD, dt, n, n,
                                   Scheme::crank_nicolson);
    return oracle::l2_distance(traj.snapshots.back(), exact);
  };
  const double e1 = error_at(2e-3);
  const double e2 = error_at(1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("driven trap: midpoint sampling keeps second-order accuracy") {
  GridPtr g = default_grid();
  const WaveFunction wf0 = ho_eigenstate(0, 1.0, g);
  const Potential drive = Potential::driven_harmonic(1.0, 0.2, 1.3);
  const double t_final = 1.0;

  auto state_at = [&](double dt) {
    const int n = static_cast<int>(std::llround(t_final / dt));
    return evolve(wf0, drive, kD, dt, n, n).snapshots.back();
  };
  const WaveFunction reference = state_at(6.25e-5);
  const double e1 = oracle::l2_distance(state_at(1e-3), reference);
  const double e2 = oracle::l2_distance(state_at(5e-4), reference);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("monitors: runaway packet aborts with a box-overflow error") {
  GridPtr g = make_grid(-20.0, 20.0, 1024);
  const WaveFunction wf0 = gaussian_packet(0.0, 6.0, 0.5, g);
  CHECK_THROWS_AS(
      evolve(wf0, Potential::free_space(), kD, 1e-2, 400, 10),
      NumericsError);
}

TEST_CASE("evolve validates stepping parameters") {
  GridPtr g = make_grid(-20.0, 20.0, 64);
  const WaveFunction wf0 = gaussian_packet(0.0, 0.0, 0.5, g);
  const Potential pot = Potential::free_space();
  CHECK_THROWS_AS(evolve(wf0, pot, kD, -1e-3, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(wf0, pot, kD, 1e-3, 10, 3), std::invalid_argument);
  CHECK_THROWS_AS(evolve(wf0, pot, kD, 1e-3, 0, 1), std::invalid_argument);
}

TEST_CASE("trajectory thinning halves the snapshot rate") {
  GridPtr g = make_grid(-20.0, 20.0, 256);
  const WaveFunction wf0 = gaussian_packet(0.0, 0.0, 0.5, g);
  const Trajectory traj =
      evolve(wf0, Potential::free_space(), kD, 1e-3, 40, 10);
  const Trajectory thin = traj.thinned(2);
  REQUIRE(thin.snapshots.size() == 3);
  CHECK(thin.snapshot_dt() == doctest::Approx(2.0 * traj.snapshot_dt()));
  CHECK(thin.times[1] == doctest::Approx(traj.times[2]));
}

TEST_SUITE_END();
