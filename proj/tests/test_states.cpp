#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qwave/qwave.hpp"

using namespace qwave;

TEST_SUITE_BEGIN("states");

namespace {
GridPtr default_grid() { return make_grid(-20.0, 20.0, 2048); }
}  // namespace

TEST_CASE("gaussian_packet: minimum-uncertainty moments") {
  const WaveFunction wf = gaussian_packet(0.0, 0.0, 0.5, default_grid());
  const Moments m = moments(wf);
  CHECK(m.mean_x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m.var_x == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(m.mean_p == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m.var_p == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::sqrt(m.var_x * m.var_p) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gaussian_packet: translation leaves entropies and variances") {
  GridPtr g = default_grid();
  const WaveFunction at0 = gaussian_packet(0.0, 0.0, 0.5, g);
  const WaveFunction at3 = gaussian_packet(3.0, 0.0, 0.5, g);
  const double s0 = shannon_entropy(density(at0), *g);
  const double s3 = shannon_entropy(density(at3), *g);
  CHECK(s3 == doctest::Approx(s0).epsilon(1e-10));
  const Moments m3 = moments(at3);
  CHECK(m3.mean_x == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(m3.var_x == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gaussian_packet: boost shifts the mean momentum only") {
  const WaveFunction wf = gaussian_packet(0.0, 2.0, 0.5, default_grid());
  const Moments m = moments(wf);
  CHECK(m.mean_p == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(m.var_p == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("gaussian_packet rejects bad width and off-box centers") {
  CHECK_THROWS_AS(gaussian_packet(0.0, 0.0, -0.5, default_grid()),
                  ConfigError);
  CHECK_THROWS_AS(gaussian_packet(19.5, 0.0, 0.5, default_grid()),
                  ConfigError);
}

TEST_CASE("ho_eigenstate: ground-state density and variance") {
  GridPtr g = default_grid();
  const WaveFunction wf = ho_eigenstate(0, 1.0, g);
  // rho(x) = pi^{-1/2} exp(-x^2)
  for (int j = 0; j < g->n; j += 61) {
    if (std::abs(g->x[j]) > 5.0) continue;
    const double expected =
        std::exp(-g->x[j] * g->x[j]) / std::sqrt(oracle::pi);
    CHECK(std::norm(wf.psi[j]) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(moments(wf).var_x == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("ho_eigenstate: excited-state moments match the ladder") {
  const WaveFunction wf = ho_eigenstate(1, 1.0, default_grid());
  const Moments m = moments(wf);
  const double mean_p_sq = m.var_p + m.mean_p * m.mean_p;
  CHECK(mean_p_sq == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(m.var_x == doctest::Approx(oracle::ho_var_x(1, 1.0)).epsilon(1e-9));
}

TEST_CASE("ho_eigenstate: real state has zero current velocity") {
  const WaveFunction wf = ho_eigenstate(0, 1.0, default_grid());
  const HydroFields f = decompose(wf, 0.5);
  for (double v : f.v) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("ho_eigenstate is an eigenvector of the discretized Hamiltonian") {
  GridPtr g = default_grid();
  const double D = 0.5;
  for (int n : {0, 1, 5, 15, 30}) {
    const WaveFunction wf = ho_eigenstate(n, 1.0, g);
    // H psi = -2mD^2 psi'' + (1/2) omega^2 x^2 psi, m = 1.
    const auto psi_pp = spectral_derivative(wf.psi, *g, 2);
    const double e_n = 2.0 * D * (n + 0.5);  // hbar omega (n + 1/2)
    double num = 0.0;
    for (int j = 0; j < g->n; ++j) {
      const cdouble h_psi = -2.0 * D * D * psi_pp[j] +
                            0.5 * g->x[j] * g->x[j] * wf.psi[j];
      num += std::norm(h_psi - e_n * wf.psi[j]);
    }
    CHECK(std::sqrt(num * g->dx) < 1e-6);
  }
}

TEST_CASE("ho_eigenstate rejects under-resolved levels") {
  CHECK_THROWS_AS(ho_eigenstate(-1, 1.0, default_grid()), ConfigError);
  CHECK_THROWS_AS(ho_eigenstate(400, 1.0, default_grid()), ConfigError);
  CHECK_THROWS_AS(ho_eigenstate(5, 1.0, make_grid(-20.0, 20.0, 8)),
                  ConfigError);
}

TEST_CASE("coherent_state: energy, width, and alpha = 0 reduction") {
  GridPtr g = default_grid();
  const Potential trap = Potential::harmonic(1.0);
  const WaveFunction wf = coherent_state(cdouble(1.0, 0.0), 1.0, g);
  CHECK(energy(wf, trap, 0.0, 0.5) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(moments(wf).var_x == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(moments(wf).mean_x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  const WaveFunction displaced0 = coherent_state(cdouble(0.0, 0.0), 1.0, g);
  const WaveFunction ground = ho_eigenstate(0, 1.0, g);
  CHECK(oracle::l2_distance(displaced0, ground) < 1e-12);
}

TEST_CASE("free_gaussian_at: initial slice, spreading law, momentum") {
  GridPtr g = default_grid();
  const WaveFunction slice0 = free_gaussian_at(0.0, 0.3, 1.0, 0.5, g);
  const WaveFunction packet = gaussian_packet(0.3, 1.0, 0.5, g);
  CHECK(oracle::l2_distance(slice0, packet) < 1e-12);

  const WaveFunction slice1 = free_gaussian_at(1.0, 0.0, 0.0, 0.5, g);
  CHECK(moments(slice1).var_x == doctest::Approx(1.0).epsilon(1e-10));

  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const WaveFunction slice = free_gaussian_at(t, 0.0, 0.0, 0.5, g);
    CHECK(moments(slice).var_p == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("free_gaussian_at agrees with the spectral free propagator") {
  // Independent check of the closed form: apply the exact one-shot free
  // kinetic phase in momentum space to the t = 0 packet.
  GridPtr g = default_grid();
  const double t = 0.8, D = 0.5;
  const WaveFunction start = free_gaussian_at(0.0, 0.5, 1.2, 0.7, g);
  MomentumWave mw = to_momentum(start);
  for (int j = 0; j < g->n; ++j) {
    const double phase = -D * g->k[j] * g->k[j] * t;
    mw.phi[j] *= cdouble(std::cos(phase), std::sin(phase));
  }
  const WaveFunction evolved = from_momentum(mw);
  const WaveFunction closed = free_gaussian_at(t, 0.5, 1.2, 0.7, g);
  CHECK(oracle::l2_distance(evolved, closed) < 1e-11);
}

TEST_CASE("superposition: identity, energy average, orthonormal norm") {
  GridPtr g = default_grid();
  const std::vector<StateSpec> one = {StateSpec::ho(2, 1.0)};
  const std::vector<cdouble> c_one = {cdouble(1.0, 0.0)};
  const WaveFunction same = superposition(one, c_one, g);
  CHECK(oracle::l2_distance(same, ho_eigenstate(2, 1.0, g)) < 1e-12);

  const double w = std::sqrt(0.5);
  const std::vector<StateSpec> two = {StateSpec::ho(0, 1.0),
                                      StateSpec::ho(1, 1.0)};
  const std::vector<cdouble> c_two = {cdouble(w, 0.0), cdouble(w, 0.0)};
  const WaveFunction beat = superposition(two, c_two, g);
  const Potential trap = Potential::harmonic(1.0);
  CHECK(energy(beat, trap, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-9));

  // Orthonormal components with |c0|^2 = |c1|^2 = 1/2 are normalized
  // before any rescaling.
  std::vector<cdouble> raw(g->n);
  const WaveFunction psi0 = ho_eigenstate(0, 1.0, g);
  const WaveFunction psi1 = ho_eigenstate(1, 1.0, g);
  for (int j = 0; j < g->n; ++j) raw[j] = w * (psi0.psi[j] + psi1.psi[j]);
  double nsq = 0.0;
  for (const auto& c : raw) nsq += std::norm(c);
  CHECK(nsq * g->dx == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("superposition rejects empty and cancelling input") {
  GridPtr g = default_grid();
  CHECK_THROWS_AS(superposition({}, {}, g), ConfigError);
  const std::vector<StateSpec> pair = {StateSpec::ho(0, 1.0),
                                       StateSpec::ho(0, 1.0)};
  const std::vector<cdouble> cancel = {cdouble(1.0, 0.0), cdouble(-1.0, 0.0)};
  CHECK_THROWS_AS(superposition(pair, cancel, g), ConfigError);
}

TEST_CASE("every builder emits a normalized state") {
  GridPtr g = default_grid();
  const WaveFunction states[] = {
      gaussian_packet(1.0, -2.0, 0.8, g),
      ho_eigenstate(7, 2.0, g),
      coherent_state(cdouble(0.5, 0.7), 1.5, g),
      free_gaussian_at(1.2, -1.0, 0.5, 0.6, g),
      oracle::random_ho_superposition(11, g),
  };
  for (const WaveFunction& wf : states) {
    CHECK(std::abs(norm_sq(wf) - 1.0) < 1e-10);
  }
}

TEST_SUITE_END();
