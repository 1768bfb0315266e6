#include "qwave/propagate.hpp"

#include <cmath>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/fourier.hpp"
#include "qwave/hydro.hpp"

namespace qwave {

namespace {

void check_monitors(const WaveFunction& wf, double t,
                    const EvolveOptions& options) {
  const double drift = std::abs(norm_sq(wf) - 1.0);
  if (drift > options.norm_tol) {
    std::ostringstream msg;
    msg << "evolve: unitarity violated at t=" << t << " (|norm^2 - 1| = "
        << drift << ")";
    throw NumericsError(msg.str());
  }
  const double edge = edge_mass(wf);
  if (edge > options.edge_tol) {
    std::ostringstream msg;
    msg << "evolve: box overflow at t=" << t << " (edge mass " << edge
        << "); the packet reached the periodic boundary";
    throw NumericsError(msg.str());
  }
}

// One Crank-Nicolson step: (1 + i dt/2 H) psi_new = (1 - i dt/2 H) psi_old
// with H = -D Lap + V/(2mD) (m = 1), second-order central differences and
// periodic wrap.  The cyclic tridiagonal system is solved by the Thomas
// algorithm plus a Sherman-Morrison corner correction; the matrix is
// strictly diagonally dominant for every dt.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const Grid1D& grid, double D)
      : n_(grid.n), D_(D), inv_dx2_(1.0 / (grid.dx * grid.dx)) {
    diag_a_.resize(n_);
    diag_b_.resize(n_);
    rhs_.resize(n_);
    work_y_.resize(n_);
    work_z_.resize(n_);
    thomas_c_.resize(n_);
    thomas_d_.resize(n_);
  }

  void step(std::vector<cdouble>& psi, std::span<const double> v_mid,
            double dt) {
    const cdouble lambda(0.0, 0.5 * dt);
    const double kinetic_diag = 2.0 * D_ * inv_dx2_;
    // H has off-diagonal -D/dx^2, so A = 1 + lambda*H carries
    // off = +lambda*(-D/dx^2) and B = 1 - lambda*H carries -off.
    off_ = -lambda * D_ * inv_dx2_;
    const cdouble off_b = -off_;

    for (int j = 0; j < n_; ++j) {
      const cdouble h_diag = kinetic_diag + v_mid[j] / (2.0 * D_);
      diag_a_[j] = 1.0 + lambda * h_diag;
      diag_b_[j] = 1.0 - lambda * h_diag;
    }
    for (int j = 0; j < n_; ++j) {
      const cdouble left = psi[(j + n_ - 1) % n_];
      const cdouble right = psi[(j + 1) % n_];
      rhs_[j] = diag_b_[j] * psi[j] + off_b * (left + right);
    }

    // Sherman-Morrison: A = T + u v^T with u = (gamma,0,...,0,off)^T,
    // v = (1,0,...,0,off/gamma)^T removing the periodic corners.
    const cdouble gamma = -diag_a_[0];
    solve_tridiag(gamma, rhs_, work_y_);
    std::vector<cdouble> u(n_, cdouble(0.0, 0.0));
    u[0] = gamma;
    u[n_ - 1] = off_;
    solve_tridiag(gamma, u, work_z_);

    const cdouble corner = off_ / gamma;
    const cdouble num = work_y_[0] + corner * work_y_[n_ - 1];
    const cdouble den = 1.0 + work_z_[0] + corner * work_z_[n_ - 1];
    const cdouble factor = num / den;
    for (int j = 0; j < n_; ++j) psi[j] = work_y_[j] - factor * work_z_[j];
  }

 private:
  // Thomas solve of the open-chain matrix T (diag modified at both ends).
  void solve_tridiag(const cdouble& gamma, const std::vector<cdouble>& rhs,
                     std::vector<cdouble>& out) {
    const cdouble first = diag_a_[0] - gamma;
    const cdouble last = diag_a_[n_ - 1] - off_ * off_ / gamma;

    thomas_c_[0] = off_ / first;
    thomas_d_[0] = rhs[0] / first;
    for (int j = 1; j < n_; ++j) {
      const cdouble diag = (j == n_ - 1) ? last : diag_a_[j];
      const cdouble denom = diag - off_ * thomas_c_[j - 1];
      thomas_c_[j] = off_ / denom;
      thomas_d_[j] = (rhs[j] - off_ * thomas_d_[j - 1]) / denom;
    }
    out[n_ - 1] = thomas_d_[n_ - 1];
    for (int j = n_ - 2; j >= 0; --j) {
      out[j] = thomas_d_[j] - thomas_c_[j] * out[j + 1];
    }
  }

  int n_;
  double D_;
  double inv_dx2_;
  cdouble off_{0.0, 0.0};
  std::vector<cdouble> diag_a_, diag_b_, rhs_, work_y_, work_z_;
  std::vector<cdouble> thomas_c_, thomas_d_;
};

}  // namespace

Trajectory Trajectory::thinned(int thin) const {
  if (thin < 1 || (static_cast<int>(times.size()) - 1) % thin != 0) {
    throw std::invalid_argument("Trajectory::thinned: invalid factor");
  }
  Trajectory out;
  out.dt = dt;
  out.stride = stride * thin;
  out.scheme = scheme;
  for (size_t i = 0; i < times.size(); i += thin) {
    out.times.push_back(times[i]);
    out.snapshots.push_back(snapshots[i]);
  }
  return out;
}

Trajectory evolve(const WaveFunction& wf0, const Potential& pot, double D,
                  double dt, int n_steps, int stride, Scheme scheme,
                  const EvolveOptions& options) {
  if (!(D > 0.0)) throw std::invalid_argument("evolve: D must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (n_steps < 1 || stride < 1 || n_steps % stride != 0) {
    throw std::invalid_argument(
        "evolve: n_steps must be a positive multiple of stride");
  }

  const Grid1D& g = *wf0.grid;
  Trajectory traj;
  traj.dt = dt;
  traj.stride = stride;
  traj.scheme = scheme;
  traj.times.reserve(n_steps / stride + 1);
  traj.snapshots.reserve(n_steps / stride + 1);

  std::vector<cdouble> psi = wf0.psi;
  auto record = [&](int step) {
    WaveFunction snap{wf0.grid, psi};
    const double t = step * dt;
    check_monitors(snap, t, options);
    traj.times.push_back(t);
    traj.snapshots.push_back(std::move(snap));
  };
  record(0);

  std::vector<double> v_mid(g.n);
  const bool static_pot = pot.is_static();

  if (scheme == Scheme::split_step) {
    Fft fft(g.n);
    std::vector<cdouble> phi(g.n);

    // Kinetic half-step phases exp(-i D k^2 dt / 2).
    std::vector<cdouble> half_kinetic(g.n);
    for (int j = 0; j < g.n; ++j) {
      const double phase = -D * g.k[j] * g.k[j] * 0.5 * dt;
      half_kinetic[j] = cdouble(std::cos(phase), std::sin(phase));
    }
    std::vector<cdouble> pot_phase(g.n);
    auto fill_pot_phase = [&](double t_mid) {
      pot.sample(g, t_mid, v_mid);
      for (int j = 0; j < g.n; ++j) {
        const double phase = -v_mid[j] * dt / (2.0 * D);
        pot_phase[j] = cdouble(std::cos(phase), std::sin(phase));
      }
    };
    if (static_pot) fill_pot_phase(0.0);

    auto kinetic_half = [&]() {
      fft.forward(psi, phi);
      for (int j = 0; j < g.n; ++j) phi[j] *= half_kinetic[j];
      fft.inverse(phi, psi);
    };

    for (int step = 0; step < n_steps; ++step) {
      kinetic_half();
      if (!static_pot) fill_pot_phase((step + 0.5) * dt);
      for (int j = 0; j < g.n; ++j) psi[j] *= pot_phase[j];
      kinetic_half();
      if ((step + 1) % stride == 0) record(step + 1);
    }
  } else {
    CrankNicolsonStepper stepper(g, D);
    if (static_pot) pot.sample(g, 0.0, v_mid);
    for (int step = 0; step < n_steps; ++step) {
      if (!static_pot) pot.sample(g, (step + 0.5) * dt, v_mid);
      stepper.step(psi, v_mid, dt);
      if ((step + 1) % stride == 0) record(step + 1);
    }
  }
  return traj;
}

double energy(const WaveFunction& wf, const Potential& pot, double t, double D,
              double m) {
  const Grid1D& g = *wf.grid;
  const MomentumWave mw = to_momentum(wf);
  const double dk = g.dk();
  double mean_k_sq = 0.0;
  for (int j = 0; j < g.n; ++j) {
    mean_k_sq += std::norm(mw.phi[j]) * g.k[j] * g.k[j];
  }
  mean_k_sq *= dk;

  const std::vector<double> v = pot.sample(g, t);
  double mean_v = 0.0;
  for (int j = 0; j < g.n; ++j) mean_v += std::norm(wf.psi[j]) * v[j];
  mean_v *= g.dx;

  // <P^2>/2m with P = -i (2mD) d/dx gives 2 m D^2 <k^2>.
  return 2.0 * m * D * D * mean_k_sq + mean_v;
}

double hydrodynamic_energy(const WaveFunction& wf, const Potential& pot,
                           double t, double D, double m, double tol) {
  const HydroFields f = decompose(wf, D);
  const std::vector<double> v = pot.sample(*wf.grid, t);
  double mean_v = 0.0;
  for (int j = 0; j < wf.grid->n; ++j) mean_v += f.rho[j] * v[j];
  mean_v *= wf.grid->dx;

  const double h = 0.5 * (f.mean_v_sq + f.mean_u_sq) + mean_v / m;
  const double e_over_m = energy(wf, pot, t, D, m) / m;
  if (std::abs(h - e_over_m) > tol) {
    std::ostringstream msg;
    msg << "hydrodynamic_energy: velocity-field energy " << h
        << " disagrees with <H>/m = " << e_over_m << " beyond tol " << tol;
    throw NumericsError(msg.str());
  }
  return h;
}

}  // namespace qwave
