#include "qwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/numerics.hpp"
#include "qwave/wavefunction.hpp"

namespace qwave {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double Grid1D::dk() const { return 2.0 * std::numbers::pi / (n * dx); }

double Grid1D::k_max() const { return std::numbers::pi / dx; }

GridPtr make_grid(double x_min, double x_max, int n) {
  if (!(x_max > x_min)) {
    throw ConfigError("make_grid: x_max must exceed x_min");
  }
  if (!is_power_of_two(n) || n < 8) {
    std::ostringstream msg;
    msg << "make_grid: n must be a power of two >= 8, got " << n;
    throw ConfigError(msg.str());
  }

  auto grid = std::make_shared<Grid1D>();
  grid->x_min = x_min;
  grid->x_max = x_max;
  grid->n = n;
  grid->dx = (x_max - x_min) / n;

  grid->x.resize(n);
  for (int j = 0; j < n; ++j) grid->x[j] = x_min + j * grid->dx;

  // FFT-ordered wavenumbers: m = 0..n/2-1, then m = -n/2..-1.
  grid->k.resize(n);
  const double dk = grid->dk();
  for (int m = 0; m < n; ++m) {
    const int folded = (m < n / 2) ? m : m - n;
    grid->k[m] = folded * dk;
  }
  return grid;
}

double quadrature(std::span<const double> f, const Grid1D& grid) {
  if (static_cast<int>(f.size()) != grid.n) {
    throw std::invalid_argument("quadrature: length mismatch with grid");
  }
  double sum = 0.0;
  for (double value : f) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("quadrature: non-finite integrand");
    }
    sum += value;
  }
  return sum * grid.dx;
}

bool same_grid(const Grid1D& a, const Grid1D& b) {
  return a.n == b.n && a.x_min == b.x_min && a.x_max == b.x_max;
}

double norm_sq(const WaveFunction& wf) {
  double sum = 0.0;
  for (const cdouble& c : wf.psi) sum += std::norm(c);
  return sum * wf.grid->dx;
}

double norm_sq(const MomentumWave& mw) {
  double sum = 0.0;
  for (const cdouble& c : mw.phi) sum += std::norm(c);
  return sum * mw.grid->dk();
}

std::vector<double> density(const WaveFunction& wf) {
  std::vector<double> rho(wf.psi.size());
  for (size_t j = 0; j < wf.psi.size(); ++j) rho[j] = std::norm(wf.psi[j]);
  return rho;
}

std::vector<double> density(const MomentumWave& mw) {
  std::vector<double> rho(mw.phi.size());
  for (size_t j = 0; j < mw.phi.size(); ++j) rho[j] = std::norm(mw.phi[j]);
  return rho;
}

WaveFunction make_wavefunction(GridPtr grid, std::vector<cdouble> psi,
                               bool renormalize) {
  if (!grid) throw std::invalid_argument("make_wavefunction: null grid");
  if (static_cast<int>(psi.size()) != grid->n) {
    throw std::invalid_argument("make_wavefunction: length mismatch");
  }
  WaveFunction wf{std::move(grid), std::move(psi)};
  const double nsq = norm_sq(wf);
  if (renormalize) {
    if (!(nsq > 0.0) || !std::isfinite(nsq)) {
      throw ConfigError("make_wavefunction: state has zero or invalid norm");
    }
    const double scale = 1.0 / std::sqrt(nsq);
    for (cdouble& c : wf.psi) c *= scale;
  } else if (std::abs(nsq - 1.0) > numerics::norm_tol) {
    std::ostringstream msg;
    msg << "make_wavefunction: state not L2-normalized (|psi|^2 integrates to "
        << nsq << ")";
    throw std::invalid_argument(msg.str());
  }
  return wf;
}

double edge_mass(const WaveFunction& wf) {
  const int n = wf.grid->n;
  const int cells = 4;
  double sum = 0.0;
  for (int j = 0; j < cells; ++j) {
    sum += std::norm(wf.psi[j]) + std::norm(wf.psi[n - 1 - j]);
  }
  return sum * wf.grid->dx;
}

}  // namespace qwave
