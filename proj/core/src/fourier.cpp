#include "qwave/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

#include "qwave/errors.hpp"

namespace qwave {

namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is guarded.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft::Impl {
  int n = 0;
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(int size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_in = fftw_alloc_complex(n);
    buf_out = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf_in) fftw_free(buf_in);
    if (buf_out) fftw_free(buf_out);
  }

  void run(fftw_plan plan, std::span<const cdouble> in, std::span<cdouble> out,
           double scale) const {
    std::memcpy(buf_in, in.data(), sizeof(cdouble) * n);
    fftw_execute(plan);
    auto* res = reinterpret_cast<const cdouble*>(buf_out);
    if (scale == 1.0) {
      std::memcpy(out.data(), res, sizeof(cdouble) * n);
    } else {
      for (int j = 0; j < n; ++j) out[j] = res[j] * scale;
    }
  }
};

Fft::Fft(int n) : impl_(std::make_unique<Impl>(n)) {}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

int Fft::size() const { return impl_->n; }

void Fft::forward(std::span<const cdouble> in, std::span<cdouble> out) const {
  impl_->run(impl_->fwd, in, out, 1.0);
}

void Fft::inverse(std::span<const cdouble> in, std::span<cdouble> out) const {
  impl_->run(impl_->bwd, in, out, 1.0 / impl_->n);
}

namespace {

// Plan cache: pure spectral helpers stay thread-safe by keeping one set of
// plans per thread.
const Fft& cached_fft(int n) {
  thread_local std::map<int, Fft> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fft(n)).first;
  return it->second;
}

}  // namespace

MomentumWave to_momentum(const WaveFunction& wf) {
  const Grid1D& g = *wf.grid;
  const Fft& fft = cached_fft(g.n);

  std::vector<cdouble> phi(g.n);
  fft.forward(wf.psi, phi);

  // dx/sqrt(2 pi) scaling plus the exp(-i k x_min) phase that accounts for
  // the lattice starting at x_min instead of 0.
  const double scale = g.dx / std::sqrt(2.0 * std::numbers::pi);
  for (int m = 0; m < g.n; ++m) {
    const double phase = -g.k[m] * g.x_min;
    phi[m] *= scale * cdouble(std::cos(phase), std::sin(phase));
  }
  return MomentumWave{wf.grid, std::move(phi)};
}

WaveFunction from_momentum(const MomentumWave& mw) {
  const Grid1D& g = *mw.grid;
  const Fft& fft = cached_fft(g.n);

  std::vector<cdouble> work(g.n);
  const double scale = std::sqrt(2.0 * std::numbers::pi) / g.dx;
  for (int m = 0; m < g.n; ++m) {
    const double phase = g.k[m] * g.x_min;
    work[m] = mw.phi[m] * scale * cdouble(std::cos(phase), std::sin(phase));
  }
  std::vector<cdouble> psi(g.n);
  fft.inverse(work, psi);
  return WaveFunction{mw.grid, std::move(psi)};
}

std::vector<cdouble> spectral_derivative(std::span<const cdouble> f,
                                         const Grid1D& grid, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("spectral_derivative: order must be 1 or 2");
  }
  if (static_cast<int>(f.size()) != grid.n) {
    throw std::invalid_argument("spectral_derivative: length mismatch");
  }
  for (const cdouble& c : f) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("spectral_derivative: non-finite input");
    }
  }

  const Fft& fft = cached_fft(grid.n);
  std::vector<cdouble> hat(grid.n);
  fft.forward(f, hat);

  if (order == 1) {
    for (int m = 0; m < grid.n; ++m) {
      hat[m] *= cdouble(0.0, grid.k[m]);
    }
    // The Nyquist mode has no signed frequency; zero it so real inputs map
    // to real derivatives.
    hat[grid.n / 2] = 0.0;
  } else {
    for (int m = 0; m < grid.n; ++m) {
      hat[m] *= -grid.k[m] * grid.k[m];
    }
  }

  std::vector<cdouble> out(grid.n);
  fft.inverse(hat, out);
  return out;
}

std::vector<double> spectral_derivative(std::span<const double> f,
                                        const Grid1D& grid, int order) {
  std::vector<cdouble> fc(f.size());
  for (size_t j = 0; j < f.size(); ++j) fc[j] = f[j];
  const std::vector<cdouble> dc = spectral_derivative(fc, grid, order);
  std::vector<double> out(f.size());
  for (size_t j = 0; j < f.size(); ++j) out[j] = dc[j].real();
  return out;
}

}  // namespace qwave
