#include "qwave/potential.hpp"

#include <cmath>
#include <sstream>

#include "qwave/errors.hpp"

namespace qwave {

Potential Potential::free_space() {
  Potential p;
  p.kind_ = Kind::free;
  return p;
}

Potential Potential::harmonic(double omega, double center) {
  if (!(omega > 0.0)) throw ConfigError("harmonic potential: omega <= 0");
  Potential p;
  p.kind_ = Kind::harmonic;
  p.omega_ = omega;
  p.center_ = center;
  return p;
}

Potential Potential::driven_harmonic(double omega0, double amp, double nu,
                                     double center) {
  if (!(omega0 > 0.0)) throw ConfigError("driven potential: omega0 <= 0");
  Potential p;
  p.kind_ = Kind::driven_harmonic;
  p.omega_ = omega0;
  p.amp_ = amp;
  p.nu_ = nu;
  p.center_ = center;
  return p;
}

Potential Potential::tabulated(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ConfigError("tabulated potential: non-finite sample");
    }
  }
  Potential p;
  p.kind_ = Kind::tabulated;
  p.values_ = std::move(values);
  return p;
}

double Potential::omega_at(double t) const {
  if (kind_ == Kind::driven_harmonic) {
    return omega_ * (1.0 + amp_ * std::sin(nu_ * t));
  }
  return omega_;
}

void Potential::sample(const Grid1D& grid, double t,
                       std::span<double> out) const {
  if (static_cast<int>(out.size()) != grid.n) {
    throw std::invalid_argument("Potential::sample: length mismatch");
  }
  switch (kind_) {
    case Kind::free:
      for (int j = 0; j < grid.n; ++j) out[j] = 0.0;
      return;
    case Kind::harmonic:
    case Kind::driven_harmonic: {
      const double w = omega_at(t);
      const double w_sq = 0.5 * w * w;
      for (int j = 0; j < grid.n; ++j) {
        const double dxj = grid.x[j] - center_;
        out[j] = w_sq * dxj * dxj;
      }
      return;
    }
    case Kind::tabulated: {
      if (static_cast<int>(values_.size()) != grid.n) {
        std::ostringstream msg;
        msg << "tabulated potential: " << values_.size()
            << " samples, grid has " << grid.n;
        throw ConfigError(msg.str());
      }
      for (int j = 0; j < grid.n; ++j) out[j] = values_[j];
      return;
    }
  }
}

std::vector<double> Potential::sample(const Grid1D& grid, double t) const {
  std::vector<double> out(grid.n);
  sample(grid, t, out);
  return out;
}

}  // namespace qwave
