#include <cmath>
#include <numbers>
#include <sstream>

#include "freeshear/errors.hpp"
#include "freeshear/field.hpp"

namespace freeshear {

namespace {

std::string describe(const ModeIndex& i) {
  std::ostringstream os;
  os << "(j=" << i.j << ", l=" << i.l << ", k=" << i.k << ", iota=" << i.iota << ")";
  return os.str();
}

// Periodic 1-D table: function f (0 = const, 2m-1 = cos, 2m = sin) at N points.
void periodic_table(int N, int nf, double period, std::vector<double>& t, std::vector<double>& dt) {
  t.assign(static_cast<std::size_t>(N) * nf, 0.0);
  dt.assign(t.size(), 0.0);
  const double a = 2.0 * std::numbers::pi / period;
  for (int i = 0; i < N; ++i) {
    const double s = period * i / N;
    double* row = &t[static_cast<std::size_t>(i) * nf];
    double* drow = &dt[static_cast<std::size_t>(i) * nf];
    row[0] = 1.0;
    for (int m = 1; 2 * m <= nf - 1; ++m) {
      const double w = m * a;
      row[2 * m - 1] = std::cos(w * s);
      row[2 * m] = std::sin(w * s);
      drow[2 * m - 1] = -w * std::sin(w * s);
      drow[2 * m] = w * std::cos(w * s);
    }
  }
}

int trig_slot(const TrigFactor& f, double a, double& sign) {
  const int m = static_cast<int>(std::lround(std::abs(f.freq) / a));
  sign = (f.sine && f.freq < 0.0) ? -1.0 : 1.0;
  if (m == 0) return 0;
  return f.sine ? 2 * m : 2 * m - 1;
}

}  // namespace

Transform::Transform(BasisPtr basis, GridSize grid, Resolution resolution)
    : basis_(std::move(basis)), grid_(grid) {
  const Basis& b = *basis_;
  const Domain& d = b.domain();
  const Truncation& t = b.truncation();
  if (grid.Nx < 1 || grid.Ny < 1 || grid.Nz < 2) {
    throw ConfigError("grid must have Nx >= 1, Ny >= 1, Nz >= 2");
  }
  const int factor = resolution == Resolution::Dealiased ? 3 : 2;
  for (const auto& mode : b.modes()) {
    const auto& i = mode.index;
    const bool x_ok = factor * std::abs(i.j) < grid.Nx;
    const bool y_ok = factor * std::abs(i.l) < grid.Ny;
    // z quadrature is exact for cosine frequencies below 2 (Nz - 1) in units of pi/h.
    const bool z_ok = factor * i.k < 2 * (grid.Nz - 1);
    if (!x_ok || !y_ok || !z_ok) {
      std::ostringstream os;
      os << "grid " << grid.Nx << "x" << grid.Ny << "x" << grid.Nz << " does not resolve mode "
         << describe(i) << (resolution == Resolution::Dealiased ? " (dealiased)" : "");
      throw ConfigError(os.str());
    }
  }

  nxf_ = 2 * t.J + 1;
  nyf_ = 2 * t.L + 1;
  nzf_ = t.K;
  periodic_table(grid.Nx, nxf_, d.Lx, tx_, dtx_);
  periodic_table(grid.Ny, nyf_, d.Ly, ty_, dty_);

  const int Nz = grid.Nz;
  tz_cos_.assign(static_cast<std::size_t>(Nz) * nzf_, 0.0);
  dtz_cos_ = tz_sin_ = dtz_sin_ = tz_cos_;
  for (int kz = 0; kz < Nz; ++kz) {
    const double zeta = d.h * kz / (Nz - 1);
    for (int iz = 0; iz < nzf_; ++iz) {
      const double g = (iz + 1) * std::numbers::pi / d.h;
      const std::size_t at = static_cast<std::size_t>(kz) * nzf_ + iz;
      tz_cos_[at] = std::cos(g * zeta);
      tz_sin_[at] = std::sin(g * zeta);
      dtz_cos_[at] = -g * std::sin(g * zeta);
      dtz_sin_[at] = g * std::cos(g * zeta);
    }
  }
  wx_.assign(grid.Nx, d.Lx / grid.Nx);
  wy_.assign(grid.Ny, d.Ly / grid.Ny);
  wz_.assign(Nz, d.h / (Nz - 1));
  wz_.front() *= 0.5;
  wz_.back() *= 0.5;

  const double ax = 2.0 * std::numbers::pi / d.Lx;
  const double ay = 2.0 * std::numbers::pi / d.Ly;
  slot_.resize(b.size());
  weight_.resize(b.size());
  for (std::size_t m = 0; m < b.size(); ++m) {
    const auto& mode = b.mode(m);
    for (int c = 0; c < 3; ++c) {
      double sx = 1.0, sy = 1.0;
      const int ix = trig_slot(mode.x_factor[c], ax, sx);
      const int iy = trig_slot(mode.y_factor[c], ay, sy);
      const int iz = mode.index.k - 1;
      slot_[m][c] = (static_cast<std::size_t>(ix) * nyf_ + iy) * nzf_ + iz;
      weight_[m][c] = sx * sy * mode.amplitude[c];
    }
  }
}

double Transform::x(int i) const { return basis_->domain().Lx * i / grid_.Nx; }
double Transform::y(int j) const { return basis_->domain().Ly * j / grid_.Ny; }
double Transform::z(int k) const {
  const double h = basis_->domain().h;
  return -0.5 * h + h * k / (grid_.Nz - 1);
}
double Transform::weight(int i, int j, int k) const { return wx_[i] * wy_[j] * wz_[k]; }

std::vector<double> Transform::scatter(const SpectralField& u, int c) const {
  std::vector<double> spec(static_cast<std::size_t>(nxf_) * nyf_ * nzf_, 0.0);
  for (std::size_t m = 0; m < u.size(); ++m) spec[slot_[m][c]] += weight_[m][c] * u[m];
  return spec;
}

void Transform::synthesize(const std::vector<double>& spec, int c, Deriv d,
                           std::vector<double>& out) const {
  const int Nx = grid_.Nx, Ny = grid_.Ny, Nz = grid_.Nz;
  const auto& X = d == Deriv::X ? dtx_ : tx_;
  const auto& Y = d == Deriv::Y ? dty_ : ty_;
  const auto& Z = c < 2 ? (d == Deriv::Z ? dtz_cos_ : tz_cos_) : (d == Deriv::Z ? dtz_sin_ : tz_sin_);

  // z: (ix, iy, iz) -> (ix, iy, kz)
  std::vector<double> t1(static_cast<std::size_t>(nxf_) * nyf_ * Nz, 0.0);
  for (int p = 0; p < nxf_ * nyf_; ++p) {
    const double* s = &spec[static_cast<std::size_t>(p) * nzf_];
    double* o = &t1[static_cast<std::size_t>(p) * Nz];
    bool any = false;
    for (int iz = 0; iz < nzf_; ++iz) any = any || s[iz] != 0.0;
    if (!any) continue;
    for (int kz = 0; kz < Nz; ++kz) {
      const double* zr = &Z[static_cast<std::size_t>(kz) * nzf_];
      double acc = 0.0;
      for (int iz = 0; iz < nzf_; ++iz) acc += zr[iz] * s[iz];
      o[kz] = acc;
    }
  }
  // y: (ix, iy, kz) -> (ix, jy, kz)
  std::vector<double> t2(static_cast<std::size_t>(nxf_) * Ny * Nz, 0.0);
  for (int ix = 0; ix < nxf_; ++ix) {
    for (int jy = 0; jy < Ny; ++jy) {
      double* o = &t2[(static_cast<std::size_t>(ix) * Ny + jy) * Nz];
      for (int iy = 0; iy < nyf_; ++iy) {
        const double coef = Y[static_cast<std::size_t>(jy) * nyf_ + iy];
        if (coef == 0.0) continue;
        const double* s = &t1[(static_cast<std::size_t>(ix) * nyf_ + iy) * Nz];
        for (int kz = 0; kz < Nz; ++kz) o[kz] += coef * s[kz];
      }
    }
  }
  // x: (ix, jy, kz) -> (i, jy, kz)
  const std::size_t plane = static_cast<std::size_t>(Ny) * Nz;
  out.assign(static_cast<std::size_t>(Nx) * plane, 0.0);
  for (int i = 0; i < Nx; ++i) {
    double* o = &out[i * plane];
    for (int ix = 0; ix < nxf_; ++ix) {
      const double coef = X[static_cast<std::size_t>(i) * nxf_ + ix];
      if (coef == 0.0) continue;
      const double* s = &t2[ix * plane];
      for (std::size_t q = 0; q < plane; ++q) o[q] += coef * s[q];
    }
  }
}

void Transform::analyze(const std::vector<double>& g, int c, std::vector<double>& spec) const {
  const int Nx = grid_.Nx, Ny = grid_.Ny, Nz = grid_.Nz;
  const auto& Z = c < 2 ? tz_cos_ : tz_sin_;
  const std::size_t plane = static_cast<std::size_t>(Ny) * Nz;

  // x: (i, jy, kz) -> (ix, jy, kz)
  std::vector<double> a1(static_cast<std::size_t>(nxf_) * plane, 0.0);
  for (int i = 0; i < Nx; ++i) {
    const double* s = &g[i * plane];
    for (int ix = 0; ix < nxf_; ++ix) {
      const double coef = wx_[i] * tx_[static_cast<std::size_t>(i) * nxf_ + ix];
      if (coef == 0.0) continue;
      double* o = &a1[ix * plane];
      for (std::size_t q = 0; q < plane; ++q) o[q] += coef * s[q];
    }
  }
  // y: (ix, jy, kz) -> (ix, iy, kz)
  std::vector<double> a2(static_cast<std::size_t>(nxf_) * nyf_ * Nz, 0.0);
  for (int ix = 0; ix < nxf_; ++ix) {
    for (int jy = 0; jy < Ny; ++jy) {
      const double* s = &a1[(static_cast<std::size_t>(ix) * Ny + jy) * Nz];
      for (int iy = 0; iy < nyf_; ++iy) {
        const double coef = wy_[jy] * ty_[static_cast<std::size_t>(jy) * nyf_ + iy];
        if (coef == 0.0) continue;
        double* o = &a2[(static_cast<std::size_t>(ix) * nyf_ + iy) * Nz];
        for (int kz = 0; kz < Nz; ++kz) o[kz] += coef * s[kz];
      }
    }
  }
  // z: (ix, iy, kz) -> (ix, iy, iz)
  spec.assign(static_cast<std::size_t>(nxf_) * nyf_ * nzf_, 0.0);
  for (int p = 0; p < nxf_ * nyf_; ++p) {
    const double* s = &a2[static_cast<std::size_t>(p) * Nz];
    double* o = &spec[static_cast<std::size_t>(p) * nzf_];
    for (int kz = 0; kz < Nz; ++kz) {
      const double v = wz_[kz] * s[kz];
      if (v == 0.0) continue;
      const double* zr = &Z[static_cast<std::size_t>(kz) * nzf_];
      for (int iz = 0; iz < nzf_; ++iz) o[iz] += zr[iz] * v;
    }
  }
}

PhysicalField Transform::to_physical(const SpectralField& u) const {
  PhysicalField p(grid_);
  for (int c = 0; c < 3; ++c) synthesize(scatter(u, c), c, Deriv::None, p.values[c]);
  return p;
}

std::array<std::array<std::vector<double>, 3>, 3> Transform::gradient(const SpectralField& u) const {
  std::array<std::array<std::vector<double>, 3>, 3> out;
  for (int c = 0; c < 3; ++c) {
    const auto spec = scatter(u, c);
    synthesize(spec, c, Deriv::X, out[c][0]);
    synthesize(spec, c, Deriv::Y, out[c][1]);
    synthesize(spec, c, Deriv::Z, out[c][2]);
  }
  return out;
}

std::vector<double> Transform::project(const std::array<std::vector<double>, 3>& f) const {
  std::vector<double> out(basis_->size(), 0.0);
  std::vector<double> spec;
  for (int c = 0; c < 3; ++c) {
    analyze(f[c], c, spec);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += weight_[m][c] * spec[slot_[m][c]];
  }
  return out;
}

SpectralField Transform::from_physical(const PhysicalField& p) const {
  if (!(p.grid == grid_)) throw std::invalid_argument("from_physical: grid mismatch");
  return SpectralField(basis_, project(p.values));
}

}  // namespace freeshear
