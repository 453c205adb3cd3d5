#include "freeshear/field.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "freeshear/errors.hpp"

namespace freeshear {

SpectralField::SpectralField(BasisPtr basis)
    : basis_(std::move(basis)), coeffs_(basis_ ? basis_->size() : 0, 0.0) {}

SpectralField::SpectralField(BasisPtr basis, std::vector<double> coefficients)
    : basis_(std::move(basis)), coeffs_(std::move(coefficients)) {
  if (!basis_ || coeffs_.size() != basis_->size()) {
    throw std::invalid_argument("SpectralField: coefficient count does not match basis size");
  }
}

bool SpectralField::all_finite() const {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) { return axpy(1.0, other); }

SpectralField& SpectralField::operator-=(const SpectralField& other) { return axpy(-1.0, other); }

SpectralField& SpectralField::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& x) {
  assert(x.size() == size());
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += s * x.coeffs_[m];
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double inner(const SpectralField& a, const SpectralField& b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) sum += a[m] * b[m];
  return sum;
}

SpectralField band_project(const SpectralField& u, const Band& band) {
  const Basis& basis = *u.basis();
  const std::size_t begin = basis.first_mode_at_or_above(band.lo);
  const std::size_t end =
      std::isinf(band.hi) ? basis.size() : basis.first_mode_at_or_above(band.hi);
  SpectralField out(u.basis());
  for (std::size_t m = begin; m < end; ++m) out[m] = u[m];
  return out;
}

Norms norms(const SpectralField& u) {
  const Basis& basis = *u.basis();
  Norms n;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const auto& mode = basis.mode(m);
    const double c2 = u[m] * u[m];
    n.E += c2;
    n.Gxy += mode.kappa_bar * mode.kappa_bar * c2;
    n.Gz += mode.gamma * mode.gamma * c2;
  }
  n.G = n.Gxy + n.Gz;
  return n;
}

GridSize default_grid(const Truncation& trunc) {
  return {3 * trunc.J + 2, 3 * trunc.L + 2, 3 * trunc.K + 2};
}

PhysicalField::PhysicalField(GridSize g) : grid(g) {
  const auto n = static_cast<std::size_t>(g.Nx) * g.Ny * g.Nz;
  for (auto& v : values) v.assign(n, 0.0);
}

PhysicalField to_physical(const SpectralField& u, GridSize grid) {
  return Transform(u.basis(), grid).to_physical(u);
}

SpectralField from_physical(const PhysicalField& p, BasisPtr basis) {
  return Transform(std::move(basis), p.grid).from_physical(p);
}

}  // namespace freeshear
