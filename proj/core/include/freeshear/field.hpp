#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "freeshear/basis.hpp"

namespace freeshear {

/// Velocity fluctuation as coefficients over a truncated basis (basis order).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(BasisPtr basis);
  SpectralField(BasisPtr basis, std::vector<double> coefficients);

  const BasisPtr& basis() const { return basis_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<double> coefficients() { return coeffs_; }
  std::span<const double> coefficients() const { return coeffs_; }
  double& operator[](std::size_t m) { return coeffs_[m]; }
  double operator[](std::size_t m) const { return coeffs_[m]; }

  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * x
  SpectralField& axpy(double s, const SpectralField& x);

 private:
  BasisPtr basis_;
  std::vector<double> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// L2 inner product of two fields on the same basis.
double inner(const SpectralField& a, const SpectralField& b);

/// Horizontal wavenumber range [lo, hi); hi may be +infinity.
struct Band {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Keeps the coefficients with kappa_bar in [band.lo, band.hi).
SpectralField band_project(const SpectralField& u, const Band& band);

struct Norms {
  double E = 0.0;    ///< ||u||^2
  double G = 0.0;    ///< ||grad u||^2 = Gxy + Gz
  double Gxy = 0.0;  ///< ||grad_{x,y} u||^2
  double Gz = 0.0;   ///< ||d_z u||^2
};

Norms norms(const SpectralField& u);

/// Collocation grid: Nx x Ny uniform periodic points, Nz points on [-h/2, h/2]
/// including both walls.
struct GridSize {
  int Nx = 0;
  int Ny = 0;
  int Nz = 0;

  friend bool operator==(const GridSize&, const GridSize&) = default;
};

/// Dealiased default: quadrature of triple products against basis modes is exact.
GridSize default_grid(const Truncation& trunc);

/// Three velocity components sampled on a grid, index (i, j, k) -> (i*Ny + j)*Nz + k.
struct PhysicalField {
  GridSize grid;
  std::array<std::vector<double>, 3> values;

  explicit PhysicalField(GridSize g = {});
  std::size_t points() const { return values[0].size(); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * grid.Ny + j) * grid.Nz + k;
  }
};

/// Quadrature-exact matrix transforms between coefficient space and the
/// collocation grid, using per-direction cos/sin sum factorisation.
class Transform {
 public:
  enum class Resolution {
    RoundTrip,  ///< exact for products of two basis functions
    Dealiased,  ///< exact for triple products (nonlinear Galerkin term)
  };

  /// Throws ConfigError naming the first unresolved mode if the grid is too coarse.
  Transform(BasisPtr basis, GridSize grid, Resolution resolution = Resolution::RoundTrip);

  const BasisPtr& basis() const { return basis_; }
  const GridSize& grid() const { return grid_; }
  double x(int i) const;
  double y(int j) const;
  double z(int k) const;
  double weight(int i, int j, int k) const;

  PhysicalField to_physical(const SpectralField& u) const;
  /// Gradient tensor on the grid: result[c][d] = d_d u_c.
  std::array<std::array<std::vector<double>, 3>, 3> gradient(const SpectralField& u) const;
  /// L2 projection (in the exact quadrature inner product) onto the basis span.
  SpectralField from_physical(const PhysicalField& p) const;

  /// Quadrature inner product of grid data with every basis mode:
  /// out[m] = sum_c integral f_c w_{m,c}.
  std::vector<double> project(const std::array<std::vector<double>, 3>& f) const;

 private:
  enum class Deriv { None, X, Y, Z };

  // Coefficients per component laid out as (ix, iy, iz).
  std::vector<double> scatter(const SpectralField& u, int c) const;
  void synthesize(const std::vector<double>& spec, int c, Deriv d, std::vector<double>& out) const;
  void analyze(const std::vector<double>& grid_values, int c, std::vector<double>& spec) const;

  BasisPtr basis_;
  GridSize grid_;
  int nxf_ = 0, nyf_ = 0, nzf_ = 0;
  // Sampled 1-D functions, [grid point][function].
  std::vector<double> tx_, dtx_, ty_, dty_;
  std::vector<double> tz_cos_, dtz_cos_, tz_sin_, dtz_sin_;
  std::vector<double> wx_, wy_, wz_;
  // Per mode and component: flat spectral slot and signed amplitude.
  std::vector<std::array<std::size_t, 3>> slot_;
  std::vector<std::array<double, 3>> weight_;
};

PhysicalField to_physical(const SpectralField& u, GridSize grid);
SpectralField from_physical(const PhysicalField& p, BasisPtr basis);

}  // namespace freeshear
