#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freeshear/basis.hpp"
#include "freeshear/basis_check.hpp"
#include "freeshear/errors.hpp"
#include "quadrature.hpp"

using namespace freeshear;

namespace {

constexpr double kPi = std::numbers::pi;

const Domain kSquare{2 * kPi, 2 * kPi, kPi, 0.1};
const Domain kRect{2 * kPi, kPi, kPi, 0.1};

// Weighted sample matrix on the trapezoid grid; its Gram matrix is exact for
// products of two modes when N > 2 * max frequency.
double gram_deviation(const Domain& d, const Truncation& t) {
  const Basis b(d, t);
  const int Nx = 2 * t.J + 2, Ny = 2 * t.L + 2, Nz = t.K + 3;
  const std::size_t P = static_cast<std::size_t>(Nx) * Ny * Nz * 3;
  std::vector<std::vector<double>> S(b.size(), std::vector<double>(P));
  for (std::size_t m = 0; m < b.size(); ++m) {
    std::size_t q = 0;
    for (int i = 0; i < Nx; ++i) {
      for (int j = 0; j < Ny; ++j) {
        for (int k = 0; k < Nz; ++k) {
          const double wz = (k == 0 || k == Nz - 1) ? 0.5 : 1.0;
          const double w = std::sqrt(d.Lx / Nx * d.Ly / Ny * d.h / (Nz - 1) * wz);
          const Vec3 v = evaluate_mode(b.mode(m), d.Lx * i / Nx, d.Ly * j / Ny, -0.5 * d.h + d.h * k / (Nz - 1));
          for (int c = 0; c < 3; ++c) S[m][q++] = w * v[c];
        }
      }
    }
  }
  double dev = 0.0;
  for (std::size_t m = 0; m < b.size(); ++m) {
    for (std::size_t n = m; n < b.size(); ++n) {
      double s = 0.0;
      for (std::size_t q = 0; q < P; ++q) s += S[m][q] * S[n][q];
      dev = std::max(dev, std::abs(s - (m == n ? 1.0 : 0.0)));
    }
  }
  return dev;
}

}  // namespace

TEST_CASE("mode counts and ordering") {
  CHECK(enumerate_modes(kSquare, {1, 1, 1}).size() == 16);
  CHECK(enumerate_modes(kSquare, {2, 0, 1}).size() == 8);
  CHECK(enumerate_modes(kSquare, {4, 4, 4}).size() == 80 * 4 * 2);
  const auto modes = enumerate_modes(kRect, {5, 3, 2});
  for (std::size_t i = 1; i < modes.size(); ++i) {
    const double a = build_mode(kRect, modes[i - 1]).kappa_bar;
    const double b = build_mode(kRect, modes[i]).kappa_bar;
    REQUIRE(a <= b * (1 + 1e-15));
  }
  for (const auto& m : modes) REQUIRE((m.j != 0 || m.l != 0));
  CHECK_THROWS_AS(enumerate_modes(kSquare, {0, 0, 1}), ConfigError);
  CHECK_THROWS_AS(enumerate_modes(kSquare, {1, 1, 0}), ConfigError);
}

TEST_CASE("eigenvalue and wavenumber formulas") {
  CHECK(build_mode(kSquare, {1, 0, 1, 1}).lambda == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(build_mode(kSquare, {3, 4, 1, 2}).kappa_bar == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(build_mode(kRect, {-2, 3, 5, 1}).lambda == doctest::Approx(4.0 + 36.0 + 25.0).epsilon(1e-14));
  CHECK_THROWS_AS(build_mode(kSquare, {0, 0, 1, 1}), DomainError);
}

TEST_CASE("constraint residuals and quadrants") {
  const Basis b(kRect, {4, 4, 4});
  for (const auto& m : b.modes()) REQUIRE(std::abs(m.constraint_residual()) <= 1e-12);
  CHECK(quadrant_of(1, 1) == Quadrant::SinSin);
  CHECK(quadrant_of(-1, 2) == Quadrant::SinCos);
  CHECK(quadrant_of(1, -2) == Quadrant::CosSin);
  CHECK(quadrant_of(-1, -2) == Quadrant::CosCos);
}

TEST_CASE("pointwise boundary values") {
  const Basis b(kSquare, {3, 3, 3});
  for (const auto& m : b.modes()) {
    for (double x : {0.3, 2.0}) {
      REQUIRE(evaluate_mode(m, x, 1.1, -0.5 * kPi)[2] == 0.0);
      const double scale = std::sqrt(m.lambda);
      REQUIRE(std::abs(evaluate_mode(m, x, 1.1, 0.5 * kPi)[2]) <= 1e-12);
      REQUIRE(std::abs(evaluate_mode_gradient(m, x, 1.1, 0.5 * kPi)[0][2]) <= 1e-12 * scale);
      REQUIRE(std::abs(evaluate_mode_gradient(m, x, 1.1, -0.5 * kPi)[0][2]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("unit norm on the 16 x 16 x 17 grid") {
  const Domain& d = kSquare;
  for (int j : {1, -1}) {
    for (int l : {1, -1}) {
      for (int iota : {1, 2}) {
        const ModeData m = build_mode(d, {j, l, 1, iota});
        double s = 0.0;
        for (int i = 0; i < 16; ++i) {
          for (int q = 0; q < 16; ++q) {
            for (int k = 0; k < 17; ++k) {
              const double wz = (k == 0 || k == 16) ? 0.5 : 1.0;
              const Vec3 v = evaluate_mode(m, d.Lx * i / 16, d.Ly * q / 16, -0.5 * d.h + d.h * k / 16);
              s += wz * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            }
          }
        }
        s *= d.Lx / 16 * d.Ly / 16 * d.h / 16;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("norm by Gauss-Legendre quadrature, axis modes included") {
  for (const ModeIndex idx : {ModeIndex{1, 0, 2, 1}, ModeIndex{-1, 0, 1, 2}, ModeIndex{0, 2, 1, 1},
                              ModeIndex{0, -1, 3, 2}, ModeIndex{2, -1, 1, 1}}) {
    const ModeData m = build_mode(kRect, idx);
    const double n2 = oracle::integrate_box(
        kRect,
        [&](double x, double y, double z) {
          const Vec3 v = evaluate_mode(m, x, y, z);
          return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        },
        6);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Gram matrix is the identity") {
  CHECK(gram_deviation(kSquare, {4, 4, 4}) <= 1e-10);
  CHECK(gram_deviation(kRect, {4, 4, 4}) <= 1e-10);
  CHECK(gram_deviation(Domain{3.0, 5.0, 1.7, 0.1}, {3, 2, 3}) <= 1e-10);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  const Basis b(kRect, {2, 2, 2});
  const double ds = 1e-5;
  for (const auto& m : b.modes()) {
    const double x = 0.71, y = 1.93, z = 0.37;
    const Mat3 g = evaluate_mode_gradient(m, x, y, z);
    const Vec3 lap = evaluate_mode_laplacian(m, x, y, z);
    for (int c = 0; c < 3; ++c) {
      const double dx = oracle::central_difference([&](double s) { return evaluate_mode(m, s, y, z)[c]; }, x, ds);
      const double dy = oracle::central_difference([&](double s) { return evaluate_mode(m, x, s, z)[c]; }, y, ds);
      const double dz = oracle::central_difference([&](double s) { return evaluate_mode(m, x, y, s)[c]; }, z, ds);
      REQUIRE(std::abs(dx - g[c][0]) <= 1e-8);
      REQUIRE(std::abs(dy - g[c][1]) <= 1e-8);
      REQUIRE(std::abs(dz - g[c][2]) <= 1e-8);
      REQUIRE(std::abs(lap[c] + m.lambda * evaluate_mode(m, x, y, z)[c]) <= 1e-12 * m.lambda);
    }
    REQUIRE(std::abs(g[0][0] + g[1][1] + g[2][2]) <= 1e-12 * std::sqrt(m.lambda));
  }
}

TEST_CASE("eigenvalue multiplicity") {
  const Truncation t{4, 4, 4};
  CHECK(eigenvalue_multiplicity(kRect, 2.0, t) == 4);
  CHECK(eigenvalue_multiplicity(kSquare, 2.0, t) == 8);
  const Domain generic{2 * kPi, 2 * kPi * 1.3, kPi * 0.77, 0.1};
  const double lam = build_mode(generic, {1, 1, 1, 1}).lambda;
  CHECK(eigenvalue_multiplicity(generic, lam, t) == 8);
  const Domain generic_rect{2 * kPi, 2 * kPi * 0.61, kPi * 1.13, 0.1};
  double first = 1e300;
  for (const auto& m : Basis(generic_rect, t).modes()) first = std::min(first, m.lambda);
  CHECK(eigenvalue_multiplicity(generic_rect, first, t) == 4);
  CHECK(eigenvalue_multiplicity(kSquare, 2.5, t) == 0);
}

TEST_CASE("exact keys detect rational aspect ratios") {
  CHECK(SpectralKeys(kRect).exact());
  CHECK(SpectralKeys(kSquare).exact());
  CHECK(SpectralKeys(kSquare).same_lambda(3, 4, 1, 5, 0, 1));
  CHECK_FALSE(SpectralKeys(kSquare).same_lambda(3, 4, 1, 5, 0, 2));
  CHECK(SpectralKeys(kRect).same_kappa_bar(2, 0, 0, 1));
}

TEST_CASE("shells and checksum") {
  const Basis b(kSquare, {2, 2, 1});
  std::vector<double> expect{1.0, std::sqrt(2.0), 2.0, std::sqrt(5.0), std::sqrt(8.0)};
  REQUIRE(b.shells().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(b.shells()[i] == doctest::Approx(expect[i]));
  CHECK(b.shell_begin(0) == 0);
  CHECK(b.shell_begin(b.shells().size()) == b.size());
  CHECK(b.first_mode_at_or_above(1.5) == b.shell_begin(2));
  CHECK(b.ordering_checksum() == Basis(kSquare, {2, 2, 1}).ordering_checksum());
  CHECK(b.ordering_checksum() != Basis(kSquare, {2, 2, 2}).ordering_checksum());
}

TEST_CASE("invariant suite") {
  for (const Domain& d : {kSquare, kRect}) {
    const auto r = run_basis_check(d, {4, 4, 4});
    CHECK(r.gram <= 1e-10);
    CHECK(r.divergence <= 1e-10);
    CHECK(r.eigen_relation <= 1e-10);
    CHECK(r.boundary <= 1e-10);
    CHECK(r.horizontal_mean <= 1e-10);
    CHECK(r.passed());
  }
  CHECK(run_basis_check(kSquare, {2, 2, 2}).first_multiplicity == 8);
  CHECK(run_basis_check(kRect, {2, 2, 2}).first_multiplicity == 4);
  CHECK_FALSE(run_basis_check(kSquare, {2, 2, 2}, 5).passed());
}

TEST_CASE("mode table") {
  const Basis b(kSquare, {1, 1, 1});
  const std::string csv = mode_table_csv(b);
  CHECK(csv.rfind("j,l,k,iota,lambda,kappa_bar,A,B,C\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}
