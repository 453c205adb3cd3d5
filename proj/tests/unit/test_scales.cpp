#include <doctest.h>

#include <cmath>
#include <random>

#include "freeshear/errors.hpp"
#include "freeshear/scales.hpp"
#include "frozen.hpp"

using namespace freeshear;

TEST_CASE("closed forms") {
  const Scales s = characteristic_scales(0.8, 2.0, 0.01, 3.0);
  CHECK(s.kappa_s == doctest::Approx(std::sqrt(300.0)));
  CHECK(s.kappa_C == doctest::Approx(std::pow(3.0, 1.5) / std::sqrt(0.8)));
  CHECK(s.kappa_eta == doctest::Approx(std::pow(0.8 / 1e-6, 0.25)));
  CHECK(s.kappa_T == doctest::Approx(std::sqrt(0.8 / (2 * 0.01 * 2.0))));
  CHECK(s.ell_s == doctest::Approx(1.0 / s.kappa_s));
  CHECK(s.ell_C == doctest::Approx(1.0 / s.kappa_C));
  CHECK(s.ell_eta == doctest::Approx(1.0 / s.kappa_eta));
  CHECK(s.ell_T == doctest::Approx(std::sqrt(10 * 0.01 * 2.0 / 0.8)));
}

TEST_CASE("measured shear flows") {
  const Scales champagne = scales_from_lengths(12.9, 1.08, 25.2, std::nan(""));
  CHECK(champagne.ell_eta == doctest::Approx(frozen::kChampagneEllEta).epsilon(1e-12));
  CHECK(std::abs(champagne.ell_eta - 0.22) / 0.22 <= 0.02);
  CHECK(std::round(champagne.ell_eta * 1000) == 224);
  CHECK(std::isnan(champagne.kappa_T));

  const Scales tavoularis = scales_from_lengths(46.8, 0.57, 5.78, std::nan(""));
  CHECK(tavoularis.ell_eta == doctest::Approx(frozen::kTavoularisEllEta).epsilon(1e-12));
  CHECK(std::abs(tavoularis.ell_eta - 0.177) / 0.177 <= 0.02);
  CHECK(std::round(tavoularis.ell_eta * 1000) == 179);

  const RecoveredInputs in = recover_inputs(12.9, 1.08, 25.2);
  CHECK(in.nu == doctest::Approx(1.08 * 1.08 * 12.9));
  CHECK(in.eps == doctest::Approx(25.2 * 25.2 * std::pow(12.9, 3)));
  const Scales direct = characteristic_scales(in.eps, 1.0, in.nu, 12.9);
  CHECK(direct.ell_s == doctest::Approx(1.08).epsilon(1e-13));
  CHECK(direct.ell_C == doctest::Approx(25.2).epsilon(1e-13));
}

TEST_CASE("shear-Corrsin-Kolmogorov identity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logu(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const Scales s = characteristic_scales(std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)),
                                           std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng)));
    REQUIRE(std::abs(s.identity_ratio - 1.0) <= 1e-12);
    REQUIRE(std::abs(std::pow(s.kappa_s, 3) / (s.kappa_eta * s.kappa_eta) / s.kappa_C - 1.0) <= 1e-12);
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(characteristic_scales(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(characteristic_scales(1.0, -1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(characteristic_scales(1.0, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(characteristic_scales(1.0, 1.0, 1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(scales_from_lengths(1.0, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(kolmogorov_heuristic(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(kolmogorov_heuristic(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(heuristic_threshold(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("Kolmogorov heuristic") {
  CHECK(kolmogorov_heuristic(5.0, 5.0) == doctest::Approx(25.0 / 3.0).epsilon(1e-14));
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = kolmogorov_heuristic(0.1 * i, 10.0);
    REQUIRE(v > prev);
    prev = v;
  }
  // At the threshold the heuristic meets condition A with equality.
  const double ks = 3.0, keta = 400.0, delta = 0.5;
  const double kb = heuristic_threshold(ks, keta, delta);
  CHECK(ks * ks / (2 * kolmogorov_heuristic(kb, keta)) == doctest::Approx(delta).epsilon(1e-13));

  // Threshold over kappa_C is the constant (3 / (2 delta))^(3/2).
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> logu(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double S = std::pow(10.0, logu(rng)), eps = std::pow(10.0, logu(rng)), nu = std::pow(10.0, logu(rng));
    const Scales s = characteristic_scales(eps, 1.0, nu, S);
    const double th = heuristic_threshold(s.kappa_s, s.kappa_eta, delta);
    REQUIRE(th / s.kappa_C == doctest::Approx(std::pow(1.5 / delta, 1.5)).epsilon(1e-12));
  }
}
