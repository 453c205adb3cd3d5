#include <doctest.h>

#include <cmath>
#include <random>

#include "freeshear/errors.hpp"
#include "freeshear/profiles.hpp"
#include "frozen.hpp"
#include "quadrature.hpp"

using namespace freeshear;

namespace {

std::vector<ShearProfile> canonical(double delta) {
  return {ShearProfile::mixing_layer(1.0, -1.0, delta), ShearProfile::mixing_layer(3.0, 0.5, delta),
          ShearProfile::jet_sech2(1.5, delta), ShearProfile::jet_gauss(-0.7, delta),
          ShearProfile::wake(1.0, 0.5, delta)};
}

}  // namespace

TEST_CASE("profile values at the centre") {
  const auto ml = eval_profile(ShearProfile::mixing_layer(1.0, -1.0, 1.0), 0.0, 4.0);
  CHECK(ml.U == doctest::Approx(0.0));
  CHECK(ml.dU == doctest::Approx(2.0));
  CHECK(ml.d2U == doctest::Approx(0.0));

  const auto wk = eval_profile(ShearProfile::wake(1.0, 0.5, 1.0), 0.0, 4.0);
  CHECK(wk.U == doctest::Approx(0.5));
  CHECK(wk.dU == doctest::Approx(0.0));
  CHECK(wk.d2U == doctest::Approx(0.5));

  CHECK(eval_profile(ShearProfile::jet_sech2(1.0, 1.0), 10.0, 20.0).U <= 1e-8);
}

TEST_CASE("range and construction errors") {
  const auto p = ShearProfile::mixing_layer(1.0, -1.0, 1.0);
  CHECK_THROWS_AS(eval_profile(p, 2.5, 4.0), DomainError);
  CHECK_THROWS_AS(eval_profile(p, -2.5, 4.0), DomainError);
  CHECK_NOTHROW(eval_profile(p, 2.0, 4.0));
  CHECK_THROWS_AS(ShearProfile::tabulated({0, 1, 2}, {0, 1, 2}), ConfigError);
  CHECK_THROWS_AS(ShearProfile::tabulated({0, 1, 1, 2}, {0, 1, 2, 3}), ConfigError);
  CHECK_THROWS_AS(ShearProfile::tabulated({0, 1, 2, 3}, {0, 1, 2}), ConfigError);
  CHECK_THROWS_AS(ShearProfile::mixing_layer(1.0, -1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(profile_kind_from_string("couette"), ConfigError);
  const auto tab = ShearProfile::tabulated({-1, 0, 1, 2}, {0, 1, 2, 3});
  CHECK_THROWS_AS(eval_profile(tab, -1.5, 4.0), DomainError);
}

TEST_CASE("shear strength closed forms") {
  CHECK(shear_strength(ShearProfile::mixing_layer(1.0, -1.0, 0.5), 10.0) ==
        doctest::Approx(frozen::kMixingS_delta_half).epsilon(1e-14));
  CHECK(shear_strength(ShearProfile::jet_gauss(1.0, 1.0), 10.0) ==
        doctest::Approx(frozen::kJetGaussS).epsilon(1e-14));
  CHECK(shear_strength(ShearProfile::jet_sech2(1.0, 1.0), 10.0) ==
        doctest::Approx(frozen::kJetSech2S).epsilon(1e-14));
  CHECK(shear_strength(ShearProfile::wake(2.0, -1.0, 1.0), 10.0) ==
        doctest::Approx(frozen::kJetGaussS).epsilon(1e-14));
  // Maximiser outside the box: the endpoint value is used.
  const auto narrow = ShearProfile::jet_gauss(1.0, 1.0);
  CHECK(shear_strength(narrow, 1.0) == doctest::Approx(std::abs(narrow(0.5).dU)).epsilon(1e-14));
}

TEST_CASE("tabulated copy of a mixing layer") {
  const auto ml = ShearProfile::mixing_layer(1.0, -1.0, 1.0);
  std::vector<double> z, U;
  for (int i = 0; i <= 400; ++i) {
    z.push_back(-4.0 + 8.0 * i / 400);
    U.push_back(ml(z.back()).U);
  }
  const auto tab = ShearProfile::tabulated(z, U);
  CHECK(shear_strength(tab, 8.0) == doctest::Approx(shear_strength(ml, 8.0)).epsilon(1e-4));
  CHECK(max_speed(tab, 8.0) == doctest::Approx(max_speed(ml, 8.0)).epsilon(1e-4));
  for (double s : {-3.3, -0.4, 0.0, 0.77, 2.9}) {
    CHECK(tab(s).U == doctest::Approx(ml(s).U).epsilon(1e-5));
    CHECK(tab(s).dU == doctest::Approx(ml(s).dU).epsilon(1e-3));
  }
}

TEST_CASE("finite differences match analytic derivatives") {
  std::mt19937_64 rng(7);
  for (double delta : {0.3, 1.0, 2.5}) {
    const double h = 10.0 * delta;
    std::uniform_real_distribution<double> zdist(-0.5 * h, 0.5 * h);
    for (const auto& p : canonical(delta)) {
      const double S = shear_strength(p, h);
      double curv = 0.0;
      for (int i = 0; i <= 2000; ++i) curv = std::max(curv, std::abs(p(-0.5 * h + h * i / 2000).d2U));
      const double ds = 1e-4 * delta;
      for (int i = 0; i < 10000; ++i) {
        const double z = zdist(rng);
        const double fd1 = oracle::central_difference([&](double s) { return p(s).U; }, z, ds);
        const double fd2 = oracle::central_difference([&](double s) { return p(s).dU; }, z, ds);
        REQUIRE(std::abs(fd1 - p(z).dU) <= 1e-6 * S);
        REQUIRE(std::abs(fd2 - p(z).d2U) <= 1e-6 * curv);
      }
    }
  }
}

TEST_CASE("shear strength dominates sampled shear") {
  std::mt19937_64 rng(11);
  auto profiles = canonical(0.8);
  std::vector<double> z, U;
  for (int i = 0; i < 12; ++i) {
    z.push_back(-4.0 + 8.0 * i / 11);
    U.push_back(std::sin(z.back()) + 0.1 * z.back() * z.back());
  }
  profiles.push_back(ShearProfile::tabulated(z, U));
  for (const auto& p : profiles) {
    const double h = 8.0;
    const double S = shear_strength(p, h);
    std::uniform_real_distribution<double> zdist(-0.5 * h, 0.5 * h);
    for (int i = 0; i < 10000; ++i) REQUIRE(std::abs(p(zdist(rng)).dU) <= S * (1.0 + 1e-12));
  }
}

TEST_CASE("shear decays at the walls of a wide box") {
  // tanh reaches the 1e-6 level at h = 10 delta; the jets and the wake need a
  // wider box (about 17 delta for sech^2, 11.2 delta for the Gaussians).
  const double delta = 1.0;
  const auto ml = ShearProfile::mixing_layer(1.0, -1.0, delta);
  CHECK(std::abs(ml(5.0 * delta).dU) <= 1e-6 * shear_strength(ml, 10.0 * delta));
  CHECK(std::abs(ml(-5.0 * delta).dU) <= 1e-6 * shear_strength(ml, 10.0 * delta));
  for (const auto& p : {ShearProfile::jet_sech2(1.0, delta), ShearProfile::jet_gauss(1.0, delta),
                        ShearProfile::wake(1.0, 0.5, delta)}) {
    const double h = 20.0 * delta;
    CHECK(std::abs(p(0.5 * h).dU) <= 1e-6 * shear_strength(p, h));
    CHECK(std::abs(p(-0.5 * h).dU) <= 1e-6 * shear_strength(p, h));
  }
  const auto jet = ShearProfile::jet_sech2(1.0, delta);
  CHECK(std::abs(jet(5.0 * delta).dU) > 1e-6 * shear_strength(jet, 10.0 * delta));
}

TEST_CASE("finite on the whole interval") {
  for (const auto& p : canonical(0.1)) {
    for (int i = 0; i <= 1000; ++i) {
      const auto v = eval_profile(p, -5.0 + 10.0 * i / 1000, 10.0);
      REQUIRE(std::isfinite(v.U));
      REQUIRE(std::isfinite(v.dU));
      REQUIRE(std::isfinite(v.d2U));
    }
  }
}
