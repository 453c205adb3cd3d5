#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freeshear/diagnostics.hpp"
#include "freeshear/errors.hpp"
#include "quadrature.hpp"

using namespace freeshear;

namespace {

constexpr double kPi = std::numbers::pi;
const Domain kBox{2 * kPi, 2 * kPi, kPi, 0.05};
const ShearProfile kMixing = ShearProfile::mixing_layer(1.0, -1.0, 1.0);

// Two batch means m -/+ d: mean m, standard error d.
FieldStat stat(double m, double d = 0.0) { return FieldStat{m, {m - d, m + d}}; }

// Stationary ledger on n shells: eps per band, production only in the first
// band, flux from the tail balance flux = eps_high - prod_high.
CascadeReport synthetic_report(std::size_t n, double S, double nu, double se) {
  CascadeReport r;
  r.domain = Domain{2 * kPi, 2 * kPi, kPi, nu};
  r.S = S;
  r.kappa1 = r.domain.kappa1();
  r.samples = 100;
  std::vector<double> band(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.kappa.push_back(1.0 + static_cast<double>(i));
    band[i] = 1.0 / (1.0 + static_cast<double>(i));
  }
  double total = 0.0;
  for (double b : band) total += b;
  double low = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double high = total - low;
    const double prod = i == 0 ? total : 0.0;
    r.eps_low.push_back(stat(low, se));
    r.eps_high.push_back(stat(high, se));
    r.eps_high_xy.push_back(stat(0.6 * high, se));
    r.eps_high_z.push_back(stat(0.4 * high, se));
    r.prod_high.push_back(stat(prod, se));
    r.flux.push_back(stat(high - prod, se));
    r.E_high.push_back(stat(high / (r.kappa[i] * r.kappa[i]), se));
    r.Gxy_high.push_back(stat(0.6 * high, se));
    r.Kcal.push_back(r.kappa[i] * 1.2);
    low += band[i];
  }
  r.eps_tot = stat(total, se);
  r.E = stat(1.0, se);
  r.G = stat(total / nu, se);
  return r;
}

}  // namespace

TEST_CASE("ledger identities on random fields") {
  const auto b = make_basis(Domain{2 * kPi, kPi, kPi, 0.05}, {3, 3, 3});
  const GalerkinSystem sys(b, kMixing);
  const double k13 = std::pow(b->domain().kappa1(), 3);
  const double kmax = b->shells().back();
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralField u = random_field(b, 300 + trial);
    const SpectralField N = sys.nonlinear(u);
    const BudgetSample s = budget_sample(sys, u, N, 1.5);
    const Norms n = norms(u);
    const double scale = k13 * n.E * std::sqrt(n.G);
    CHECK(s.t == 1.5);
    CHECK(s.shells() == b->shells().size());
    REQUIRE(std::abs(s.flux[0]) <= 1e-10 * scale);
    REQUIRE(s.eps_tot == doctest::Approx(b->domain().nu * k13 * n.G).epsilon(1e-13));
    REQUIRE(s.eps_low[0] == 0.0);
    REQUIRE(inner(N, band_project(u, {kmax * 1.01})) == 0.0);
    for (std::size_t i = 0; i < s.shells(); ++i) {
      REQUIRE(s.eps_high[i] == s.eps_high_xy[i] + s.eps_high_z[i]);
      REQUIRE(std::abs(s.eps_low[i] + s.eps_high[i] - s.eps_tot) <= 1e-14 * s.eps_tot);
      REQUIRE(s.eps_low[i] >= 0.0);
      REQUIRE(s.eps_high_z[i] >= 0.0);
      REQUIRE(s.Kcal[i] >= s.kappa[i] * (1 - 1e-14));
      REQUIRE(s.Kcal[i] <= kmax * (1 + 1e-14));
      REQUIRE(s.eps_high_xy[i] >= b->domain().nu * k13 * s.kappa[i] * s.kappa[i] * s.E_high[i] * (1 - 1e-14));
      for (std::size_t j = i + 1; j < s.shells(); ++j) {
        const double direct = -k13 * inner(N, band_project(u, {s.kappa[i], s.kappa[j]}));
        REQUIRE(std::abs((s.flux[i] - s.flux[j]) - direct) <= 1e-12 * scale);
      }
      const SpectralField Pu = sys.production(u);
      const double p = -k13 * inner(Pu, band_project(u, {s.kappa[i]}));
      REQUIRE(std::abs(s.prod_high[i] - p) <= 1e-13 * k13 * std::sqrt(norms(Pu).E * n.E));
    }
  }
}

TEST_CASE("production bounds hold pathwise") {
  const auto b = make_basis(kBox, {3, 3, 3});
  SUBCASE("uniform mean flow has no production") {
    const GalerkinSystem sys(b, ShearProfile::mixing_layer(0.4, 0.4, 1.0));
    const SpectralField u = random_field(b, 1);
    const BudgetSample s = budget_sample(sys, u, sys.nonlinear(u));
    for (double p : s.prod_high) CHECK(p == 0.0);
    for (const auto& pb : production_bounds_check(s, 0.0)) {
      CHECK(pb.wavenumber);
      CHECK(pb.taylor);
    }
  }
  SUBCASE("random fields") {
    for (const ShearProfile& p : {kMixing, ShearProfile::jet_sech2(1.0, 0.3)}) {
      const GalerkinSystem sys(b, p);
      const double ks = std::sqrt(sys.S() / kBox.nu);
      std::size_t violations = 0;
      for (int trial = 0; trial < 500; ++trial) {
        const SpectralField u = random_field(b, 7000 + trial);
        const BudgetSample s = budget_sample(sys, u, SpectralField(b));
        for (const auto& pb : production_bounds_check(s, ks)) violations += !pb.wavenumber + !pb.taylor;
      }
      CHECK(violations == 0);
    }
  }
  SUBCASE("fields on one horizontal block") {
    // A single mode never produces: the x and z components are orthogonal.
    const ShearProfile jet = ShearProfile::jet_gauss(1.0, 0.5);
    const GalerkinSystem sys(b, jet);
    const double ks = std::sqrt(sys.S() / kBox.nu);
    const double k13 = std::pow(kBox.kappa1(), 3);
    for (std::size_t m = 0; m < b->size(); m += 7) {
      SpectralField u(b);
      u[m] = 1.0;
      const BudgetSample s = budget_sample(sys, u, SpectralField(b));
      const std::size_t sh = b->shell_of(m);
      CHECK(s.Kcal[sh] == doctest::Approx(b->mode(m).kappa_bar).epsilon(1e-14));
      CHECK(s.prod_high[sh] == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
    }
    // On one block the supremum of |P_high| / bound is the top eigenvalue of
    // the symmetrised production block over S/2; the bound holds with slack.
    for (const auto& blk : sys.shear().blocks) {
      if (blk.abs_j + blk.abs_l > 2) continue;
      const std::size_t n = blk.modes.size();
      std::vector<double> a(n * n), vecs;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (blk.production[i * n + j] + blk.production[j * n + i]);
      }
      const auto [values, vectors] = oracle::symmetric_eigen(a, n);
      std::size_t top = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(values[i]) > std::abs(values[top])) top = i;
      }
      SpectralField u(b);
      for (std::size_t i = 0; i < n; ++i) u[blk.modes[i]] = vectors[i * n + top];
      const BudgetSample s = budget_sample(sys, u, SpectralField(b));
      const std::size_t sh = b->shell_of(blk.modes[0]);
      const double bound = ks * ks / (2 * s.kappa[sh] * s.kappa[sh]) * s.eps_high_xy[sh];
      CHECK(bound == doctest::Approx(0.5 * sys.S() * k13).epsilon(1e-13));
      const double ratio = std::abs(s.prod_high[sh]) / bound;
      CHECK(ratio == doctest::Approx(std::abs(values[top]) / (0.5 * sys.S())).epsilon(1e-10));
      CHECK(ratio <= 1.0);
      CHECK(ratio > 0.3);
      for (const auto& pb : production_bounds_check(s, ks)) CHECK(pb.wavenumber);
    }
  }
}

TEST_CASE("cascade audit") {
  SUBCASE("delta one") {
    const CascadeReport r = synthetic_report(6, 1e-4, 0.01, 0.01);
    const AuditResult a = cascade_audit(r, 1.0);
    for (const auto& s : a.shells) {
      CHECK(s.condition_A);
      CHECK(s.condition_B);
      CHECK(s.lower == 0.0);
      CHECK(s.lower_ok);
    }
    CHECK(a.verdict == Verdict::Pass);
  }
  SUBCASE("flux equal to dissipation, no shear") {
    CascadeReport r = synthetic_report(6, 0.0, 0.01, 0.0);
    for (auto& f : r.flux) f = r.eps_tot;
    for (double delta : {0.05, 0.3, 0.5, 0.9}) {
      const AuditResult a = cascade_audit(r, delta);
      CHECK(a.verdict == Verdict::Pass);
      for (const auto& s : a.shells) {
        CHECK(s.condition_A);
        CHECK(s.lower_ok);
        CHECK(s.upper_ok);
      }
    }
  }
  SUBCASE("empty admissible set is vacuous") {
    const CascadeReport r = synthetic_report(6, 100.0, 0.01, 0.01);
    const AuditResult a = cascade_audit(r, 0.5);
    for (const auto& s : a.shells) CHECK_FALSE(s.condition_A);
    CHECK(a.verdict == Verdict::Vacuous);
    CHECK(to_string(a.verdict) == "vacuous");
  }
  SUBCASE("violations are reported as failures") {
    CascadeReport r = synthetic_report(6, 0.0, 0.01, 1e-6);
    r.flux[0] = stat(0.1 * r.eps_tot.mean, 1e-6);
    const AuditResult a = cascade_audit(r, 0.5);
    CHECK_FALSE(a.shells[0].lower_ok);
    CHECK(a.verdict == Verdict::Fail);
    r.flux[0] = stat(2.0 * r.eps_tot.mean, 1e-6);
    CHECK_FALSE(cascade_audit(r, 0.5).shells[0].upper_ok);
  }
  CHECK_THROWS_AS(cascade_audit(synthetic_report(2, 1.0, 1.0, 0.0), 0.0), DomainError);
}

TEST_CASE("flux monotonicity") {
  SUBCASE("no shear: every shell is checked") {
    CascadeReport r = synthetic_report(8, 0.0, 0.01, 1e-3);
    for (std::size_t i = 0; i < 8; ++i) r.flux[i] = stat(1.0 - 0.1 * static_cast<double>(i), 1e-3);
    const MonotonicityResult m = flux_monotonicity_check(r, 0.0);
    CHECK(m.checked.size() == 8);
    CHECK(m.ok());
  }
  SUBCASE("stationary ledger with bounded production") {
    const CascadeReport r = synthetic_report(8, 1.0, 0.01, 1e-3);
    // Production lives in the first band, which kappa_s = 1.5 excludes.
    const MonotonicityResult m = flux_monotonicity_check(r, 1.5);
    CHECK(m.checked.size() == 7);
    CHECK(m.ok());
    CHECK_FALSE(flux_monotonicity_check(r, 0.0).ok());
    CHECK(flux_monotonicity_check(r, 4.0).checked.size() == 6);  // kappa^2 > 8 from kappa = 3

    CascadeReport bad = r;
    bad.flux[5] = stat(bad.flux[2].mean + 1.0, 1e-3);
    bad.flux[7] = stat(-0.5, 1e-3);
    const MonotonicityResult v = flux_monotonicity_check(bad, 1.5);
    CHECK_FALSE(v.ok());
    CHECK(std::find(v.violations.begin(), v.violations.end(), std::pair<std::size_t, std::size_t>{2, 5}) !=
          v.violations.end());
    CHECK(v.negative == std::vector<std::size_t>{7});

    // Error bars absorb small inversions.
    CascadeReport noisy = r;
    noisy.flux[4] = stat(noisy.flux[3].mean + 1e-3, 1e-2);
    CHECK(flux_monotonicity_check(noisy, 1.5).ok());
  }
}

TEST_CASE("stationary closure") {
  const CascadeReport r = synthetic_report(7, 1.0, 0.01, 1e-4);
  const ClosureResult c = stationary_closure_check(r);
  CHECK(c.energy_ok);
  CHECK(c.flux_first_ok);
  CHECK(c.band_ok.size() == 7);
  CHECK(c.ok());
  for (const auto& res : c.band_residual) CHECK(std::abs(res.mean) <= 1e-12);

  CascadeReport broken = r;
  broken.eps_high[3] = stat(broken.eps_high[3].mean + 0.5, 1e-4);
  const ClosureResult cb = stationary_closure_check(broken);
  CHECK_FALSE(cb.ok());
  CHECK(cb.band_ok[1]);
  CHECK_FALSE(cb.band_ok[2]);
  CHECK_FALSE(cb.band_ok[3]);
  CHECK(cb.band_ok[4]);

  CascadeReport leak = r;
  leak.prod_high[0] = stat(leak.prod_high[0].mean * 1.5, 1e-4);
  CHECK_FALSE(stationary_closure_check(leak).energy_ok);
}

TEST_CASE("report from accumulated samples and its JSON round trip") {
  const auto b = make_basis(kBox, {2, 2, 2});
  const GalerkinSystem sys(b, kMixing);
  RunningStats stats(sample_field_names(b->shells().size()), 0.5, 4);
  for (int i = 0; i < 20; ++i) {
    const SpectralField u = random_field(b, 40 + i);
    accumulate(stats, budget_sample(sys, u, sys.nonlinear(u), 0.1 * i));
  }
  CHECK(stats.count() == 15);
  const std::vector<double> kappa(b->shells().begin(), b->shells().end());
  const CascadeReport r = make_report(stats, kBox, sys.S(), kappa);
  CHECK(r.samples == 15);
  CHECK(r.t_begin == doctest::Approx(0.5));
  CHECK(r.eps_tot.blocks.size() == 4);
  CHECK(r.scales.kappa_s == doctest::Approx(std::sqrt(sys.S() / kBox.nu)));
  CHECK(r.scales.kappa_T == doctest::Approx(std::sqrt(r.G.mean / r.E.mean)).epsilon(1e-12));

  const CascadeReport back = report_from_json(report_to_json(r));
  CHECK(back.kappa == r.kappa);
  CHECK(back.eps_tot.mean == r.eps_tot.mean);
  CHECK(back.eps_tot.blocks == r.eps_tot.blocks);
  CHECK(back.flux[2].blocks == r.flux[2].blocks);
  CHECK(back.Kcal.back() == r.Kcal.back());
  CHECK(back.scales.ell_T == r.scales.ell_T);
  CHECK(report_to_json(back) == report_to_json(r));

  CHECK_THROWS_AS(report_from_json("{}"), ConfigError);
  CHECK_THROWS_AS(report_from_json("not json"), ConfigError);

  const auto text = format_audit(r, {cascade_audit(r, 0.5)}, flux_monotonicity_check(r, r.kappa_s()),
                                 stationary_closure_check(r));
  CHECK(text.find("[audit delta=0.5]") != std::string::npos);
  CHECK(text.find("verdict = ") != std::string::npos);
}
