#pragma once

#include <string>
#include <vector>

#include "freeshear/basis.hpp"
#include "freeshear/dynamics.hpp"
#include "freeshear/scales.hpp"
#include "freeshear/stats.hpp"

namespace freeshear {

/// Instantaneous energy-budget ledger. Per-shell arrays are indexed by the
/// distinct kappa_bar values of the basis; "high" means kappa_bar >= shell,
/// "low" means kappa_bar < shell. All rates carry the kappa_1^3 factor.
struct BudgetSample {
  double t = 0.0;
  double E = 0.0;        ///< ||u||^2
  double G = 0.0;        ///< ||grad u||^2
  double eps_tot = 0.0;  ///< nu kappa_1^3 G
  std::vector<double> kappa;
  std::vector<double> eps_low;
  std::vector<double> eps_high;
  std::vector<double> eps_high_xy;
  std::vector<double> eps_high_z;
  std::vector<double> flux;       ///< -kappa_1^3 <(u.grad)u, u_high>
  std::vector<double> prod_high;  ///< -kappa_1^3 <w U' e_x, u_high>
  std::vector<double> E_high;
  std::vector<double> Gxy_high;
  std::vector<double> Kcal;  ///< sqrt(Gxy_high / E_high); NaN for an empty high band

  std::size_t shells() const { return kappa.size(); }
};

/// N must be the nonlinear term of u, as returned by GalerkinSystem::nonlinear.
BudgetSample budget_sample(const GalerkinSystem& system, const SpectralField& u,
                           const SpectralField& N, double t = 0.0);

struct ProductionBound {
  bool wavenumber = true;  ///< |P_high| <= kappa_s^2 / (2 kappa_bar^2) eps_high_xy
  bool taylor = true;      ///< |P_high| <= kappa_s^2 / (2 Kcal^2) eps_high_xy
};

std::vector<ProductionBound> production_bounds_check(const BudgetSample& sample, double kappa_s,
                                                     double rel_tol = 1e-12);

/// Field layout used for time averaging: E, G, eps_tot, then per shell
/// eps_low, eps_high, eps_high_xy, eps_high_z, flux, prod_high, E_high, Gxy_high.
std::vector<std::string> sample_field_names(std::size_t shells);
std::vector<double> flatten(const BudgetSample& sample);
void accumulate(RunningStats& stats, const BudgetSample& sample);

/// Time-averaged ledger with batch-means error bars.
struct CascadeReport {
  Domain domain;
  double S = 0.0;
  double kappa1 = 0.0;
  std::size_t samples = 0;
  double t_begin = 0.0, t_end = 0.0;
  std::vector<double> kappa;

  FieldStat E, G, eps_tot;
  std::vector<FieldStat> eps_low, eps_high, eps_high_xy, eps_high_z, flux, prod_high, E_high,
      Gxy_high;
  /// Ratio of averages sqrt(mean Gxy_high / mean E_high).
  std::vector<double> Kcal;
  /// From mean eps_tot, K = kappa_1^3 mean(E) / 2, nu and S; kappa_T equals
  /// sqrt(mean G / mean E). Zero entries when eps_tot or S vanish.
  Scales scales;

  std::size_t shells() const { return kappa.size(); }
  double kappa_s() const;
};

CascadeReport make_report(const RunningStats& stats, const Domain& domain, double S,
                          const std::vector<double>& kappa);

std::string report_to_json(const CascadeReport& report);
/// Throws ConfigError on malformed input.
CascadeReport report_from_json(const std::string& text);

/// |mean| <= 2 SE + floor, with SE taken as 0 when unavailable.
bool within_two_se(const FieldStat& s, double floor);

enum class Verdict { Pass, Fail, Vacuous };
std::string to_string(Verdict v);

struct ShellAudit {
  double kappa = 0.0;
  double Kcal = 0.0;
  bool condition_A = false;  ///< kappa_s^2 / (2 Kcal^2) <= delta
  bool condition_B = false;  ///< eps_low / eps <= delta
  bool admissible() const { return condition_A && condition_B; }
  double flux = 0.0;
  double lower = 0.0;  ///< (1 - delta)^2 eps
  double upper = 0.0;  ///< (1 + delta) eps
  double se_lower = 0.0, se_upper = 0.0;
  bool lower_ok = true, upper_ok = true;
};

struct AuditResult {
  double delta = 0.0;
  std::vector<ShellAudit> shells;
  Verdict verdict = Verdict::Vacuous;
};

AuditResult cascade_audit(const CascadeReport& report, double delta);

struct MonotonicityResult {
  std::vector<std::size_t> checked;  ///< shells with kappa_bar^2 > kappa_s^2 / 2
  std::vector<std::pair<std::size_t, std::size_t>> violations;  ///< (a, b) with a < b
  std::vector<std::size_t> negative;  ///< shells with flux below -2 SE
  bool ok() const { return violations.empty() && negative.empty(); }
};

MonotonicityResult flux_monotonicity_check(const CascadeReport& report, double kappa_s);

struct ClosureResult {
  FieldStat eps_minus_production;  ///< eps_tot - P_total
  FieldStat flux_first;            ///< flux at the first shell
  std::vector<FieldStat> band_residual;  ///< eps_band - (flux_a - flux_b) - P_band
  bool energy_ok = false;
  bool flux_first_ok = false;
  std::vector<bool> band_ok;
  bool ok() const;
};

/// Time-averaged energy law of the truncated system.
ClosureResult stationary_closure_check(const CascadeReport& report);

/// Structured plain-text audit listing.
std::string format_audit(const CascadeReport& report, const std::vector<AuditResult>& audits,
                         const MonotonicityResult& monotonicity, const ClosureResult& closure);

}  // namespace freeshear
