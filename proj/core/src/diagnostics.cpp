#include "freeshear/diagnostics.hpp"

#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "format.hpp"
#include "freeshear/errors.hpp"

namespace freeshear {

namespace {

using json = nlohmann::json;
using detail::format_double;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFloorRel = 1e-12;

const char* const kShellFields[] = {"eps_low", "eps_high", "eps_high_xy", "eps_high_z",
                                    "flux",    "prod_high", "E_high",    "Gxy_high"};

double se_or_zero(const FieldStat& s) {
  const double se = s.standard_error();
  return std::isnan(se) ? 0.0 : se;
}

json stat_to_json(const FieldStat& s) {
  const double se = s.standard_error();
  return json{{"mean", s.mean}, {"se", std::isnan(se) ? json(nullptr) : json(se)}, {"blocks", s.blocks}};
}

double number_or_nan(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

FieldStat stat_from_json(const json& j) {
  FieldStat s;
  s.mean = number_or_nan(j.at("mean"));
  for (const auto& b : j.at("blocks")) s.blocks.push_back(number_or_nan(b));
  return s;
}

}  // namespace

BudgetSample budget_sample(const GalerkinSystem& system, const SpectralField& u,
                           const SpectralField& N, double t) {
  const Basis& basis = *system.basis();
  const double k1 = basis.domain().kappa1();
  const double k13 = k1 * k1 * k1;
  const double nu = basis.domain().nu;
  const SpectralField Pu = system.production(u);
  const std::size_t ns = basis.shells().size();

  BudgetSample s;
  s.t = t;
  s.kappa.assign(basis.shells().begin(), basis.shells().end());
  std::vector<double> e(ns, 0.0), gxy(ns, 0.0), gz(ns, 0.0), fl(ns, 0.0), pr(ns, 0.0);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const auto& mode = basis.mode(m);
    const std::size_t sh = basis.shell_of(m);
    const double c2 = u[m] * u[m];
    e[sh] += c2;
    gxy[sh] += mode.kappa_bar * mode.kappa_bar * c2;
    gz[sh] += mode.gamma * mode.gamma * c2;
    fl[sh] += u[m] * N[m];
    pr[sh] += u[m] * Pu[m];
  }
  s.eps_low.assign(ns, 0.0);
  s.eps_high.assign(ns, 0.0);
  s.eps_high_xy.assign(ns, 0.0);
  s.eps_high_z.assign(ns, 0.0);
  s.flux.assign(ns, 0.0);
  s.prod_high.assign(ns, 0.0);
  s.E_high.assign(ns, 0.0);
  s.Gxy_high.assign(ns, 0.0);
  s.Kcal.assign(ns, kNaN);
  double E = 0.0, Gxy = 0.0, Gz = 0.0, F = 0.0, P = 0.0;
  for (std::size_t i = ns; i-- > 0;) {
    E += e[i];
    Gxy += gxy[i];
    Gz += gz[i];
    F += fl[i];
    P += pr[i];
    s.E_high[i] = E;
    s.Gxy_high[i] = Gxy;
    s.eps_high_xy[i] = nu * k13 * Gxy;
    s.eps_high_z[i] = nu * k13 * Gz;
    s.eps_high[i] = s.eps_high_xy[i] + s.eps_high_z[i];
    s.flux[i] = -k13 * F;
    s.prod_high[i] = -k13 * P;
    if (E > 0.0) s.Kcal[i] = std::sqrt(Gxy / E);
  }
  s.E = E;
  s.G = Gxy + Gz;
  s.eps_tot = nu * k13 * s.G;
  double low = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    s.eps_low[i] = nu * k13 * low;
    low += gxy[i] + gz[i];
  }
  return s;
}

std::vector<ProductionBound> production_bounds_check(const BudgetSample& sample, double kappa_s,
                                                     double rel_tol) {
  std::vector<ProductionBound> out(sample.shells());
  const double ks2 = kappa_s * kappa_s;
  auto holds = [&](double lhs, double rhs) { return lhs <= rhs + rel_tol * (std::abs(rhs) + lhs); };
  for (std::size_t i = 0; i < sample.shells(); ++i) {
    const double P = std::abs(sample.prod_high[i]);
    const double exy = sample.eps_high_xy[i];
    const double kb = sample.kappa[i];
    out[i].wavenumber = holds(P, ks2 / (2.0 * kb * kb) * exy);
    const double K = sample.Kcal[i];
    out[i].taylor = std::isnan(K) ? holds(P, 0.0) : holds(P, ks2 / (2.0 * K * K) * exy);
  }
  return out;
}

std::vector<std::string> sample_field_names(std::size_t shells) {
  std::vector<std::string> names{"E", "G", "eps_tot"};
  for (std::size_t i = 0; i < shells; ++i) {
    for (const char* f : kShellFields) names.push_back(std::string(f) + "_" + std::to_string(i));
  }
  return names;
}

std::vector<double> flatten(const BudgetSample& s) {
  std::vector<double> v{s.E, s.G, s.eps_tot};
  for (std::size_t i = 0; i < s.shells(); ++i) {
    for (double x : {s.eps_low[i], s.eps_high[i], s.eps_high_xy[i], s.eps_high_z[i], s.flux[i],
                     s.prod_high[i], s.E_high[i], s.Gxy_high[i]}) {
      v.push_back(x);
    }
  }
  return v;
}

void accumulate(RunningStats& stats, const BudgetSample& sample) {
  stats.accumulate(sample.t, flatten(sample));
}

double CascadeReport::kappa_s() const { return std::sqrt(S / domain.nu); }

CascadeReport make_report(const RunningStats& stats, const Domain& domain, double S,
                          const std::vector<double>& kappa) {
  CascadeReport r;
  r.domain = domain;
  r.S = S;
  r.kappa1 = domain.kappa1();
  r.samples = stats.count();
  r.t_begin = stats.first_time();
  r.t_end = stats.last_time();
  r.kappa = kappa;
  r.E = stats.stat(stats.index_of("E"));
  r.G = stats.stat(stats.index_of("G"));
  r.eps_tot = stats.stat(stats.index_of("eps_tot"));
  std::vector<FieldStat>* targets[] = {&r.eps_low, &r.eps_high, &r.eps_high_xy, &r.eps_high_z,
                                       &r.flux,    &r.prod_high, &r.E_high,     &r.Gxy_high};
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    for (std::size_t f = 0; f < 8; ++f) {
      targets[f]->push_back(
          stats.stat(stats.index_of(std::string(kShellFields[f]) + "_" + std::to_string(i))));
    }
    const double eh = r.E_high.back().mean;
    r.Kcal.push_back(eh > 0.0 ? std::sqrt(r.Gxy_high.back().mean / eh) : kNaN);
  }
  const double k13 = r.kappa1 * r.kappa1 * r.kappa1;
  const double K = 0.5 * k13 * r.E.mean;
  if (r.eps_tot.mean > 0.0 && S > 0.0 && K > 0.0) {
    r.scales = characteristic_scales(r.eps_tot.mean, K, domain.nu, S);
  }
  return r;
}

std::string report_to_json(const CascadeReport& r) {
  json j;
  j["format"] = "freeshear-report-v1";
  j["domain"] = {{"Lx", r.domain.Lx}, {"Ly", r.domain.Ly}, {"h", r.domain.h}, {"nu", r.domain.nu}};
  j["S"] = r.S;
  j["kappa1"] = r.kappa1;
  j["samples"] = r.samples;
  j["t_begin"] = r.t_begin;
  j["t_end"] = r.t_end;
  j["kappa"] = r.kappa;
  j["E"] = stat_to_json(r.E);
  j["G"] = stat_to_json(r.G);
  j["eps_tot"] = stat_to_json(r.eps_tot);
  const std::vector<FieldStat>* sources[] = {&r.eps_low, &r.eps_high, &r.eps_high_xy,
                                             &r.eps_high_z, &r.flux, &r.prod_high,
                                             &r.E_high, &r.Gxy_high};
  for (std::size_t f = 0; f < 8; ++f) {
    json arr = json::array();
    for (const auto& s : *sources[f]) arr.push_back(stat_to_json(s));
    j[kShellFields[f]] = arr;
  }
  json kc = json::array();
  for (double k : r.Kcal) kc.push_back(std::isnan(k) ? json(nullptr) : json(k));
  j["Kcal"] = kc;
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  j["scales"] = {{"kappa_s", num(r.scales.kappa_s)},     {"kappa_C", num(r.scales.kappa_C)},
                 {"kappa_eta", num(r.scales.kappa_eta)}, {"kappa_T", num(r.scales.kappa_T)},
                 {"ell_s", num(r.scales.ell_s)},         {"ell_C", num(r.scales.ell_C)},
                 {"ell_eta", num(r.scales.ell_eta)},     {"ell_T", num(r.scales.ell_T)}};
  return j.dump(2) + "\n";
}

CascadeReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "freeshear-report-v1") {
      throw ConfigError("report: unsupported or missing format tag");
    }
    CascadeReport r;
    const auto& d = j.at("domain");
    r.domain = {d.at("Lx").get<double>(), d.at("Ly").get<double>(), d.at("h").get<double>(),
                d.at("nu").get<double>()};
    r.S = j.at("S").get<double>();
    r.kappa1 = j.at("kappa1").get<double>();
    r.samples = j.at("samples").get<std::size_t>();
    r.t_begin = j.at("t_begin").get<double>();
    r.t_end = j.at("t_end").get<double>();
    r.kappa = j.at("kappa").get<std::vector<double>>();
    r.E = stat_from_json(j.at("E"));
    r.G = stat_from_json(j.at("G"));
    r.eps_tot = stat_from_json(j.at("eps_tot"));
    std::vector<FieldStat>* targets[] = {&r.eps_low, &r.eps_high, &r.eps_high_xy, &r.eps_high_z,
                                         &r.flux,    &r.prod_high, &r.E_high,     &r.Gxy_high};
    for (std::size_t f = 0; f < 8; ++f) {
      const auto& arr = j.at(kShellFields[f]);
      if (arr.size() != r.kappa.size()) {
        throw ConfigError(std::string("report: field '") + kShellFields[f] + "' has wrong length");
      }
      for (const auto& s : arr) targets[f]->push_back(stat_from_json(s));
    }
    for (const auto& k : j.at("Kcal")) r.Kcal.push_back(number_or_nan(k));
    const auto& sc = j.at("scales");
    r.scales = {number_or_nan(sc.at("kappa_s")), number_or_nan(sc.at("kappa_C")),
                number_or_nan(sc.at("kappa_eta")), number_or_nan(sc.at("kappa_T")),
                number_or_nan(sc.at("ell_s")),   number_or_nan(sc.at("ell_C")),
                number_or_nan(sc.at("ell_eta")), number_or_nan(sc.at("ell_T")), 0.0};
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

bool within_two_se(const FieldStat& s, double floor) {
  return std::abs(s.mean) <= 2.0 * se_or_zero(s) + floor;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "unknown";
}

AuditResult cascade_audit(const CascadeReport& r, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("audit: delta must be positive");
  AuditResult out;
  out.delta = delta;
  const double eps = r.eps_tot.mean;
  const double floor = kFloorRel * std::abs(eps);
  const double ks2 = r.kappa_s() * r.kappa_s();
  bool any = false, all_ok = true;
  for (std::size_t i = 0; i < r.shells(); ++i) {
    ShellAudit a;
    a.kappa = r.kappa[i];
    a.Kcal = r.Kcal[i];
    a.condition_A = !std::isnan(a.Kcal) && a.Kcal > 0.0 && ks2 / (2.0 * a.Kcal * a.Kcal) <= delta;
    a.condition_B = eps > 0.0 && r.eps_low[i].mean / eps <= delta;
    a.flux = r.flux[i].mean;
    a.lower = (1.0 - delta) * (1.0 - delta) * eps;
    a.upper = (1.0 + delta) * eps;
    const FieldStat lo = combine({{&r.flux[i], 1.0}, {&r.eps_tot, -(1.0 - delta) * (1.0 - delta)}});
    const FieldStat hi = combine({{&r.eps_tot, 1.0 + delta}, {&r.flux[i], -1.0}});
    a.se_lower = se_or_zero(lo);
    a.se_upper = se_or_zero(hi);
    a.lower_ok = lo.mean >= -2.0 * a.se_lower - floor;
    a.upper_ok = hi.mean >= -2.0 * a.se_upper - floor;
    if (a.admissible()) {
      any = true;
      all_ok = all_ok && a.lower_ok && a.upper_ok;
    }
    out.shells.push_back(a);
  }
  out.verdict = !any ? Verdict::Vacuous : (all_ok ? Verdict::Pass : Verdict::Fail);
  return out;
}

MonotonicityResult flux_monotonicity_check(const CascadeReport& r, double kappa_s) {
  MonotonicityResult out;
  const double floor = kFloorRel * std::abs(r.eps_tot.mean);
  for (std::size_t i = 0; i < r.shells(); ++i) {
    if (r.kappa[i] * r.kappa[i] > 0.5 * kappa_s * kappa_s) out.checked.push_back(i);
  }
  for (std::size_t x = 0; x < out.checked.size(); ++x) {
    const std::size_t a = out.checked[x];
    if (r.flux[a].mean < -2.0 * se_or_zero(r.flux[a]) - floor) out.negative.push_back(a);
    for (std::size_t y = x + 1; y < out.checked.size(); ++y) {
      const std::size_t b = out.checked[y];
      const FieldStat d = combine({{&r.flux[a], 1.0}, {&r.flux[b], -1.0}});
      if (d.mean < -2.0 * se_or_zero(d) - floor) out.violations.emplace_back(a, b);
    }
  }
  return out;
}

bool ClosureResult::ok() const {
  if (!energy_ok || !flux_first_ok) return false;
  for (bool b : band_ok) {
    if (!b) return false;
  }
  return true;
}

ClosureResult stationary_closure_check(const CascadeReport& r) {
  ClosureResult out;
  const double floor = kFloorRel * std::abs(r.eps_tot.mean);
  const std::size_t ns = r.shells();
  if (ns == 0) return out;
  out.eps_minus_production = combine({{&r.eps_tot, 1.0}, {&r.prod_high[0], -1.0}});
  out.flux_first = r.flux[0];
  out.energy_ok = within_two_se(out.eps_minus_production, floor);
  out.flux_first_ok = within_two_se(out.flux_first, floor);
  for (std::size_t i = 0; i < ns; ++i) {
    FieldStat res;
    if (i + 1 < ns) {
      res = combine({{&r.eps_high[i], 1.0}, {&r.eps_high[i + 1], -1.0},
                     {&r.flux[i], -1.0}, {&r.flux[i + 1], 1.0},
                     {&r.prod_high[i], -1.0}, {&r.prod_high[i + 1], 1.0}});
    } else {
      res = combine({{&r.eps_high[i], 1.0}, {&r.flux[i], -1.0}, {&r.prod_high[i], -1.0}});
    }
    out.band_ok.push_back(within_two_se(res, floor));
    out.band_residual.push_back(std::move(res));
  }
  return out;
}

std::string format_audit(const CascadeReport& r, const std::vector<AuditResult>& audits,
                         const MonotonicityResult& mono, const ClosureResult& closure) {
  std::ostringstream os;
  auto f = [](double v) { return format_double(v); };
  auto ok = [](bool b) { return b ? "ok" : "FAIL"; };
  os << "[run]\n";
  os << "samples = " << r.samples << "\n";
  os << "t_begin = " << f(r.t_begin) << "\nt_end = " << f(r.t_end) << "\n";
  os << "blocks = " << r.eps_tot.blocks.size() << "\n";
  os << "S = " << f(r.S) << "\nnu = " << f(r.domain.nu) << "\n";
  os << "eps = " << f(r.eps_tot.mean) << " +- " << f(r.eps_tot.standard_error()) << "\n";
  os << "kappa_s = " << f(r.kappa_s()) << "\nkappa_C = " << f(r.scales.kappa_C)
     << "\nkappa_eta = " << f(r.scales.kappa_eta) << "\nkappa_T = " << f(r.scales.kappa_T) << "\n";

  os << "\n[closure]\n";
  os << "eps_minus_production = " << f(closure.eps_minus_production.mean) << " +- "
     << f(closure.eps_minus_production.standard_error()) << " " << ok(closure.energy_ok) << "\n";
  os << "flux_first_shell = " << f(closure.flux_first.mean) << " +- "
     << f(closure.flux_first.standard_error()) << " " << ok(closure.flux_first_ok) << "\n";
  os << "band,kappa,residual,se,status\n";
  for (std::size_t i = 0; i < closure.band_residual.size(); ++i) {
    os << i << "," << f(r.kappa[i]) << "," << f(closure.band_residual[i].mean) << ","
       << f(closure.band_residual[i].standard_error()) << "," << ok(closure.band_ok[i]) << "\n";
  }
  os << "closure = " << (closure.ok() ? "pass" : "fail") << "\n";

  os << "\n[monotonicity]\n";
  os << "shells_checked = " << mono.checked.size() << "\n";
  for (const auto& [a, b] : mono.violations) {
    os << "violation = " << a << " " << b << "\n";
  }
  for (std::size_t a : mono.negative) os << "negative = " << a << "\n";
  os << "monotonicity = " << (mono.ok() ? "pass" : "fail") << "\n";

  for (const auto& audit : audits) {
    os << "\n[audit delta=" << f(audit.delta) << "]\n";
    os << "shell,kappa,Kcal,condition_A,condition_B,admissible,flux,lower,upper,lower_ok,upper_ok\n";
    for (std::size_t i = 0; i < audit.shells.size(); ++i) {
      const auto& a = audit.shells[i];
      os << i << "," << f(a.kappa) << "," << f(a.Kcal) << "," << a.condition_A << ","
         << a.condition_B << "," << a.admissible() << "," << f(a.flux) << "," << f(a.lower) << ","
         << f(a.upper) << "," << a.lower_ok << "," << a.upper_ok << "\n";
    }
    os << "verdict = " << to_string(audit.verdict) << "\n";
  }
  return os.str();
}

}  // namespace freeshear
