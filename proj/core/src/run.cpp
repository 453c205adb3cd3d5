#include "freeshear/run.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "format.hpp"
#include "freeshear/errors.hpp"
#include "freeshear/snapshot.hpp"
#include "json_io.hpp"

#ifndef FREESHEAR_VERSION
#define FREESHEAR_VERSION "unknown"
#endif

namespace freeshear {

namespace {

using json = nlohmann::json;
using detail::format_double;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string step_stem(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%08lld", static_cast<long long>(step));
  return buf;
}

}  // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config) {
  std::filesystem::path dir(config.output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0') {
      dir = std::filesystem::path(root) / dir;
    }
  }
  return dir;
}

std::string diagnostics_csv_header(std::size_t shells) {
  std::ostringstream os;
  os << "#schema=freeshear-diagnostics-v1,nshells=" << shells << "\n";
  os << "kind,t,E,eps_tot";
  for (std::size_t i = 0; i < shells; ++i) {
    for (const char* f : {"kappa", "eps_low", "eps_high", "eps_high_xy", "eps_high_z", "flux",
                          "prod_high", "Kcal"}) {
      os << "," << f << "_" << i;
    }
  }
  os << "\n";
  return os.str();
}

std::string diagnostics_csv_row(const BudgetSample& s) {
  std::ostringstream os;
  os << "sample," << format_double(s.t) << "," << format_double(s.E) << ","
     << format_double(s.eps_tot);
  for (std::size_t i = 0; i < s.shells(); ++i) {
    for (double v : {s.kappa[i], s.eps_low[i], s.eps_high[i], s.eps_high_xy[i], s.eps_high_z[i],
                     s.flux[i], s.prod_high[i], s.Kcal[i]}) {
      os << "," << format_double(v);
    }
  }
  os << "\n";
  return os.str();
}

std::string diagnostics_csv_summary(const CascadeReport& r) {
  std::ostringstream os;
  os << "mean," << format_double(r.t_end) << "," << format_double(r.E.mean) << ","
     << format_double(r.eps_tot.mean);
  for (std::size_t i = 0; i < r.shells(); ++i) {
    for (double v : {r.kappa[i], r.eps_low[i].mean, r.eps_high[i].mean, r.eps_high_xy[i].mean,
                     r.eps_high_z[i].mean, r.flux[i].mean, r.prod_high[i].mean, r.Kcal[i]}) {
      os << "," << format_double(v);
    }
  }
  os << "\nstderr," << format_double(r.t_end) << "," << format_double(r.E.standard_error()) << ","
     << format_double(r.eps_tot.standard_error());
  for (std::size_t i = 0; i < r.shells(); ++i) {
    for (double v : {r.kappa[i], r.eps_low[i].standard_error(), r.eps_high[i].standard_error(),
                     r.eps_high_xy[i].standard_error(), r.eps_high_z[i].standard_error(),
                     r.flux[i].standard_error(), r.prod_high[i].standard_error(),
                     std::numeric_limits<double>::quiet_NaN()}) {
      os << "," << format_double(v);
    }
  }
  os << "\n";
  return os.str();
}

namespace {

// One trajectory into dir; samples go to stats. Returns false on blow-up.
bool run_member(const RunConfig& config, const GalerkinSystem& system, std::uint64_t seed,
                const std::filesystem::path& dir, RunningStats& stats, RunOutcome& out,
                const SampleObserver& observer) {
  const BasisPtr& basis = system.basis();
  std::filesystem::create_directories(dir);
  std::filesystem::remove(dir / "FAILED");

  SimState& state = out.state;
  if (!config.resume_from.empty()) {
    state = restore_state(read_snapshot(config.resume_from), basis);
  } else {
    state = SimState{0.0, initial_condition(basis, seed, config.initial_energy), 0, 0.0};
  }

  json manifest;
  manifest["code_version"] = FREESHEAR_VERSION;
  manifest["seed"] = seed;
  manifest["config"] = json::parse(config_to_json(config));
  const GridSize grid = system.transform().grid();
  manifest["grid"] = {{"Nx", grid.Nx}, {"Ny", grid.Ny}, {"Nz", grid.Nz}};
  manifest["modes"] = basis->size();
  manifest["shells"] = basis->shells().size();
  std::ostringstream hex;
  hex << std::hex << basis->ordering_checksum();
  manifest["ordering_checksum"] = hex.str();
  manifest["shear_strength"] = system.S();
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  std::ofstream csv(dir / "diagnostics.csv");
  csv << diagnostics_csv_header(basis->shells().size());

  const double E0 = norms(state.u).E;
  const double t_end = config.end_time();
  try {
    while (state.t < t_end * (1.0 - 1e-12) &&
           (config.max_steps == 0 || state.step < config.max_steps)) {
      const bool sample = state.step % config.sample_every == 0;
      if (sample) {
        const SimState before = state;
        SpectralField N(basis);
        system.step(state, config.integrator, &N);
        const BudgetSample b = budget_sample(system, before.u, N, before.t);
        csv << diagnostics_csv_row(b);
        accumulate(stats, b);
        if (observer) observer(before, b);
      } else {
        system.step(state, config.integrator);
      }
      const double E = norms(state.u).E;
      if (E0 > 0.0 && E > 1e6 * E0) {
        throw BlowUpError("energy exceeded 1e6 times its initial value", state.t);
      }
      if (config.snapshot_every > 0 && state.step % config.snapshot_every == 0) {
        write_snapshot(dir / "snapshots" / step_stem(state.step), make_snapshot(state, *config.profile));
      }
    }
  } catch (const BlowUpError& e) {
    out.blew_up = true;
    std::ostringstream os;
    os << "blow-up: " << e.what() << " (last good time " << format_double(e.last_good_time()) << ")";
    out.message = os.str();
    csv.flush();
    write_text(dir / "FAILED", out.message + "\n");
    return false;
  }
  write_snapshot(dir / "final", make_snapshot(state, *config.profile));
  return true;
}

}  // namespace

RunOutcome run_simulate(const RunConfig& config, const SampleObserver& observer) {
  if (!config.profile) throw ConfigError("profile: missing required field");
  if (!config.ensemble_seeds.empty() && !config.resume_from.empty()) {
    throw ConfigError("resume_from: cannot resume an ensemble run");
  }
  RunOutcome out;
  out.output_dir = resolve_output_dir(config);
  std::filesystem::create_directories(out.output_dir);
  std::filesystem::remove(out.output_dir / "FAILED");

  const BasisPtr basis = make_basis(config.domain, config.truncation);
  const GalerkinSystem system(basis, *config.profile, SystemOptions{true, true, config.grid});
  RunningStats stats(sample_field_names(basis->shells().size()), config.burn_in_time, config.blocks);

  // Ensemble members are pooled: their post-burn-in samples are concatenated
  // before batching.
  if (config.ensemble_seeds.empty()) {
    if (!run_member(config, system, config.seed, out.output_dir, stats, out, observer)) return out;
  } else {
    for (std::uint64_t seed : config.ensemble_seeds) {
      const auto dir = out.output_dir / ("member_" + std::to_string(seed));
      if (!run_member(config, system, seed, dir, stats, out, observer)) {
        write_text(out.output_dir / "FAILED", out.message + " in member " + std::to_string(seed) + "\n");
        return out;
      }
    }
  }

  if (stats.count() > 0) {
    const std::vector<double> kappa(basis->shells().begin(), basis->shells().end());
    CascadeReport report = make_report(stats, config.domain, system.S(), kappa);
    std::ofstream csv(out.output_dir / "diagnostics.csv", config.ensemble_seeds.empty() ? std::ios::app : std::ios::trunc);
    if (!config.ensemble_seeds.empty()) csv << diagnostics_csv_header(kappa.size());
    csv << diagnostics_csv_summary(report);
    write_text(out.output_dir / "report.json", report_to_json(report));
    for (double d : config.deltas) out.audits.push_back(cascade_audit(report, d));
    out.monotonicity = flux_monotonicity_check(report, report.kappa_s());
    out.closure = stationary_closure_check(report);
    write_text(out.output_dir / "audit.txt",
               format_audit(report, out.audits, *out.monotonicity, *out.closure));
    out.report = std::move(report);
  }
  return out;
}

std::string diagnose_snapshots(const std::vector<std::filesystem::path>& snapshots) {
  std::ostringstream os;
  std::size_t shells = 0;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const Snapshot snap = read_snapshot(snapshots[i]);
    if (!snap.profile) throw ConfigError("snapshot '" + snapshots[i].string() + "' has no profile");
    const BasisPtr basis = make_basis(snap.domain, snap.truncation);
    const SimState state = restore_state(snap, basis);
    const GalerkinSystem system(basis, *snap.profile);
    if (i == 0) {
      shells = basis->shells().size();
      os << diagnostics_csv_header(shells);
    } else if (basis->shells().size() != shells) {
      throw ConfigError("diagnose: snapshots use different truncations");
    }
    const SpectralField N = system.nonlinear(state.u);
    os << diagnostics_csv_row(budget_sample(system, state.u, N, state.t));
  }
  return os.str();
}

}  // namespace freeshear
