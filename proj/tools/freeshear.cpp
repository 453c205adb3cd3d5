#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freeshear/basis_check.hpp"
#include "freeshear/config.hpp"
#include "freeshear/diagnostics.hpp"
#include "freeshear/errors.hpp"
#include "freeshear/run.hpp"
#include "freeshear/scales.hpp"

namespace {

using namespace freeshear;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

int cmd_simulate(const std::string& config_path, const std::string& output_dir) {
  RunConfig config = load_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  const RunOutcome out = run_simulate(config);
  std::cout << "output " << out.output_dir.string() << "\n";
  std::cout << "steps " << out.state.step << "\nt " << num(out.state.t) << "\n";
  if (out.blew_up) {
    std::cerr << out.message << "\n";
    return kExitFailure;
  }
  if (out.report) {
    std::cout << "samples " << out.report->samples << "\n";
    std::cout << "closure " << (out.closure->ok() ? "pass" : "fail") << "\n";
    std::cout << "monotonicity " << (out.monotonicity->ok() ? "pass" : "fail") << "\n";
    for (const auto& a : out.audits) {
      std::cout << "audit delta=" << num(a.delta) << " " << to_string(a.verdict) << "\n";
    }
  }
  return kExitOk;
}

struct BasisCheckArgs {
  std::string config;
  double Lx = 2 * std::numbers::pi, Ly = 2 * std::numbers::pi, h = std::numbers::pi;
  int J = 4, L = 4, K = 4;
  std::string table;
  long corrupt = -1;
};

int cmd_basis_check(const BasisCheckArgs& a) {
  Domain d{a.Lx, a.Ly, a.h, 1.0};
  Truncation t{a.J, a.L, a.K};
  if (!a.config.empty()) {
    const RunConfig c = load_config(a.config);
    d = c.domain;
    t = c.truncation;
  }
  d.validate();
  t.validate();
  std::optional<std::size_t> corrupt;
  if (a.corrupt >= 0) corrupt = static_cast<std::size_t>(a.corrupt);
  const BasisCheckReport r = run_basis_check(d, t, corrupt);
  std::cout << format_basis_check(r);
  if (!a.table.empty()) write_or_print(a.table, mode_table_csv(Basis(d, t)));
  return r.passed() ? kExitOk : kExitFailure;
}

int cmd_diagnose(const std::vector<std::string>& snapshots, const std::string& output) {
  std::vector<std::filesystem::path> paths(snapshots.begin(), snapshots.end());
  write_or_print(output, diagnose_snapshots(paths));
  return kExitOk;
}

struct ScalesArgs {
  std::optional<double> S, nu, eps, K, ell_s, ell_C;
  bool table1 = false;
};

void print_scales_header() {
  std::cout << "name,S,nu,eps,K,kappa_s,kappa_C,kappa_eta,kappa_T,ell_s,ell_C,ell_eta,ell_T,identity_ratio\n";
}

void print_scales_row(const std::string& name, double S, double nu, double eps, double K, const Scales& s) {
  std::cout << name << "," << num(S) << "," << num(nu) << "," << num(eps) << "," << num(K) << ","
            << num(s.kappa_s) << "," << num(s.kappa_C) << "," << num(s.kappa_eta) << ","
            << num(s.kappa_T) << "," << num(s.ell_s) << "," << num(s.ell_C) << ","
            << num(s.ell_eta) << "," << num(s.ell_T) << "," << num(s.identity_ratio) << "\n";
}

int cmd_scales(const ScalesArgs& a) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (a.table1) {
    // Laboratory homogeneous shear flows, lengths in mm and S in 1/s.
    struct Row {
      const char* name;
      double S, ell_s, ell_C;
    };
    print_scales_header();
    for (const Row& r : {Row{"champagne", 12.9, 1.08, 25.2}, Row{"tavoularis_corrsin", 46.8, 0.57, 5.78}}) {
      const RecoveredInputs in = recover_inputs(r.S, r.ell_s, r.ell_C);
      print_scales_row(r.name, r.S, in.nu, in.eps, nan, scales_from_lengths(r.S, r.ell_s, r.ell_C, nan));
    }
    return kExitOk;
  }
  if (!a.S) throw ConfigError("scales: --S is required");
  const double K = a.K.value_or(nan);
  if (a.ell_s || a.ell_C) {
    if (!a.ell_s || !a.ell_C) throw ConfigError("scales: recovery mode needs both --ell-s and --ell-C");
    if (a.nu || a.eps) throw ConfigError("scales: give either (--nu, --eps) or (--ell-s, --ell-C)");
    const RecoveredInputs in = recover_inputs(*a.S, *a.ell_s, *a.ell_C);
    print_scales_header();
    print_scales_row("input", *a.S, in.nu, in.eps, K, scales_from_lengths(*a.S, *a.ell_s, *a.ell_C, K));
    return kExitOk;
  }
  if (!a.nu || !a.eps) throw ConfigError("scales: need --nu and --eps, or --ell-s and --ell-C");
  Scales s;
  if (a.K) {
    s = characteristic_scales(*a.eps, *a.K, *a.nu, *a.S);
  } else {
    s = characteristic_scales(*a.eps, 1.0, *a.nu, *a.S);
    s.kappa_T = s.ell_T = nan;
  }
  print_scales_header();
  print_scales_row("input", *a.S, *a.nu, *a.eps, K, s);
  return kExitOk;
}

int cmd_audit(const std::string& report_path, const std::vector<double>& deltas, const std::string& output) {
  const CascadeReport r = report_from_json(read_file(report_path));
  std::vector<AuditResult> audits;
  for (double d : deltas) audits.push_back(cascade_audit(r, d));
  const MonotonicityResult mono = flux_monotonicity_check(r, r.kappa_s());
  const ClosureResult closure = stationary_closure_check(r);
  write_or_print(output, format_audit(r, audits, mono, closure));
  bool ok = mono.ok() && closure.ok();
  for (const auto& a : audits) ok = ok && a.verdict != Verdict::Fail;
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin simulation and energy-budget audit of sheared turbulence"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FREESHEAR_VERSION_STRING);

  std::string config_path, output_dir;
  auto* sim = app.add_subcommand("simulate", "Run a configured simulation");
  sim->add_option("config", config_path, "Run configuration (JSON)")->required();
  sim->add_option("-o,--output-dir", output_dir, "Override output_dir from the config");

  BasisCheckArgs bc;
  auto* check = app.add_subcommand("basis-check", "Run the eigenbasis invariant suite");
  check->add_option("-c,--config", bc.config, "Take domain and truncation from a run configuration");
  check->add_option("--Lx", bc.Lx, "Box length in x")->capture_default_str();
  check->add_option("--Ly", bc.Ly, "Box length in y")->capture_default_str();
  check->add_option("--height", bc.h, "Box height h")->capture_default_str();
  check->add_option("--J", bc.J, "Largest |j|")->capture_default_str();
  check->add_option("--L", bc.L, "Largest |l|")->capture_default_str();
  check->add_option("--K", bc.K, "Largest k")->capture_default_str();
  check->add_option("--table", bc.table, "Write the mode table as CSV ('-' for stdout)");
  check->add_option("--corrupt-mode", bc.corrupt, "Perturb one mode before checking")->group("");

  std::vector<std::string> snapshots;
  std::string diag_out;
  auto* diag = app.add_subcommand("diagnose", "Recompute the budget ledger of stored snapshots");
  diag->add_option("snapshots", snapshots, "Snapshot header files")->required();
  diag->add_option("-o,--output", diag_out, "CSV output path (default stdout)");

  ScalesArgs sa;
  auto* sc = app.add_subcommand("scales", "Characteristic scales of a shear flow, as CSV");
  sc->add_option("--S", sa.S, "Shear rate");
  sc->add_option("--nu", sa.nu, "Kinematic viscosity");
  sc->add_option("--eps", sa.eps, "Dissipation rate");
  sc->add_option("--K", sa.K, "Kinetic energy per unit mass");
  sc->add_option("--ell-s", sa.ell_s, "Viscous shear length (recovery mode)");
  sc->add_option("--ell-C", sa.ell_C, "Corrsin length (recovery mode)");
  sc->add_flag("--table1", sa.table1, "Print the two laboratory reference flows");

  std::string report_path, audit_out;
  std::vector<double> deltas{0.5};
  auto* au = app.add_subcommand("audit", "Audit a stored report");
  au->add_option("report", report_path, "report.json from a run")->required();
  au->add_option("-d,--delta", deltas, "Audit parameters")->capture_default_str();
  au->add_option("-o,--output", audit_out, "Write the audit text here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(config_path, output_dir);
    if (*check) return cmd_basis_check(bc);
    if (*diag) return cmd_diagnose(snapshots, diag_out);
    if (*sc) return cmd_scales(sa);
    if (*au) return cmd_audit(report_path, deltas, audit_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
