#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freeshear/config.hpp"
#include "freeshear/diagnostics.hpp"
#include "freeshear/dynamics.hpp"

namespace freeshear {

/// Environment variable that, when set, prefixes relative output directories.
inline constexpr const char* kOutputRootEnv = "FREESHEAR_OUTPUT_ROOT";

std::filesystem::path resolve_output_dir(const RunConfig& config);

struct RunOutcome {
  bool blew_up = false;
  std::string message;
  SimState state;
  std::filesystem::path output_dir;
  std::optional<CascadeReport> report;
  std::vector<AuditResult> audits;
  std::optional<MonotonicityResult> monotonicity;
  std::optional<ClosureResult> closure;
};

/// Called for every budget sample, before the step that starts from it.
using SampleObserver = std::function<void(const SimState&, const BudgetSample&)>;

/// Runs a configured simulation and writes manifest.json, diagnostics.csv,
/// snapshots/, and, once samples past burn-in exist, report.json and audit.txt.
/// A blow-up leaves the partial artifacts plus a FAILED marker.
RunOutcome run_simulate(const RunConfig& config, const SampleObserver& observer = {});

/// Diagnostics CSV: a "#schema=..." line, a header row, then data rows.
std::string diagnostics_csv_header(std::size_t shells);
std::string diagnostics_csv_row(const BudgetSample& sample);
std::string diagnostics_csv_summary(const CascadeReport& report);

/// Recomputes the instantaneous ledger of stored snapshots, as CSV.
std::string diagnose_snapshots(const std::vector<std::filesystem::path>& snapshots);

}  // namespace freeshear
