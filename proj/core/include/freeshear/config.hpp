#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "freeshear/basis.hpp"
#include "freeshear/dynamics.hpp"
#include "freeshear/field.hpp"
#include "freeshear/profiles.hpp"

namespace freeshear {

/// Everything needed to reproduce a run. Parsed from JSON with strict key
/// checking; errors name the offending field path.
struct RunConfig {
  Domain domain;
  std::optional<ShearProfile> profile;
  Truncation truncation;
  GridSize grid{};  ///< zero selects the dealiased default
  IntegratorConfig integrator;
  std::uint64_t seed = 1;
  double initial_energy = 0.0;  ///< kappa_1^3 ||u||^2 / 2 at t = 0
  double burn_in_time = 0.0;
  double averaging_time = 0.0;
  int sample_every = 1;        ///< steps between budget samples
  int snapshot_every = 0;      ///< steps between snapshots; 0 writes only the final one
  std::int64_t max_steps = 0;  ///< absolute step limit; 0 means none
  std::string output_dir = "run";
  std::vector<double> deltas{0.5};
  int blocks = 10;
  std::string resume_from;  ///< snapshot header path, empty for a fresh start
  /// When non-empty, one run per seed (seed is then ignored); the samples of
  /// all members are pooled into one report.
  std::vector<std::uint64_t> ensemble_seeds;

  double end_time() const { return burn_in_time + averaging_time; }
};

/// Throws ConfigError("<path>: <reason>") on any schema violation.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical JSON echo; parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const RunConfig& config);

}  // namespace freeshear
