#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "freeshear/basis.hpp"
#include "freeshear/dynamics.hpp"
#include "freeshear/profiles.hpp"

namespace freeshear {

/// Stored state: a JSON header (<stem>.json) next to the coefficients as raw
/// little-endian float64 in basis order (<stem>.bin).
struct Snapshot {
  Domain domain;
  Truncation truncation;
  std::optional<ShearProfile> profile;
  double t = 0.0;
  std::int64_t step = 0;
  double dt = 0.0;
  std::uint64_t checksum = 0;  ///< Basis::ordering_checksum of the writer
  std::vector<double> coefficients;
};

Snapshot make_snapshot(const SimState& state, const ShearProfile& profile);

/// Writes <stem>.json and <stem>.bin; returns the header path.
std::filesystem::path write_snapshot(const std::filesystem::path& stem, const Snapshot& snap);

/// Reads a header path (or a stem); throws ConfigError on malformed files.
Snapshot read_snapshot(const std::filesystem::path& path);

/// Validates the ordering checksum and size against basis.
SimState restore_state(const Snapshot& snap, const BasisPtr& basis);

}  // namespace freeshear
