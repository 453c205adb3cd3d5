#include "freeshear/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "freeshear/errors.hpp"
#include "json_io.hpp"

namespace freeshear {

namespace {

using json = nlohmann::json;

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return __builtin_bswap64(v);
}

std::filesystem::path header_of(const std::filesystem::path& p) {
  if (p.extension() == ".json") return p;
  auto q = p;
  q += ".json";
  return q;
}

}  // namespace

Snapshot make_snapshot(const SimState& state, const ShearProfile& profile) {
  const Basis& b = *state.u.basis();
  Snapshot s;
  s.domain = b.domain();
  s.truncation = b.truncation();
  s.profile = profile;
  s.t = state.t;
  s.step = state.step;
  s.dt = state.dt;
  s.checksum = b.ordering_checksum();
  s.coefficients.assign(state.u.coefficients().begin(), state.u.coefficients().end());
  return s;
}

std::filesystem::path write_snapshot(const std::filesystem::path& stem, const Snapshot& s) {
  auto header = stem;
  header += ".json";
  auto data = stem;
  data += ".bin";
  if (!stem.parent_path().empty()) std::filesystem::create_directories(stem.parent_path());

  json j;
  j["format"] = "freeshear-snapshot-v1";
  j["domain"] = detail::domain_to_json(s.domain);
  j["truncation"] = detail::truncation_to_json(s.truncation);
  if (s.profile) j["profile"] = detail::profile_to_json(*s.profile);
  j["t"] = s.t;
  j["step"] = s.step;
  j["dt"] = s.dt;
  std::ostringstream hex;
  hex << std::hex << s.checksum;
  j["ordering_checksum"] = hex.str();
  j["count"] = s.coefficients.size();
  j["data"] = data.filename().string();
  j["encoding"] = "float64-le";

  std::ofstream bin(data, std::ios::binary);
  for (double v : s.coefficients) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
    bin.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!bin) throw std::runtime_error("cannot write " + data.string());
  std::ofstream out(header);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + header.string());
  return header;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  const auto header = header_of(path);
  std::ifstream in(header);
  if (!in) throw ConfigError("snapshot: cannot open '" + header.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("snapshot: invalid header: " + std::string(e.what()));
  }
  try {
    if (j.value("format", "") != "freeshear-snapshot-v1") {
      throw ConfigError("snapshot: unsupported or missing format tag");
    }
    Snapshot s;
    s.domain = detail::domain_from_json(j.at("domain"), "snapshot.domain");
    s.truncation = detail::truncation_from_json(j.at("truncation"), "snapshot.truncation");
    if (j.contains("profile")) s.profile = detail::profile_from_json(j.at("profile"), "snapshot.profile");
    s.t = j.at("t").get<double>();
    s.step = j.at("step").get<std::int64_t>();
    s.dt = j.at("dt").get<double>();
    s.checksum = std::stoull(j.at("ordering_checksum").get<std::string>(), nullptr, 16);
    const auto count = j.at("count").get<std::size_t>();
    const auto data = header.parent_path() / j.at("data").get<std::string>();
    std::ifstream bin(data, std::ios::binary);
    if (!bin) throw ConfigError("snapshot: cannot open '" + data.string() + "'");
    s.coefficients.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t bits = 0;
      if (!bin.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
        throw ConfigError("snapshot: truncated data file '" + data.string() + "'");
      }
      s.coefficients[i] = std::bit_cast<double>(to_little(bits));
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError("snapshot: malformed header: " + std::string(e.what()));
  }
}

SimState restore_state(const Snapshot& s, const BasisPtr& basis) {
  if (s.checksum != basis->ordering_checksum() || s.coefficients.size() != basis->size()) {
    throw ConfigError("snapshot: mode ordering does not match the configured truncation");
  }
  SimState st;
  st.t = s.t;
  st.step = s.step;
  st.dt = s.dt;
  st.u = SpectralField(basis, s.coefficients);
  return st;
}

}  // namespace freeshear
