#include "freeshear/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "freeshear/errors.hpp"
#include "json_io.hpp"

namespace freeshear {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "config" : path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) fail(join(path, key), "unknown key");
  }
}

const json& required(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(join(path, key), "missing required field");
  return j.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

double number(const json& j, const std::string& path, const char* key) {
  return as_number(required(j, path, key), join(path, key));
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? as_number(j.at(key), join(path, key)) : fallback;
}

std::int64_t integer_or(const json& j, const std::string& path, const char* key, std::int64_t fallback) {
  return j.contains(key) ? as_integer(j.at(key), join(path, key)) : fallback;
}

int small_integer(std::int64_t v, const std::string& path) {
  if (v < -1000000 || v > 1000000) fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <class F>
auto rethrow_at(const std::string& path, F f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ConfigError(path + ": " + what);
  }
}

}  // namespace

namespace detail {

json profile_to_json(const ShearProfile& p) {
  json j;
  j["kind"] = to_string(p.kind());
  if (p.kind() == ProfileKind::Tabulated) {
    j["z"] = p.table_z();
    j["U"] = p.table_U();
  } else {
    for (const auto& [name, value] : p.parameters()) j[name] = value;
  }
  return j;
}

ShearProfile profile_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  const json& kind_j = required(j, path, "kind");
  if (!kind_j.is_string()) fail(join(path, "kind"), "expected a string");
  const ProfileKind kind =
      rethrow_at(join(path, "kind"), [&] { return profile_kind_from_string(kind_j.get<std::string>()); });
  return rethrow_at(path, [&] {
    switch (kind) {
      case ProfileKind::MixingLayer:
        check_keys(j, path, {"kind", "U1", "U2", "delta"});
        return ShearProfile::mixing_layer(number(j, path, "U1"), number(j, path, "U2"),
                                          number(j, path, "delta"));
      case ProfileKind::JetSech2:
        check_keys(j, path, {"kind", "U0", "delta"});
        return ShearProfile::jet_sech2(number(j, path, "U0"), number(j, path, "delta"));
      case ProfileKind::JetGauss:
        check_keys(j, path, {"kind", "U0", "delta"});
        return ShearProfile::jet_gauss(number(j, path, "U0"), number(j, path, "delta"));
      case ProfileKind::Wake:
        check_keys(j, path, {"kind", "U_inf", "U_d", "delta"});
        return ShearProfile::wake(number(j, path, "U_inf"), number(j, path, "U_d"),
                                  number(j, path, "delta"));
      case ProfileKind::Tabulated:
        check_keys(j, path, {"kind", "z", "U"});
        return ShearProfile::tabulated(number_array(required(j, path, "z"), join(path, "z")),
                                       number_array(required(j, path, "U"), join(path, "U")));
    }
    fail(path, "unsupported profile kind");
  });
}

json domain_to_json(const Domain& d) {
  return {{"Lx", d.Lx}, {"Ly", d.Ly}, {"h", d.h}, {"nu", d.nu}};
}

Domain domain_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"Lx", "Ly", "h", "nu"});
  Domain d{number(j, path, "Lx"), number(j, path, "Ly"), number(j, path, "h"), number(j, path, "nu")};
  rethrow_at(path, [&] {
    d.validate();
    return 0;
  });
  return d;
}

json truncation_to_json(const Truncation& t) { return {{"J", t.J}, {"L", t.L}, {"K", t.K}}; }

Truncation truncation_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"J", "L", "K"});
  Truncation t;
  t.J = small_integer(as_integer(required(j, path, "J"), join(path, "J")), join(path, "J"));
  t.L = small_integer(as_integer(required(j, path, "L"), join(path, "L")), join(path, "L"));
  t.K = small_integer(as_integer(required(j, path, "K"), join(path, "K")), join(path, "K"));
  rethrow_at(path, [&] {
    t.validate();
    return 0;
  });
  return t;
}

}  // namespace detail

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(j, "", {"domain", "profile", "truncation", "grid", "integrator", "seed",
                     "initial_energy", "burn_in_time", "averaging_time", "sample_every",
                     "snapshot_every", "max_steps", "output_dir", "deltas", "blocks",
                     "resume_from", "ensemble_seeds"});
  RunConfig c;
  c.domain = detail::domain_from_json(required(j, "", "domain"), "domain");
  c.profile = detail::profile_from_json(required(j, "", "profile"), "profile");
  c.truncation = detail::truncation_from_json(required(j, "", "truncation"), "truncation");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, "grid", {"Nx", "Ny", "Nz"});
    c.grid.Nx = small_integer(as_integer(required(g, "grid", "Nx"), "grid.Nx"), "grid.Nx");
    c.grid.Ny = small_integer(as_integer(required(g, "grid", "Ny"), "grid.Ny"), "grid.Ny");
    c.grid.Nz = small_integer(as_integer(required(g, "grid", "Nz"), "grid.Nz"), "grid.Nz");
  }
  if (j.contains("integrator")) {
    const json& ic = j.at("integrator");
    check_keys(ic, "integrator", {"dt", "safety", "scheme", "dt_update_every"});
    c.integrator.dt = number_or(ic, "integrator", "dt", 0.0);
    c.integrator.safety = number_or(ic, "integrator", "safety", 0.5);
    c.integrator.dt_update_every = small_integer(
        integer_or(ic, "integrator", "dt_update_every", 100), "integrator.dt_update_every");
    if (ic.contains("scheme")) {
      if (!ic.at("scheme").is_string() || ic.at("scheme").get<std::string>() != "IFRK3") {
        fail("integrator.scheme", "only \"IFRK3\" is supported");
      }
    }
    if (c.integrator.dt < 0.0) fail("integrator.dt", "must be non-negative");
    if (!(c.integrator.safety > 0.0)) fail("integrator.safety", "must be positive");
    if (c.integrator.dt_update_every < 1) fail("integrator.dt_update_every", "must be >= 1");
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      fail("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.initial_energy = number(j, "", "initial_energy");
  if (!(c.initial_energy >= 0.0)) fail("initial_energy", "must be non-negative");
  c.burn_in_time = number_or(j, "", "burn_in_time", 0.0);
  c.averaging_time = number(j, "", "averaging_time");
  if (!(c.burn_in_time >= 0.0)) fail("burn_in_time", "must be non-negative");
  if (!(c.averaging_time > 0.0)) fail("averaging_time", "must be positive");
  c.sample_every = small_integer(integer_or(j, "", "sample_every", 1), "sample_every");
  if (c.sample_every < 1) fail("sample_every", "must be >= 1");
  c.snapshot_every = small_integer(integer_or(j, "", "snapshot_every", 0), "snapshot_every");
  if (c.snapshot_every < 0) fail("snapshot_every", "must be >= 0");
  c.max_steps = integer_or(j, "", "max_steps", 0);
  if (c.max_steps < 0) fail("max_steps", "must be >= 0");
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("deltas")) {
    c.deltas = number_array(j.at("deltas"), "deltas");
    for (std::size_t i = 0; i < c.deltas.size(); ++i) {
      if (!(c.deltas[i] > 0.0)) fail("deltas[" + std::to_string(i) + "]", "must be positive");
    }
  }
  c.blocks = small_integer(integer_or(j, "", "blocks", 10), "blocks");
  if (c.blocks < 2) fail("blocks", "must be >= 2");
  if (j.contains("resume_from")) {
    if (!j.at("resume_from").is_string()) fail("resume_from", "expected a string");
    c.resume_from = j.at("resume_from").get<std::string>();
  }
  if (j.contains("ensemble_seeds")) {
    const json& e = j.at("ensemble_seeds");
    if (!e.is_array()) fail("ensemble_seeds", "expected an array of non-negative integers");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_unsigned() && !(e[i].is_number_integer() && e[i].get<std::int64_t>() >= 0)) {
        fail("ensemble_seeds[" + std::to_string(i) + "]", "expected a non-negative integer");
      }
      c.ensemble_seeds.push_back(e[i].get<std::uint64_t>());
    }
    if (!c.ensemble_seeds.empty() && !c.resume_from.empty()) {
      fail("resume_from", "cannot resume an ensemble run");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["domain"] = detail::domain_to_json(c.domain);
  if (c.profile) j["profile"] = detail::profile_to_json(*c.profile);
  j["truncation"] = detail::truncation_to_json(c.truncation);
  if (!(c.grid == GridSize{})) j["grid"] = {{"Nx", c.grid.Nx}, {"Ny", c.grid.Ny}, {"Nz", c.grid.Nz}};
  j["integrator"] = {{"dt", c.integrator.dt},
                     {"safety", c.integrator.safety},
                     {"scheme", "IFRK3"},
                     {"dt_update_every", c.integrator.dt_update_every}};
  j["seed"] = c.seed;
  j["initial_energy"] = c.initial_energy;
  j["burn_in_time"] = c.burn_in_time;
  j["averaging_time"] = c.averaging_time;
  j["sample_every"] = c.sample_every;
  j["snapshot_every"] = c.snapshot_every;
  j["max_steps"] = c.max_steps;
  j["output_dir"] = c.output_dir;
  j["deltas"] = c.deltas;
  j["blocks"] = c.blocks;
  if (!c.ensemble_seeds.empty()) j["ensemble_seeds"] = c.ensemble_seeds;
  if (!c.resume_from.empty()) j["resume_from"] = c.resume_from;
  return j.dump(2) + "\n";
}

}  // namespace freeshear
