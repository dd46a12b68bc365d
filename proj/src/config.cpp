#include "spinor_hardy/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "spinor_hardy/trial.hpp"

namespace spinh {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text,
                                           const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin, lineno, "expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, lineno, "empty key");
    if (value.empty()) throw ConfigError(origin, lineno, "empty value for key '" + key + "'");
    if (cfg.entries_.count(key))
      throw ConfigError(origin, lineno, "duplicate key '" + key + "'");
    cfg.entries_[key] = {value, lineno};
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& v = it->second.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(origin_, it->second.line,
                      "key '" + key + "' needs a number, got '" + v + "'");
  return out;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& v = it->second.value;
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(origin_, it->second.line,
                      "key '" + key + "' needs an integer, got '" + v + "'");
  return out;
}

void KeyValueConfig::require_known(const std::vector<std::string>& known) const {
  for (const auto& [key, entry] : entries_) {
    bool found = false;
    for (const std::string& k : known)
      if (k == key) {
        found = true;
        break;
      }
    if (!found) throw ConfigError(origin_, entry.line, "unknown key '" + key + "'");
  }
}

int KeyValueConfig::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

namespace {

[[noreturn]] void bad_value(const KeyValueConfig& kv, const std::string& key,
                            const std::string& msg) {
  throw ConfigError(kv.origin(), kv.line_of(key), "key '" + key + "': " + msg);
}

}  // namespace

RunConfig RunConfig::from_config(const KeyValueConfig& kv) {
  static const std::vector<std::string> known = {
      "field.kind",    "field.lambda", "field.alpha", "field.phi", "field.g",
      "trial.kind",    "trial.a",      "trial.l",     "trial.m",   "trial.s",
      "trial.epsilon", "trial.seed",   "grid.n_theta", "grid.n_phi", "grid.n_r",
      "grid.r_min",    "grid.r_max",   "grid.radial_map", "tol", "seed"};
  kv.require_known(known);

  RunConfig cfg;

  const std::string kind = kv.get_string("field.kind", "free");
  if (kind == "free") cfg.field.kind = FieldConfig::Kind::free_gauge;
  else if (kind == "example") cfg.field.kind = FieldConfig::Kind::example;
  else if (kind == "custom") cfg.field.kind = FieldConfig::Kind::custom;
  else bad_value(kv, "field.kind", "expected free, example or custom, got '" + kind + "'");

  cfg.field.lambda = kv.get_double("field.lambda", cfg.field.lambda);
  cfg.field.alpha = kv.get_double("field.alpha", cfg.field.alpha);
  cfg.field.phi_expr = kv.get_string("field.phi", cfg.field.phi_expr);
  cfg.field.g_name = kv.get_string("field.g", cfg.field.g_name);
  if (cfg.field.kind == FieldConfig::Kind::custom && cfg.field.phi_expr.empty())
    bad_value(kv, "field.kind", "custom fields need field.phi");
  if (cfg.field.kind == FieldConfig::Kind::example && !(cfg.field.alpha > -3.0))
    bad_value(kv, "field.alpha", "example fields need alpha > -3");
  {
    bool known_g = false;
    for (const std::string& name : angular_catalog_names())
      if (name == cfg.field.g_name) known_g = true;
    if (!known_g) bad_value(kv, "field.g", "no catalog entry '" + cfg.field.g_name + "'");
  }

  const std::string tkind = kv.get_string("trial.kind", "gaussian_radial");
  if (tkind == "zero") cfg.trial.kind = TrialConfig::Kind::zero;
  else if (tkind == "gaussian_radial") cfg.trial.kind = TrialConfig::Kind::gaussian_radial;
  else if (tkind == "gaussian_times_basis")
    cfg.trial.kind = TrialConfig::Kind::gaussian_times_basis;
  else if (tkind == "piecewise_power") cfg.trial.kind = TrialConfig::Kind::piecewise_power;
  else
    bad_value(kv, "trial.kind",
              "expected zero, gaussian_radial, gaussian_times_basis or piecewise_power");

  cfg.trial.a = kv.get_double("trial.a", cfg.trial.a);
  cfg.trial.l = kv.get_int("trial.l", cfg.trial.l);
  cfg.trial.m = kv.get_int("trial.m", cfg.trial.m);
  cfg.trial.s = kv.get_int("trial.s", cfg.trial.s);
  cfg.trial.epsilon = kv.get_double("trial.epsilon", cfg.trial.epsilon);
  if (!(cfg.trial.a > 0.0)) bad_value(kv, "trial.a", "needs a > 0");
  if (cfg.trial.kind == TrialConfig::Kind::gaussian_times_basis) {
    if (cfg.trial.l < 0 || cfg.trial.l > 2)
      bad_value(kv, "trial.l", "solid harmonics are tabulated for l <= 2");
    if (std::abs(cfg.trial.m) > cfg.trial.l) bad_value(kv, "trial.m", "|m| must be <= l");
    if (cfg.trial.s != 1 && cfg.trial.s != 2) bad_value(kv, "trial.s", "spin slot is 1 or 2");
  }
  if (cfg.trial.kind == TrialConfig::Kind::piecewise_power &&
      !(cfg.trial.epsilon > 0.0 && cfg.trial.epsilon < 1.0))
    bad_value(kv, "trial.epsilon", "needs epsilon in (0, 1)");

  cfg.grid.n_theta = kv.get_int("grid.n_theta", cfg.grid.n_theta);
  cfg.grid.n_phi = kv.get_int("grid.n_phi", cfg.grid.n_phi);
  cfg.grid.n_r = kv.get_int("grid.n_r", cfg.grid.n_r);
  cfg.grid.r_min = kv.get_double("grid.r_min", cfg.grid.r_min);
  cfg.grid.r_max = kv.get_double("grid.r_max", cfg.grid.r_max);
  const std::string map = kv.get_string("grid.radial_map", "log");
  if (map == "log") cfg.grid.radial_map = RadialMap::log;
  else if (map == "linear") cfg.grid.radial_map = RadialMap::linear;
  else bad_value(kv, "grid.radial_map", "expected log or linear");
  if (cfg.grid.n_theta < 2 || cfg.grid.n_phi < 4 || cfg.grid.n_r < 2)
    bad_value(kv, "grid.n_r", "grid sizes below minima (n_theta>=2, n_phi>=4, n_r>=2)");
  if (!(cfg.grid.r_min > 0.0) || !(cfg.grid.r_min < cfg.grid.r_max))
    bad_value(kv, "grid.r_min", "need 0 < r_min < r_max");

  cfg.tol = kv.get_double("tol", cfg.tol);
  cfg.seed = static_cast<std::uint64_t>(kv.get_double("seed", double(cfg.seed)));
  if (kv.has("trial.seed"))
    cfg.seed = static_cast<std::uint64_t>(kv.get_double("trial.seed", double(cfg.seed)));
  if (!(cfg.tol > 0.0)) bad_value(kv, "tol", "tolerance must be positive");
  return cfg;
}

GaugePotential RunConfig::build_gauge() const {
  switch (field.kind) {
    case FieldConfig::Kind::free_gauge:
      return GaugePotential::free_field();
    case FieldConfig::Kind::example:
      return make_gauge(
          {RadialProfile::power_law(field.lambda, field.alpha), angular_profile(field.g_name)});
    case FieldConfig::Kind::custom:
      return make_gauge(
          {parse_radial_expression(field.phi_expr), angular_profile(field.g_name)});
  }
  throw std::logic_error("build_gauge: unreachable");
}

SpinorField RunConfig::build_trial(const GaugePotential& gauge) const {
  switch (trial.kind) {
    case TrialConfig::Kind::zero:
      return gaussian_poly_field(1.0, CPoly{}, CPoly{}, "zero");
    case TrialConfig::Kind::gaussian_radial:
      return gaussian_radial(trial.a);
    case TrialConfig::Kind::gaussian_times_basis:
      return gaussian_times_basis(trial.a, trial.l, trial.m, trial.s);
    case TrialConfig::Kind::piecewise_power:
      return PiecewisePowerProfile(trial.epsilon, 0.05, gauge).field();
  }
  throw std::logic_error("build_trial: unreachable");
}

Grid3D RunConfig::build_grid() const {
  return Grid3D::make(grid.n_r, grid.n_theta, grid.n_phi, grid.r_min, grid.r_max,
                      grid.radial_map);
}

}  // namespace spinh
