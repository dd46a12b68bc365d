#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "spinor_hardy/calculus.hpp"
#include "spinor_hardy/fields.hpp"
#include "spinor_hardy/quadrature.hpp"

namespace spinh {

//! Config problem, annotated with origin and line ("file.cfg:7: ...").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& origin, int line, const std::string& what)
      : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

//! `key = value` file: UTF-8, one pair per line, '#' comments, blank
//! lines ignored.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text,
                                    const std::string& origin = "<config>");

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;

  //! Every key must be in the known set; first stray key raises.
  void require_known(const std::vector<std::string>& known) const;
  const std::string& origin() const { return origin_; }
  int line_of(const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries_;
  std::string origin_;
};

struct FieldConfig {
  enum class Kind { free_gauge, example, custom };
  Kind kind = Kind::free_gauge;
  double lambda = 1.0;
  double alpha = 0.0;
  std::string phi_expr;       // custom profiles
  std::string g_name = "z";   // angular catalog entry
};

struct TrialConfig {
  enum class Kind { zero, gaussian_radial, gaussian_times_basis, piecewise_power };
  Kind kind = Kind::gaussian_radial;
  double a = 1.0;  // envelope width
  int l = 0, m = 0, s = 1;
  double epsilon = 0.1;
};

struct GridConfig {
  int n_theta = 32, n_phi = 64, n_r = 96;
  double r_min = 1e-6, r_max = 30.0;
  RadialMap radial_map = RadialMap::log;
};

//! Everything one run needs; built from defaults + config file + flags.
struct RunConfig {
  FieldConfig field;
  TrialConfig trial;
  GridConfig grid;
  double tol = 1e-6;
  std::uint64_t seed = 1;

  static RunConfig from_config(const KeyValueConfig& kv);

  GaugePotential build_gauge() const;
  //! The configured deterministic trial field (not the random family).
  SpinorField build_trial(const GaugePotential& gauge) const;
  Grid3D build_grid() const;
};

}  // namespace spinh
