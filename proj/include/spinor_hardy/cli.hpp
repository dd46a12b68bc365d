#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinor_hardy/config.hpp"

namespace spinh {

//! Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

//! Fully resolved invocation: config-file values with flag overrides and
//! the per-subcommand knobs.
struct CliOptions {
  RunConfig cfg;
  bool json_out = false;      // JSON instead of the default text/CSV form
  bool tol_explicit = false;  // --tol or a config `tol` was given

  // spectrum
  int l_max = 4;
  bool free_only = false;

  // verify-identity
  bool use_fd = false;   // finite-difference jacobians instead of analytic
  bool coarse = false;   // deliberately under-resolved grid

  // hardy
  bool family = false;
  std::vector<double> epsilons = {0.3, 0.2, 0.1, 0.05};
  int trials = 0;  // > 0: seeded random trial fields

  // gauge-check
  int samples = 200;
};

int cmd_selftest(std::ostream& out, bool inject_sigma2_sign = false);
int cmd_spectrum(const CliOptions& opt, std::ostream& out);
int cmd_verify_identity(const CliOptions& opt, std::ostream& out);
int cmd_hardy(const CliOptions& opt, std::ostream& out);
int cmd_gauge_check(const CliOptions& opt, std::ostream& out);

}  // namespace spinh
