#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinor_hardy/cli.hpp"
#include "spinor_hardy/config.hpp"

int main(int argc, char** argv) {
  using namespace spinh;

  CLI::App app{
      "spinor-hardy: quadrature-based verification of a Hardy inequality for "
      "spinors in transversal magnetic fields"};
  app.require_subcommand(1);
  app.fallthrough(true);  // global flags remain valid after the subcommand name

  std::string config_path, out_path;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool json_flag = false, csv_flag = false;
  app.add_option("--config", config_path, "Key = value config file");
  auto* tol_opt = app.add_option("--tol", tol, "Verification tolerance (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized samples");
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--json", json_flag, "JSON output (default for spectrum/verify-identity/gauge-check)");
  app.add_flag("--csv", csv_flag, "CSV/plain-text output (default for hardy)");

  CliOptions opt;

  auto* sc_self = app.add_subcommand("selftest", "Algebraic and quadrature invariant suite");
  auto* sc_spec =
      app.add_subcommand("spectrum", "Spin-orbit eigenvalues, free and magnetic assemblies");
  sc_spec->add_option("--lmax", opt.l_max, "Spherical-harmonic truncation degree")
      ->check(CLI::Range(0, 64));
  sc_spec->add_flag("--free", opt.free_only, "Assemble the free operator only");
  auto* sc_ident =
      app.add_subcommand("verify-identity", "Evaluate every term of the energy decomposition");
  sc_ident->add_flag("--fd", opt.use_fd, "Finite-difference jacobians instead of analytic ones");
  sc_ident->add_flag("--coarse", opt.coarse, "Deliberately under-resolved grid");
  auto* sc_hardy = app.add_subcommand("hardy", "Hardy quotients and the inequality chain");
  sc_hardy->add_flag("--family", opt.family, "Sweep the near-extremal family");
  sc_hardy->add_option("--epsilons", opt.epsilons,
                       "Family parameters (default 0.3 0.2 0.1 0.05)");
  sc_hardy->add_option("--trials", opt.trials, "Number of seeded random trial fields")
      ->check(CLI::NonNegativeNumber);
  auto* sc_gauge =
      app.add_subcommand("gauge-check", "Curl and cancellation residuals of the gauge potential");
  sc_gauge->add_option("--samples", opt.samples, "Number of sample points")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const KeyValueConfig kv = config_path.empty()
                                  ? KeyValueConfig::from_string("", "<defaults>")
                                  : KeyValueConfig::from_file(config_path);
    opt.cfg = RunConfig::from_config(kv);
    if (tol_opt->count() > 0) {
      if (!(tol > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return kExitUsage;
      }
      opt.cfg.tol = tol;
    }
    opt.tol_explicit = tol_opt->count() > 0 || kv.has("tol");
    if (seed_opt->count() > 0) opt.cfg.seed = seed;
    opt.json_out = json_flag || (!csv_flag && !sc_hardy->parsed());

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return kExitUsage;
      }
      out = &file;
    }

    if (sc_self->parsed()) return cmd_selftest(*out);
    if (sc_spec->parsed()) return cmd_spectrum(opt, *out);
    if (sc_ident->parsed()) return cmd_verify_identity(opt, *out);
    if (sc_hardy->parsed()) return cmd_hardy(opt, *out);
    if (sc_gauge->parsed()) return cmd_gauge_check(opt, *out);
    std::cerr << "error: missing subcommand\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
