// latspec command line front end: verification suites, coefficient
// calibration, continuum-limit sweeps, and config generation.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed,
// 2 invalid input or usage.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "latspec/run.hpp"
#include "latspec/version.hpp"

namespace {

using latspec::RunSpec;
using nlohmann::json;

struct CommonOpts {
  std::string spec_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--spec", opts.spec_file, "RunSpec JSON file");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.seed, "Seed override");
  cmd->add_option("--threads", opts.threads, "Worker threads");
  cmd->add_flag("--strict", opts.strict, "Strict mode");
}

RunSpec load_spec(const std::string& command, const CommonOpts& opts) {
  RunSpec spec;
  if (opts.spec_file.empty()) {
    spec = RunSpec::defaults(command);
  } else {
    std::ifstream in(opts.spec_file);
    if (!in) throw std::invalid_argument("cannot open " + opts.spec_file);
    json j = json::parse(in);  // throws on malformed input
    spec = RunSpec::from_json(j, command);
  }
  if (!opts.out_dir.empty()) spec.out_dir = opts.out_dir;
  if (spec.out_dir.empty()) spec.out_dir = ".";
  if (opts.seed) spec.seed = *opts.seed;
  if (opts.threads) spec.threads = *opts.threads;
  if (spec.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (opts.strict) spec.strict = true;
  return spec;
}

int do_verify(const CommonOpts& opts) {
  const RunSpec spec = load_spec("verify", opts);
  const latspec::VerifyReport report = latspec::run_verify(spec);
  latspec::write_file_atomic(spec.out_dir + "/verify_report.json",
                             report.to_json().dump(2) + "\n");
  for (const auto& c : report.checks)
    std::printf("%-20s measured %.3e tolerance %.3e %s\n", c.name.c_str(),
                c.measured, c.tolerance, c.pass ? "PASS" : "FAIL");
  std::printf("verify: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

int do_calibrate(const CommonOpts& opts) {
  const RunSpec spec = load_spec("calibrate", opts);
  const latspec::CalibrationReport report = latspec::run_calibrate(spec);
  latspec::write_file_atomic(spec.out_dir + "/calibration.json",
                             report.to_json().dump(2) + "\n");
  std::printf("measured (%.10g, %.10g, %.10g, %.10g)\n",
              report.measured.alpha_w, report.measured.alpha_4,
              report.measured.alpha_2, report.measured.alpha_0);
  std::printf("formula  (%.10g, %.10g, %.10g, %.10g)\n",
              report.formula.alpha_w, report.formula.alpha_4,
              report.formula.alpha_2, report.formula.alpha_0);
  std::printf("max relative difference %.3e, ls residual %.3e\n",
              report.max_rel_diff, report.ls_residual);
  std::printf("calibrate: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

int do_continuum(const CommonOpts& opts) {
  const RunSpec spec = load_spec("continuum", opts);
  const latspec::ContinuumRun run = latspec::run_continuum(spec);
  latspec::write_file_atomic(spec.out_dir + "/continuum.json",
                             run.to_json().dump(2) + "\n");
  for (const auto& rep : run.reports) {
    latspec::write_file_atomic(
        spec.out_dir + "/sweep_" + rep.observable + ".csv",
        latspec::convergence_csv(rep));
    if (rep.fitted)
      std::printf("%-18s order %.3f kappa %.6f\n", rep.observable.c_str(),
                  rep.fit.order, rep.kappa);
    else
      std::printf("%-18s converged at every point (no fit)%s\n",
                  rep.observable.c_str(),
                  rep.absolute_mode ? " [absolute mode]" : "");
  }
  std::printf("continuum: %s\n", run.pass ? "PASS" : "FAIL");
  return run.pass ? 0 : 1;
}

int do_generate(const CommonOpts& opts) {
  const RunSpec spec = load_spec("generate", opts);
  const json cfg = latspec::run_generate(spec);
  latspec::write_file_atomic(spec.out_dir + "/config.json",
                             cfg.dump(2) + "\n");
  std::printf("wrote %s/config.json\n", spec.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice spectral action laboratory"};
  app.set_version_flag("--version", latspec::kVersion);
  app.require_subcommand(1);

  CommonOpts verify_opts, calibrate_opts, continuum_opts, generate_opts;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, verify_opts);
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "measure action coefficients");
  add_common(calibrate, calibrate_opts);
  CLI::App* continuum =
      app.add_subcommand("continuum", "continuum-limit sweeps");
  add_common(continuum, continuum_opts);
  CLI::App* generate =
      app.add_subcommand("generate", "write a gauge network config");
  add_common(generate, generate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return do_verify(verify_opts);
    if (calibrate->parsed()) return do_calibrate(calibrate_opts);
    if (continuum->parsed()) return do_continuum(continuum_opts);
    if (generate->parsed()) return do_generate(generate_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
