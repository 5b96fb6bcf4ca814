#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latspec/action.hpp"
#include "latspec/continuum.hpp"

namespace latspec {

// Fully validated description of one CLI run. Unknown keys are rejected at
// parse time; every output file embeds the spec for reproducibility.
struct RunSpec {
  std::string command;  // verify | calibrate | continuum | generate

  int d = 4;
  int n = 3;
  double l = 1.0;
  int N = 2;
  std::string c_mode = "half_inverse_l";  // or "inverse_l" / "value"
  double c_value = 0.0;

  std::uint64_t seed = 0;
  std::string generator = "constrained";  // constrained | unconstrained
  ConstrainedSpec spectrum;               // constrained generator
  double scale = 1.0;                     // unconstrained generator
  int configs = 5;

  std::vector<std::string> checks;  // empty = auto by generator

  std::vector<int> n_list;
  std::string sweep = "wilson";  // wilson | higgs | both
  std::optional<SmoothFieldSpec> fields;
  double order_min = 1.5;
  double order_max = 2.5;

  std::string out_dir;
  int threads = 1;
  bool strict = false;
  std::map<std::string, double> tolerances;

  double hopping() const;  // resolves c_mode against l
  double tolerance(const std::string& name, double fallback) const;

  nlohmann::json to_json() const;
  static RunSpec from_json(const nlohmann::json& j, std::string command);
  static RunSpec defaults(const std::string& command);
};

struct CheckResult {
  std::string name;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  RunSpec spec;
  std::vector<CheckResult> checks;
  bool pass = false;
  nlohmann::json to_json() const;
};

struct CalibrationReport {
  RunSpec spec;
  ActionCoefficients measured;
  ActionCoefficients formula;
  double ls_residual = 0;  // rms residual of the linear fit
  double max_rel_diff = 0;
  bool pass = false;
  nlohmann::json to_json() const;
};

struct ContinuumRun {
  RunSpec spec;
  std::vector<ConvergenceReport> reports;
  bool pass = false;
  nlohmann::json to_json() const;
};

VerifyReport run_verify(const RunSpec& spec);
CalibrationReport run_calibrate(const RunSpec& spec);
ContinuumRun run_continuum(const RunSpec& spec);
// Returns the generated config as json (with provenance meta).
nlohmann::json run_generate(const RunSpec& spec);

// Write via temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace latspec
