#include "latspec/run.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "latspec/version.hpp"

namespace latspec {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"verify", "calibrate",
                                            "continuum", "generate"};

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

ConstrainedSpec spectrum_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("spectrum: need a list of [value, mult]");
  ConstrainedSpec spec;
  for (const json& lvl : j) {
    if (!lvl.is_array() || lvl.size() != 2)
      throw std::invalid_argument("spectrum: levels are [value, mult]");
    spec.levels.emplace_back(lvl[0].get<double>(), lvl[1].get<int>());
  }
  spec.matrix_size();  // validates multiplicities
  return spec;
}

json spectrum_to_json(const ConstrainedSpec& spec) {
  json out = json::array();
  for (const auto& [value, mult] : spec.levels)
    out.push_back(json::array({value, mult}));
  return out;
}

GaugeNetworkConfig make_config(const RunSpec& spec, int index) {
  const TorusLattice lat(spec.d, spec.n, spec.l);
  const PhiloxRng root =
      PhiloxRng(spec.seed).split(static_cast<std::uint64_t>(index));
  if (spec.generator == "constrained")
    return random_constrained(lat, spec.spectrum, root);
  if (spec.generator == "unconstrained")
    return random_unconstrained(lat, spec.N, spec.scale, root);
  throw std::invalid_argument("unknown generator '" + spec.generator + "'");
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

double RunSpec::hopping() const {
  if (c_mode == "half_inverse_l") return 1.0 / (2.0 * l);
  if (c_mode == "inverse_l") return 1.0 / l;
  return c_value;
}

double RunSpec::tolerance(const std::string& name, double fallback) const {
  auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

json RunSpec::to_json() const {
  // out_dir and threads are execution details, not part of the run:
  // identical runs must serialize identically regardless of where or how
  // parallel they were executed.
  json j;
  j["command"] = command;
  j["lattice"] = {{"d", d}, {"n", n}, {"l", l}};
  j["N"] = N;
  if (c_mode == "value")
    j["c"] = c_value;
  else
    j["c"] = c_mode;
  j["seed"] = seed;
  j["strict"] = strict;
  if (command == "verify" || command == "generate") {
    j["generator"] = generator;
    if (generator == "constrained") j["spectrum"] = spectrum_to_json(spectrum);
    if (generator == "unconstrained") j["scale"] = scale;
  }
  if (command == "verify") {
    j["configs"] = configs;
    if (!checks.empty()) j["checks"] = checks;
  }
  if (command == "calibrate") {
    j["configs"] = configs;
    j["scale"] = scale;
  }
  if (command == "continuum") {
    j["n_list"] = n_list;
    j["sweep"] = sweep;
    if (fields) j["fields"] = fields->to_json();
    j["order_bracket"] = json::array({order_min, order_max});
  }
  if (!tolerances.empty()) {
    json t;
    for (const auto& [k, v] : tolerances) t[k] = v;
    j["tolerances"] = t;
  }
  return j;
}

RunSpec RunSpec::from_json(const json& j, std::string command) {
  if (!j.is_object()) throw std::invalid_argument("spec: not a JSON object");
  bool known = false;
  for (const auto& c : kCommands) known |= (command == c);
  if (!known) throw std::invalid_argument("spec: unknown command " + command);

  std::vector<std::string> allowed = {"command", "lattice",    "N",
                                      "c",       "seed",       "threads",
                                      "strict",  "out",        "tolerances"};
  if (command == "verify") {
    allowed.insert(allowed.end(),
                   {"generator", "spectrum", "scale", "configs", "checks"});
  } else if (command == "calibrate") {
    allowed.insert(allowed.end(), {"configs", "scale"});
  } else if (command == "continuum") {
    allowed.insert(allowed.end(),
                   {"n_list", "sweep", "fields", "order_bracket"});
  } else if (command == "generate") {
    allowed.insert(allowed.end(), {"generator", "spectrum", "scale"});
  }
  reject_unknown(j, allowed, "spec");

  RunSpec spec = defaults(command);
  if (j.contains("command") &&
      j.at("command").get<std::string>() != command)
    throw std::invalid_argument("spec: command mismatch");

  if (j.contains("lattice")) {
    const json& jl = j.at("lattice");
    reject_unknown(jl, {"d", "n", "l"}, "spec.lattice");
    if (jl.contains("d")) spec.d = jl.at("d").get<int>();
    if (jl.contains("n")) spec.n = jl.at("n").get<int>();
    if (jl.contains("l")) spec.l = jl.at("l").get<double>();
  }
  if (j.contains("N")) spec.N = j.at("N").get<int>();
  if (j.contains("c")) {
    const json& jc = j.at("c");
    if (jc.is_string()) {
      spec.c_mode = jc.get<std::string>();
      if (spec.c_mode != "half_inverse_l" && spec.c_mode != "inverse_l")
        throw std::invalid_argument("spec: unknown c mode " + spec.c_mode);
    } else {
      spec.c_mode = "value";
      spec.c_value = jc.get<double>();
      if (!(spec.c_value > 0))
        throw std::invalid_argument("spec: c must be positive");
    }
  }
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
  if (spec.threads < 1)
    throw std::invalid_argument("spec: threads must be >= 1");
  if (j.contains("strict")) spec.strict = j.at("strict").get<bool>();
  if (j.contains("out")) spec.out_dir = j.at("out").get<std::string>();
  if (j.contains("generator"))
    spec.generator = j.at("generator").get<std::string>();
  if (spec.generator != "constrained" && spec.generator != "unconstrained")
    throw std::invalid_argument("spec: unknown generator " + spec.generator);
  if (j.contains("spectrum"))
    spec.spectrum = spectrum_from_json(j.at("spectrum"));
  if (j.contains("scale")) spec.scale = j.at("scale").get<double>();
  if (j.contains("configs")) spec.configs = j.at("configs").get<int>();
  if (spec.configs < 1)
    throw std::invalid_argument("spec: configs must be >= 1");
  if (j.contains("checks")) {
    spec.checks.clear();
    for (const json& c : j.at("checks"))
      spec.checks.push_back(c.get<std::string>());
  }
  if (j.contains("n_list")) {
    spec.n_list.clear();
    for (const json& v : j.at("n_list")) spec.n_list.push_back(v.get<int>());
  }
  if (j.contains("sweep")) {
    spec.sweep = j.at("sweep").get<std::string>();
    if (spec.sweep != "wilson" && spec.sweep != "higgs" &&
        spec.sweep != "both")
      throw std::invalid_argument("spec: unknown sweep " + spec.sweep);
  }
  if (j.contains("fields"))
    spec.fields = SmoothFieldSpec::from_json(j.at("fields"));
  if (j.contains("order_bracket")) {
    const json& b = j.at("order_bracket");
    if (!b.is_array() || b.size() != 2)
      throw std::invalid_argument("spec: order_bracket is [min, max]");
    spec.order_min = b[0].get<double>();
    spec.order_max = b[1].get<double>();
  }
  if (j.contains("tolerances")) {
    for (const auto& [key, value] : j.at("tolerances").items())
      spec.tolerances[key] = value.get<double>();
  }

  if (spec.generator == "constrained" &&
      (command == "verify" || command == "generate")) {
    if (spec.spectrum.levels.empty())
      throw std::invalid_argument("spec: constrained generator needs a spectrum");
    spec.N = spec.spectrum.matrix_size();
  }
  if (spec.N < 1) throw std::invalid_argument("spec: N must be >= 1");
  TorusLattice probe(spec.d, spec.n, spec.l);  // validates lattice params
  (void)probe;
  spec.command = std::move(command);
  return spec;
}

RunSpec RunSpec::defaults(const std::string& command) {
  RunSpec spec;
  spec.command = command;
  if (command == "verify") {
    spec.d = 4;
    spec.n = 3;
    spec.N = 2;
    spec.generator = "constrained";
    spec.spectrum.levels = {{1.0, 1}, {-1.0, 1}};
    spec.configs = 5;
  } else if (command == "calibrate") {
    spec.d = 4;
    spec.n = 3;
    spec.N = 1;
    spec.generator = "unconstrained";
    spec.configs = 8;
  } else if (command == "continuum") {
    SmoothFieldSpec f;
    f.d = 2;
    f.period = 1.0;
    f.N = 1;
    FieldMode mode;
    mode.k = {1, 0, 0, 0};
    mode.coeff = ComplexMatrix::Constant(1, 1, 0.7);
    f.vector_modes[1].push_back(mode);
    FieldMode phi;
    phi.k = {1, 0, 0, 0};
    phi.coeff = ComplexMatrix::Constant(1, 1, 0.6);
    f.higgs_modes.push_back(phi);
    spec.fields = f;
    spec.n_list = {8, 16, 32, 64};
    spec.sweep = "wilson";
    spec.N = 1;
    spec.d = 2;
  } else if (command == "generate") {
    spec.d = 4;
    spec.n = 3;
    spec.generator = "constrained";
    spec.spectrum.levels = {{1.0, 2}, {-1.0, 1}};
    spec.N = 3;
  } else {
    throw std::invalid_argument("unknown command " + command);
  }
  return spec;
}

VerifyReport run_verify(const RunSpec& spec) {
  VerifyReport report;
  report.spec = spec;
  const double c = spec.hopping();

  std::vector<std::string> checks = spec.checks;
  if (checks.empty()) {
    if (spec.generator == "constrained")
      checks = {"representation",    "cancellation", "trace_constancy",
                "eqB",               "transport",    "holonomy_commutant",
                "decomposition",     "gauge_invariance"};
    else
      checks = {"decomposition", "gauge_invariance"};
  }

  std::map<std::string, double> worst;
  for (const auto& name : checks) worst[name] = 0.0;
  double d_scale = 0.0;

  for (int k = 0; k < spec.configs; ++k) {
    const GaugeNetworkConfig cfg = make_config(spec, k);
    for (const ComplexMatrix& dv : cfg.D)
      d_scale = std::max(d_scale, max_abs(dv));

    for (const auto& name : checks) {
      double measured = 0.0;
      if (name == "representation") {
        measured = check_representation(cfg);
      } else if (name == "cancellation") {
        measured = edge_cancellation_max(cfg);
      } else if (name == "trace_constancy") {
        for (int m : {2, 3, 4, 6}) {
          const std::vector<double> tr = vertex_trace_profile(cfg, m);
          double lo = tr[0], hi = tr[0], amax = 0.0;
          for (double t : tr) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            amax = std::max(amax, std::abs(t));
          }
          measured = std::max(measured, (hi - lo) / (1.0 + amax));
        }
      } else if (name == "eqB") {
        const EqBSides sides = eqB_collapse(cfg, c);
        measured = std::abs(sides.lhs - sides.rhs) /
                   (1.0 + std::abs(sides.lhs));
      } else if (name == "transport") {
        const std::int64_t V = cfg.lattice.vertex_count();
        for (std::int64_t to : {V - 1, V / 2, std::int64_t(1)}) {
          const DirectedPath path = cfg.lattice.directed_path(0, to);
          const ComplexMatrix u = path_holonomy(cfg, path);
          measured = std::max(
              measured, max_abs(cfg.D[static_cast<std::size_t>(to)] -
                                u * cfg.D[0] * u.adjoint()));
        }
      } else if (name == "holonomy_commutant") {
        const std::int64_t P = cfg.lattice.plaquette_count();
        for (std::int64_t p : {std::int64_t(0), P / 2, P - 1}) {
          const ComplexMatrix hol = plaquette_holonomy(cfg, p);
          const std::int64_t base = cfg.lattice.plaquette(p).base;
          const ComplexMatrix& dv = cfg.D[static_cast<std::size_t>(base)];
          measured = std::max(measured, max_abs(hol * dv - dv * hol));
        }
      } else if (name == "decomposition") {
        const DecompositionReport dec = decompose(cfg, c, spec.threads);
        measured = std::abs(dec.residual) / (1.0 + std::abs(dec.S));
      } else if (name == "gauge_invariance") {
        const double s0 = spectral_action(cfg, c, spec.threads);
        const double w0 = wilson_action(cfg, spec.threads);
        const HiggsTerms h0 = higgs_terms(cfg, spec.threads);
        PhiloxRng groot = PhiloxRng(spec.seed).split(0x67617567 + k);
        for (int t = 0; t < 3; ++t) {
          std::vector<ComplexMatrix> u;
          u.reserve(cfg.lattice.vertex_count());
          PhiloxRng r = groot.split(t);
          for (std::int64_t v = 0; v < cfg.lattice.vertex_count(); ++v)
            u.push_back(haar_unitary(cfg.N, r));
          const GaugeNetworkConfig tcfg = gauge_transform(cfg, u);
          const HiggsTerms h1 = higgs_terms(tcfg, spec.threads);
          measured = std::max(
              {measured,
               rel_gap(s0, spectral_action(tcfg, c, spec.threads)),
               rel_gap(w0, wilson_action(tcfg, spec.threads)),
               rel_gap(h0.t4, h1.t4), rel_gap(h0.t2_edge, h1.t2_edge)});
        }
      } else if (name == "dirac_hermitian") {
        const DiracOperator op(cfg, c);
        measured = hermiticity_error(op.dense());
      } else {
        throw std::invalid_argument("verify: unknown check '" + name + "'");
      }
      worst[name] = std::max(worst[name], measured);
    }
  }

  const double cancel_scale = 1.0 + d_scale * d_scale;
  for (const auto& name : checks) {
    CheckResult r;
    r.name = name;
    r.measured = worst[name];
    if (name == "representation")
      r.tolerance = spec.tolerance(name, 1e-10);
    else if (name == "cancellation")
      r.tolerance = spec.tolerance(name, 1e-10 * cancel_scale);
    else if (name == "transport")
      r.tolerance = spec.tolerance(name, 1e-10);
    else if (name == "dirac_hermitian")
      r.tolerance = spec.tolerance(name, 1e-12);
    else
      r.tolerance = spec.tolerance(name, 1e-9);
    r.pass = r.measured <= r.tolerance;
    report.checks.push_back(r);
  }
  report.pass = true;
  for (const CheckResult& r : report.checks) report.pass &= r.pass;
  return report;
}

json VerifyReport::to_json() const {
  json jc = json::array();
  for (const CheckResult& r : checks)
    jc.push_back({{"name", r.name},
                  {"measured", r.measured},
                  {"tolerance", r.tolerance},
                  {"pass", r.pass}});
  return {{"spec", spec.to_json()}, {"checks", jc}, {"pass", pass}};
}

CalibrationReport run_calibrate(const RunSpec& spec) {
  const TorusLattice lat(spec.d, spec.n, spec.l);
  const int dim_s = 1 << (spec.d / 2);
  const std::int64_t dim = std::int64_t(dim_s) * spec.N * lat.vertex_count();
  if (dim > 4096)
    throw std::invalid_argument("calibrate: lattice too large for the dense oracle");

  const double c = spec.hopping();
  const int rows = std::max(6, spec.configs);

  Eigen::MatrixXd a(rows, 4);
  Eigen::VectorXd b(rows);
  Eigen::Vector4d x;
  double rms = 0.0;
  bool solved = false;
  for (int attempt = 0; attempt < 5 && !solved; ++attempt) {
    for (int k = 0; k < rows; ++k) {
      const PhiloxRng root = PhiloxRng(spec.seed)
                                 .split(static_cast<std::uint64_t>(
                                     attempt * 1000 + k));
      const GaugeNetworkConfig cfg =
          random_unconstrained(lat, spec.N, spec.scale, root);
      const HiggsTerms h = higgs_terms(cfg, spec.threads);
      a(k, 0) = wilson_action(cfg, spec.threads);
      a(k, 1) = h.t4;
      a(k, 2) = h.t2_edge;
      a(k, 3) = 1.0;
      b(k) = spectral_action_dense(cfg, c);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < 4) continue;  // degenerate draw; try fresh seeds
    x = qr.solve(b);
    rms = std::sqrt((a * x - b).squaredNorm() / rows);
    solved = true;
  }
  if (!solved)
    throw std::runtime_error("calibrate: singular system after 5 attempts");

  CalibrationReport rep;
  rep.spec = spec;
  rep.measured = {x(0), x(1), x(2), x(3)};
  rep.formula = action_coefficients(lat, spec.N, c);
  rep.ls_residual = rms;
  const double tol = spec.tolerance("calibration", 1e-8);
  auto rel = [](double m, double f) {
    return std::abs(m - f) / (1.0 + std::abs(f));
  };
  rep.max_rel_diff = std::max(
      {rel(rep.measured.alpha_w, rep.formula.alpha_w),
       rel(rep.measured.alpha_4, rep.formula.alpha_4),
       rel(rep.measured.alpha_2, rep.formula.alpha_2),
       rel(rep.measured.alpha_0, rep.formula.alpha_0)});
  rep.pass = rep.max_rel_diff <= tol;
  return rep;
}

json CalibrationReport::to_json() const {
  auto coeffs = [](const ActionCoefficients& a) {
    return json{{"alpha_w", a.alpha_w},
                {"alpha_4", a.alpha_4},
                {"alpha_2", a.alpha_2},
                {"alpha_0", a.alpha_0}};
  };
  return {{"spec", spec.to_json()},
          {"measured", coeffs(measured)},
          {"formula", coeffs(formula)},
          {"ls_residual", ls_residual},
          {"max_rel_diff", max_rel_diff},
          {"pass", pass}};
}

ContinuumRun run_continuum(const RunSpec& spec) {
  if (!spec.fields)
    throw std::invalid_argument("continuum: field spec required");
  ContinuumRun run;
  run.spec = spec;
  if (spec.sweep == "wilson" || spec.sweep == "both")
    run.reports.push_back(
        wilson_limit_sweep(*spec.fields, spec.n_list, spec.threads));
  if (spec.sweep == "higgs" || spec.sweep == "both") {
    auto reps = higgs_limit_sweep(*spec.fields, spec.n_list, spec.threads);
    for (auto& r : reps) run.reports.push_back(std::move(r));
  }
  run.pass = true;
  for (const ConvergenceReport& r : run.reports) {
    if (r.fitted)
      run.pass &=
          r.fit.order >= spec.order_min && r.fit.order <= spec.order_max;
    else
      run.pass &= r.tail_converged;  // exact or flat observable
  }
  return run;
}

json ContinuumRun::to_json() const {
  json reps = json::array();
  for (const ConvergenceReport& r : reports) reps.push_back(r.to_json());
  return {{"spec", spec.to_json()}, {"reports", reps}, {"pass", pass}};
}

json run_generate(const RunSpec& spec) {
  GaugeNetworkConfig cfg = make_config(spec, 0);
  cfg.meta["version"] = kVersion;
  cfg.meta["runspec"] = spec.to_json();
  return config_to_json(cfg);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace latspec
