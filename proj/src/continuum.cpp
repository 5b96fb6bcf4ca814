#include "latspec/continuum.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "latspec/action.hpp"
#include "latspec/reduce.hpp"

namespace latspec {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

ComplexMatrix eval_modes(const std::vector<FieldMode>& modes, double period,
                         int n, const std::array<double, 4>& x) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const FieldMode& m : modes) {
    double arg = m.phase;
    for (int i = 0; i < 4; ++i) arg += kTwoPi * m.k[i] * x[i] / period;
    out += std::cos(arg) * m.coeff;
  }
  return out;
}

ComplexMatrix eval_modes_deriv(const std::vector<FieldMode>& modes,
                               double period, int n, int nu,
                               const std::array<double, 4>& x) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const FieldMode& m : modes) {
    if (m.k[nu] == 0) continue;
    double arg = m.phase;
    for (int i = 0; i < 4; ++i) arg += kTwoPi * m.k[i] * x[i] / period;
    out += (-kTwoPi * m.k[nu] / period) * std::sin(arg) * m.coeff;
  }
  return out;
}

void check_mode(const FieldMode& m, int N, int d) {
  if (m.coeff.rows() != N || m.coeff.cols() != N)
    throw std::invalid_argument("field mode: coefficient size mismatch");
  require_hermitian(m.coeff, 1e-12);
  for (int i = d; i < 4; ++i)
    if (m.k[i] != 0)
      throw std::invalid_argument("field mode: wavevector beyond dimension");
}

// Integral over the torus [0, T)^d on a quad_n^d periodic Riemann grid.
template <typename Fn>
double torus_integral(int d, double period, int quad_n, Fn&& fn) {
  std::int64_t points = 1;
  for (int i = 0; i < d; ++i) points *= quad_n;
  const double w = std::pow(period / quad_n, d);
  double sum = 0.0;
  for (std::int64_t idx = 0; idx < points; ++idx) {
    std::array<double, 4> x{};
    std::int64_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      x[i] = period * static_cast<double>(rest % quad_n) / quad_n;
      rest /= quad_n;
    }
    sum += fn(x);
  }
  return w * sum;
}

int required_quad(const SmoothFieldSpec& f) { return 4 * f.k_max() + 2; }

}  // namespace

int SmoothFieldSpec::k_max() const {
  int m = 0;
  auto scan = [&](const std::vector<FieldMode>& modes) {
    for (const FieldMode& mode : modes)
      for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(mode.k[i]));
  };
  for (int mu = 0; mu < d; ++mu) scan(vector_modes[mu]);
  scan(higgs_modes);
  return m;
}

ComplexMatrix SmoothFieldSpec::vector_field(
    int mu, const std::array<double, 4>& x) const {
  return eval_modes(vector_modes[mu], period, N, x);
}

ComplexMatrix SmoothFieldSpec::vector_deriv(
    int mu, int nu, const std::array<double, 4>& x) const {
  return eval_modes_deriv(vector_modes[mu], period, N, nu, x);
}

ComplexMatrix SmoothFieldSpec::higgs_field(
    const std::array<double, 4>& x) const {
  return eval_modes(higgs_modes, period, N, x);
}

ComplexMatrix SmoothFieldSpec::higgs_deriv(
    int nu, const std::array<double, 4>& x) const {
  return eval_modes_deriv(higgs_modes, period, N, nu, x);
}

json SmoothFieldSpec::to_json() const {
  auto mode_json = [](const FieldMode& m) {
    json coeff = json::array();
    for (Eigen::Index i = 0; i < m.coeff.rows(); ++i)
      for (Eigen::Index j = 0; j < m.coeff.cols(); ++j)
        coeff.push_back(
            json::array({m.coeff(i, j).real(), m.coeff(i, j).imag()}));
    return json{{"k", json::array({m.k[0], m.k[1], m.k[2], m.k[3]})},
                {"coeff", coeff},
                {"phase", m.phase}};
  };
  json a = json::array();
  for (int mu = 0; mu < d; ++mu) {
    json dir = json::array();
    for (const FieldMode& m : vector_modes[mu]) dir.push_back(mode_json(m));
    a.push_back(dir);
  }
  json phi = json::array();
  for (const FieldMode& m : higgs_modes) phi.push_back(mode_json(m));
  return {{"d", d}, {"T", period}, {"N", N}, {"A", a}, {"Phi", phi}};
}

SmoothFieldSpec SmoothFieldSpec::from_json(const json& j) {
  for (const auto& [key, value] : j.items())
    if (key != "d" && key != "T" && key != "N" && key != "A" && key != "Phi")
      throw std::invalid_argument("fields: unknown key '" + key + "'");
  SmoothFieldSpec f;
  f.d = j.at("d").get<int>();
  if (f.d != 2 && f.d != 4)
    throw std::invalid_argument("fields: d must be 2 or 4");
  f.period = j.at("T").get<double>();
  if (!(f.period > 0)) throw std::invalid_argument("fields: T must be > 0");
  f.N = j.at("N").get<int>();
  if (f.N < 1) throw std::invalid_argument("fields: N < 1");

  auto parse_mode = [&](const json& jm) {
    for (const auto& [key, value] : jm.items())
      if (key != "k" && key != "coeff" && key != "phase")
        throw std::invalid_argument("field mode: unknown key '" + key + "'");
    FieldMode m;
    const json& k = jm.at("k");
    if (!k.is_array() || k.size() > 4)
      throw std::invalid_argument("field mode: bad wavevector");
    for (std::size_t i = 0; i < k.size(); ++i) m.k[i] = k[i].get<int>();
    const json& c = jm.at("coeff");
    if (c.size() != static_cast<std::size_t>(f.N) * f.N)
      throw std::invalid_argument("field mode: coefficient size");
    m.coeff = ComplexMatrix(f.N, f.N);
    std::size_t idx = 0;
    for (int r = 0; r < f.N; ++r)
      for (int col = 0; col < f.N; ++col) {
        const json& z = c[idx++];
        m.coeff(r, col) =
            std::complex<double>(z[0].get<double>(), z[1].get<double>());
      }
    if (jm.contains("phase")) m.phase = jm.at("phase").get<double>();
    check_mode(m, f.N, f.d);
    return m;
  };

  const json& a = j.at("A");
  if (!a.is_array() || a.size() != static_cast<std::size_t>(f.d))
    throw std::invalid_argument("fields: A must list one mode set per axis");
  for (int mu = 0; mu < f.d; ++mu)
    for (const json& jm : a[static_cast<std::size_t>(mu)])
      f.vector_modes[mu].push_back(parse_mode(jm));
  for (const json& jm : j.at("Phi")) f.higgs_modes.push_back(parse_mode(jm));
  return f;
}

ComplexMatrix curvature(const SmoothFieldSpec& fields,
                        const std::array<double, 4>& x, int mu, int nu) {
  if (mu == nu) throw std::invalid_argument("curvature: mu == nu");
  const ComplexMatrix amu = fields.vector_field(mu, x);
  const ComplexMatrix anu = fields.vector_field(nu, x);
  const ComplexMatrix f = fields.vector_deriv(nu, mu, x) -
                          fields.vector_deriv(mu, nu, x) +
                          std::complex<double>(0, 1) * (amu * anu - anu * amu);
  return hermitian_part(f);
}

double ym_integral(const SmoothFieldSpec& fields, int quad_n, bool strict) {
  if (strict && quad_n < required_quad(fields))
    throw std::invalid_argument(
        "ym_integral: quad_n below the exactness bound 4*k_max + 2");
  return torus_integral(
      fields.d, fields.period, quad_n, [&](const std::array<double, 4>& x) {
        double s = 0.0;
        for (int mu = 0; mu < fields.d; ++mu)
          for (int nu = mu + 1; nu < fields.d; ++nu)
            s += curvature(fields, x, mu, nu).squaredNorm();
        return s;
      });
}

GaugeNetworkConfig from_continuum(const TorusLattice& lat,
                                  const SmoothFieldSpec& fields) {
  if (fields.d != lat.dim())
    throw std::invalid_argument("from_continuum: dimension mismatch");
  const double size = lat.extent() * lat.spacing();
  if (std::abs(size - fields.period) > 1e-9 * fields.period)
    throw std::invalid_argument(
        "from_continuum: field period incompatible with lattice size");
  for (int mu = 0; mu < fields.d; ++mu)
    for (const FieldMode& m : fields.vector_modes[mu])
      check_mode(m, fields.N, fields.d);
  for (const FieldMode& m : fields.higgs_modes)
    check_mode(m, fields.N, fields.d);

  GaugeNetworkConfig cfg{lat, fields.N, {}, {}, {}};
  const std::int64_t V = lat.vertex_count();
  const double l = lat.spacing();
  cfg.D.reserve(V);
  for (std::int64_t v = 0; v < V; ++v) {
    const Coords c = lat.coords(v);
    std::array<double, 4> x{};
    for (int i = 0; i < lat.dim(); ++i) x[i] = l * c[i];
    cfg.D.push_back(hermitian_part(fields.higgs_field(x)));
  }
  cfg.L.reserve(lat.edge_count());
  for (std::int64_t e = 0; e < lat.edge_count(); ++e) {
    const Edge ed = lat.edge(e);
    const Coords c = lat.coords(ed.source);
    std::array<double, 4> x{};
    for (int i = 0; i < lat.dim(); ++i) x[i] = l * c[i];
    cfg.L.push_back(exp_i_hermitian(fields.vector_field(ed.direction, x), l));
  }
  cfg.meta = {{"generator", "continuum"}, {"fields", fields.to_json()}};
  return cfg;
}

FitResult fit_order(const std::vector<std::pair<double, double>>& l_err) {
  std::vector<std::pair<double, double>> pts;
  int dropped = 0;
  for (const auto& [l, err] : l_err) {
    if (err <= 0.0) {
      ++dropped;
      continue;
    }
    pts.emplace_back(std::log(l), std::log(err));
  }
  if (pts.size() < 3)
    throw std::domain_error("fit_order: fewer than 3 usable points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / pts.size();
  const double my = sy / pts.size();
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_order: degenerate abscissae");
  FitResult fit;
  fit.order = sxy / sxx;
  double ss = 0;
  for (const auto& [x, y] : pts) {
    const double r = y - my - fit.order * (x - mx);
    ss += r * r;
  }
  fit.fit_residual = std::sqrt(ss / pts.size());
  fit.points_used = static_cast<int>(pts.size());
  fit.points_dropped = dropped;
  return fit;
}

namespace {

void validate_n_list(const std::vector<int>& n_list) {
  if (n_list.size() < 3)
    throw std::invalid_argument("sweep: need at least 3 lattice sizes");
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1])
      throw std::invalid_argument("sweep: n_list must be ascending");
  if (n_list.front() < 2)
    throw std::invalid_argument("sweep: lattice sizes must be >= 2");
}

// Fill errors, kappa, and the fit given lattice values and one target.
void finish_report(ConvergenceReport& rep, double target) {
  double scale = std::abs(target);
  for (SweepPoint& p : rep.points) {
    p.target = target;
    p.abs_err = std::abs(p.value - target);
    p.rel_err = scale > 0 ? p.abs_err / scale : p.abs_err;
  }
  rep.absolute_mode = scale == 0.0;
  rep.kappa = scale > 0 ? rep.points.back().value / target : 0.0;
  const double floor = 1e-12 * (1.0 + scale);
  rep.tail_converged = rep.points.back().abs_err <= floor;
  bool all_converged = true;
  for (const SweepPoint& p : rep.points)
    if (p.abs_err > floor) all_converged = false;
  if (all_converged) {
    rep.fitted = false;
    return;
  }
  std::vector<std::pair<double, double>> pts;
  for (const SweepPoint& p : rep.points) pts.emplace_back(p.l, p.abs_err);
  try {
    rep.fit = fit_order(pts);
    rep.fitted = true;
  } catch (const std::domain_error&) {
    // too many exactly-converged points to fit a power law
    rep.fitted = false;
  }
}

}  // namespace

ConvergenceReport wilson_limit_sweep(const SmoothFieldSpec& fields,
                                     const std::vector<int>& n_list,
                                     int threads) {
  validate_n_list(n_list);
  SmoothFieldSpec pure = fields;
  pure.higgs_modes.clear();
  const double target = ym_integral(pure, required_quad(pure));

  ConvergenceReport rep;
  rep.observable = "wilson_yang_mills";
  for (int n : n_list) {
    const double l = pure.period / n;
    const TorusLattice lat(pure.d, n, l);
    const GaugeNetworkConfig cfg = from_continuum(lat, pure);
    const double w = wilson_action(cfg, threads);
    const double subtracted =
        w + 2.0 * pure.N * static_cast<double>(lat.plaquette_count());
    const double obs = std::pow(l, pure.d - 4) * subtracted;
    rep.points.push_back({n, l, obs, 0, 0, 0});
  }
  finish_report(rep, target);
  return rep;
}

std::array<ConvergenceReport, 3> higgs_limit_sweep(
    const SmoothFieldSpec& fields, const std::vector<int>& n_list,
    int threads) {
  validate_n_list(n_list);
  const int qn = required_quad(fields);
  const double t_quartic = torus_integral(
      fields.d, fields.period, qn, [&](const std::array<double, 4>& x) {
        const ComplexMatrix phi = fields.higgs_field(x);
        const ComplexMatrix phi2 = phi * phi;
        return (phi2 * phi2).trace().real();
      });
  const double t_kinetic = torus_integral(
      fields.d, fields.period, qn, [&](const std::array<double, 4>& x) {
        const ComplexMatrix phi = fields.higgs_field(x);
        double s = 0.0;
        for (int mu = 0; mu < fields.d; ++mu) {
          const ComplexMatrix amu = fields.vector_field(mu, x);
          const ComplexMatrix cov =
              fields.higgs_deriv(mu, x) -
              std::complex<double>(0, 1) * (amu * phi - phi * amu);
          s += (cov * cov).trace().real();
        }
        return s;
      });
  const double t_mass =
      fields.d * torus_integral(fields.d, fields.period, qn,
                                [&](const std::array<double, 4>& x) {
                                  const ComplexMatrix phi =
                                      fields.higgs_field(x);
                                  return (phi * phi).trace().real();
                                });

  std::array<ConvergenceReport, 3> reps;
  reps[0].observable = "higgs_quartic";
  reps[1].observable = "higgs_kinetic";
  reps[2].observable = "higgs_mass";

  for (int n : n_list) {
    const double l = fields.period / n;
    const TorusLattice lat(fields.d, n, l);
    const GaugeNetworkConfig cfg = from_continuum(lat, fields);
    const double ld = std::pow(l, fields.d);

    const double quartic =
        ld * tiled_sum(lat.vertex_count(), threads, [&](std::int64_t v) {
          const ComplexMatrix& dv = cfg.D[static_cast<std::size_t>(v)];
          const ComplexMatrix d2 = dv * dv;
          return (d2 * d2).trace().real();
        });
    const double kinetic =
        std::pow(l, fields.d - 2) *
        tiled_sum(lat.edge_count(), threads, [&](std::int64_t e) {
          const Edge ed = lat.edge(e);
          const std::int64_t t = lat.edge_target(e);
          const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(e)];
          const ComplexMatrix diff =
              le.adjoint() * cfg.D[static_cast<std::size_t>(t)] * le -
              cfg.D[static_cast<std::size_t>(ed.source)];
          return (diff * diff).trace().real();
        });
    const double mass =
        ld * tiled_sum(lat.edge_count(), threads, [&](std::int64_t e) {
          const Edge ed = lat.edge(e);
          const std::int64_t t = lat.edge_target(e);
          const ComplexMatrix& ds = cfg.D[static_cast<std::size_t>(ed.source)];
          const ComplexMatrix& dt = cfg.D[static_cast<std::size_t>(t)];
          return 0.5 * ((ds * ds).trace().real() + (dt * dt).trace().real());
        });

    reps[0].points.push_back({n, l, quartic, 0, 0, 0});
    reps[1].points.push_back({n, l, kinetic, 0, 0, 0});
    reps[2].points.push_back({n, l, mass, 0, 0, 0});
  }
  finish_report(reps[0], t_quartic);
  finish_report(reps[1], t_kinetic);
  finish_report(reps[2], t_mass);
  return reps;
}

json ConvergenceReport::to_json() const {
  json pts = json::array();
  for (const SweepPoint& p : points)
    pts.push_back({{"n", p.n},
                   {"l", p.l},
                   {"value", p.value},
                   {"target", p.target},
                   {"abs_err", p.abs_err},
                   {"rel_err", p.rel_err}});
  json j = {{"observable", observable},
            {"points", pts},
            {"fitted", fitted},
            {"absolute_mode", absolute_mode},
            {"tail_converged", tail_converged},
            {"kappa", kappa}};
  if (fitted)
    j["fit"] = {{"order", fit.order},
                {"rms", fit.fit_residual},
                {"points_used", fit.points_used},
                {"points_dropped", fit.points_dropped}};
  return j;
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::string out = "n,l,observable,target,abs_err,rel_err\n";
  char line[256];
  for (const SweepPoint& p : r.points) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.n, p.l, p.value, p.target, p.abs_err, p.rel_err);
    out += line;
  }
  return out;
}

}  // namespace latspec
