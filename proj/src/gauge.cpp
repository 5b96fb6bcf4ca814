#include "latspec/gauge.hpp"

#include <stdexcept>

namespace latspec {

using nlohmann::json;

int ConstrainedSpec::matrix_size() const {
  int n = 0;
  for (const auto& [value, mult] : levels) {
    if (mult < 1)
      throw std::invalid_argument("ConstrainedSpec: multiplicity < 1");
    n += mult;
  }
  return n;
}

Eigen::VectorXd ConstrainedSpec::expanded() const {
  Eigen::VectorXd v(matrix_size());
  int i = 0;
  for (const auto& [value, mult] : levels)
    for (int k = 0; k < mult; ++k) v(i++) = value;
  return v;
}

double ConstrainedSpec::max_abs_eigenvalue() const {
  double m = 0.0;
  for (const auto& [value, mult] : levels) m = std::max(m, std::abs(value));
  return m;
}

bool GaugeNetworkConfig::same_data(const GaugeNetworkConfig& o) const {
  if (!(lattice == o.lattice) || N != o.N) return false;
  for (std::size_t i = 0; i < D.size(); ++i)
    if (D[i] != o.D[i]) return false;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L[i] != o.L[i]) return false;
  return true;
}

GaugeNetworkConfig random_unconstrained(const TorusLattice& lat, int N,
                                        double scale, const PhiloxRng& root) {
  if (N < 1) throw std::invalid_argument("random_unconstrained: N < 1");
  GaugeNetworkConfig cfg{lat, N, {}, {}, {}};
  const std::int64_t V = lat.vertex_count();
  const std::int64_t E = lat.edge_count();
  cfg.D.reserve(V);
  cfg.L.reserve(E);
  for (std::int64_t v = 0; v < V; ++v) {
    PhiloxRng rng = root.split(static_cast<std::uint64_t>(v));
    cfg.D.push_back(gue_hermitian(N, scale, rng));
  }
  for (std::int64_t e = 0; e < E; ++e) {
    PhiloxRng rng = root.split(static_cast<std::uint64_t>(V + e));
    cfg.L.push_back(haar_unitary(N, rng));
  }
  cfg.meta = {{"generator", "unconstrained"},
              {"seed", root.seed()},
              {"scale", scale}};
  return cfg;
}

GaugeNetworkConfig random_constrained(const TorusLattice& lat,
                                      const ConstrainedSpec& spec,
                                      const PhiloxRng& root) {
  const int N = spec.matrix_size();
  const std::int64_t V = lat.vertex_count();
  const std::int64_t E = lat.edge_count();

  const Eigen::VectorXd lam = spec.expanded();
  ComplexMatrix d0 = ComplexMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) d0(i, i) = lam(i);

  std::vector<ComplexMatrix> U(static_cast<std::size_t>(V));
  for (std::int64_t v = 0; v < V; ++v) {
    PhiloxRng rng = root.split(static_cast<std::uint64_t>(v));
    U[static_cast<std::size_t>(v)] = haar_unitary(N, rng);
  }

  GaugeNetworkConfig cfg{lat, N, {}, {}, {}};
  cfg.D.reserve(V);
  for (std::int64_t v = 0; v < V; ++v) {
    const ComplexMatrix& uv = U[static_cast<std::size_t>(v)];
    cfg.D.push_back(uv * d0 * uv.adjoint());
  }
  cfg.L.reserve(E);
  for (std::int64_t e = 0; e < E; ++e) {
    PhiloxRng rng = root.split(static_cast<std::uint64_t>(V + e));
    ComplexMatrix w = ComplexMatrix::Zero(N, N);
    int off = 0;
    for (const auto& [value, mult] : spec.levels) {
      w.block(off, off, mult, mult) = haar_unitary(mult, rng);
      off += mult;
    }
    const Edge ed = lat.edge(e);
    const std::int64_t t = lat.edge_target(e);
    cfg.L.push_back(U[static_cast<std::size_t>(t)] * w *
                    U[static_cast<std::size_t>(ed.source)].adjoint());
  }

  json spectrum = json::array();
  for (const auto& [value, mult] : spec.levels)
    spectrum.push_back(json::array({value, mult}));
  cfg.meta = {{"generator", "constrained"},
              {"seed", root.seed()},
              {"spectrum", spectrum}};
  return cfg;
}

double check_representation(const GaugeNetworkConfig& cfg) {
  double worst = 0.0;
  const std::int64_t E = cfg.lattice.edge_count();
  for (std::int64_t e = 0; e < E; ++e) {
    const Edge ed = cfg.lattice.edge(e);
    const std::int64_t t = cfg.lattice.edge_target(e);
    const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(e)];
    const ComplexMatrix r =
        cfg.D[static_cast<std::size_t>(t)] -
        le * cfg.D[static_cast<std::size_t>(ed.source)] * le.adjoint();
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

ComplexMatrix path_holonomy(const GaugeNetworkConfig& cfg,
                            const DirectedPath& path) {
  ComplexMatrix u = ComplexMatrix::Identity(cfg.N, cfg.N);
  if (path.empty()) return u;
  std::int64_t at = step_source(cfg.lattice, path.front());
  for (const PathStep& s : path) {
    if (step_source(cfg.lattice, s) != at)
      throw std::invalid_argument("path_holonomy: steps do not compose");
    const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(s.edge)];
    if (s.reverse)
      u = le.adjoint() * u;
    else
      u = le * u;
    at = step_target(cfg.lattice, s);
  }
  return u;
}

GaugeNetworkConfig gauge_transform(const GaugeNetworkConfig& cfg,
                                   const std::vector<ComplexMatrix>& u) {
  if (static_cast<std::int64_t>(u.size()) != cfg.lattice.vertex_count())
    throw std::invalid_argument("gauge_transform: one unitary per vertex");
  GaugeNetworkConfig out{cfg.lattice, cfg.N, {}, {}, cfg.meta};
  out.D.reserve(cfg.D.size());
  out.L.reserve(cfg.L.size());
  const std::int64_t V = cfg.lattice.vertex_count();
  for (std::int64_t v = 0; v < V; ++v) {
    const auto i = static_cast<std::size_t>(v);
    out.D.push_back(u[i] * cfg.D[i] * u[i].adjoint());
  }
  const std::int64_t E = cfg.lattice.edge_count();
  for (std::int64_t e = 0; e < E; ++e) {
    const Edge ed = cfg.lattice.edge(e);
    const auto s = static_cast<std::size_t>(ed.source);
    const auto t = static_cast<std::size_t>(cfg.lattice.edge_target(e));
    out.L.push_back(u[t] * cfg.L[static_cast<std::size_t>(e)] *
                    u[s].adjoint());
  }
  return out;
}

namespace {

json matrix_to_json(const ComplexMatrix& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      arr.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return arr;
}

ComplexMatrix matrix_from_json(const json& arr, int n) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("config: matrix entry count mismatch");
  ComplexMatrix m(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const json& z = arr[k++];
      if (!z.is_array() || z.size() != 2)
        throw std::invalid_argument("config: entries must be [re, im]");
      m(i, j) = std::complex<double>(z[0].get<double>(), z[1].get<double>());
    }
  if (!all_finite(m))
    throw std::invalid_argument("config: non-finite matrix entry");
  return m;
}

}  // namespace

json config_to_json(const GaugeNetworkConfig& cfg) {
  json j;
  j["lattice"] = {{"d", cfg.lattice.dim()},
                  {"n", cfg.lattice.extent()},
                  {"l", cfg.lattice.spacing()}};
  j["N"] = cfg.N;
  json d = json::array();
  for (const auto& m : cfg.D) d.push_back(matrix_to_json(m));
  j["D"] = std::move(d);
  json l = json::array();
  for (const auto& m : cfg.L) l.push_back(matrix_to_json(m));
  j["L"] = std::move(l);
  if (!cfg.meta.is_null()) j["meta"] = cfg.meta;
  return j;
}

GaugeNetworkConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: not an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "lattice" && key != "N" && key != "D" && key != "L" &&
        key != "meta")
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  const json& jl = j.at("lattice");
  TorusLattice lat(jl.at("d").get<int>(), jl.at("n").get<int>(),
                   jl.at("l").get<double>());
  const int N = j.at("N").get<int>();
  if (N < 1) throw std::invalid_argument("config: N < 1");
  const json& jd = j.at("D");
  const json& jle = j.at("L");
  if (jd.size() != static_cast<std::size_t>(lat.vertex_count()))
    throw std::invalid_argument("config: D entry count != vertex count");
  if (jle.size() != static_cast<std::size_t>(lat.edge_count()))
    throw std::invalid_argument("config: L entry count != edge count");

  GaugeNetworkConfig cfg{lat, N, {}, {}, {}};
  cfg.D.reserve(jd.size());
  for (const auto& m : jd) {
    ComplexMatrix dm = matrix_from_json(m, N);
    require_hermitian(dm, 1e-12);
    cfg.D.push_back(std::move(dm));
  }
  cfg.L.reserve(jle.size());
  for (const auto& m : jle) {
    ComplexMatrix lm = matrix_from_json(m, N);
    require_unitary(lm, 1e-10);
    cfg.L.push_back(std::move(lm));
  }
  if (j.contains("meta")) cfg.meta = j.at("meta");
  return cfg;
}

}  // namespace latspec
