#include "latspec/action.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "latspec/reduce.hpp"

namespace latspec {

using nlohmann::json;

ActionCoefficients action_coefficients(const TorusLattice& lat, int N,
                                       double c) {
  const int d = lat.dim();
  const double s = 1 << (d / 2);
  const double ld = std::pow(lat.spacing(), d);
  const double c2 = c * c;
  const double c4 = c2 * c2;
  ActionCoefficients a;
  a.alpha_w = 4.0 * c4 * ld * s;
  a.alpha_4 = ld * s;
  a.alpha_2 = 4.0 * c2 * ld * s;
  a.alpha_0 = ld * c4 * static_cast<double>(lat.vertex_count()) * N * s *
              2.0 * d * (4.0 * d - 1.0);
  return a;
}

bool decomposition_exact(const TorusLattice& lat) {
  const int n = lat.extent();
  return n == 3 || n >= 5;
}

DiracOperator::DiracOperator(const GaugeNetworkConfig& cfg, double c)
    : lattice_(cfg.lattice),
      basis_(CliffordBasis::build(cfg.lattice.dim())),
      n_(cfg.N),
      c_(c) {
  const std::int64_t V = lattice_.vertex_count();
  std::vector<std::map<std::int64_t, ComplexMatrix>> acc(
      static_cast<std::size_t>(V));
  for (std::int64_t v = 0; v < V; ++v)
    acc[static_cast<std::size_t>(v)][v] =
        kron(basis_.chirality, cfg.D[static_cast<std::size_t>(v)]);

  auto add = [&](std::int64_t row, std::int64_t col, ComplexMatrix blk) {
    auto& slot = acc[static_cast<std::size_t>(row)];
    auto it = slot.find(col);
    if (it == slot.end())
      slot.emplace(col, std::move(blk));
    else
      it->second += blk;
  };

  const std::int64_t E = lattice_.edge_count();
  for (std::int64_t e = 0; e < E; ++e) {
    const Edge ed = lattice_.edge(e);
    const std::int64_t t = lattice_.edge_target(e);
    const ComplexMatrix blk =
        c_ * kron(basis_.gamma[static_cast<std::size_t>(ed.direction)],
                  cfg.L[static_cast<std::size_t>(e)]);
    add(t, ed.source, blk);
    add(ed.source, t, blk.adjoint());
  }

  rows_.resize(static_cast<std::size_t>(V));
  for (std::int64_t v = 0; v < V; ++v) {
    auto& row = rows_[static_cast<std::size_t>(v)];
    row.reserve(acc[static_cast<std::size_t>(v)].size());
    for (auto& [col, blk] : acc[static_cast<std::size_t>(v)])
      row.emplace_back(col, std::move(blk));
  }
}

ComplexMatrix DiracOperator::dense(std::int64_t max_dim) const {
  if (dim() > max_dim)
    throw std::length_error("DiracOperator::dense: dimension above cap");
  const int b = block_dim();
  ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
  for (std::int64_t v = 0; v < lattice_.vertex_count(); ++v)
    for (const auto& [w, blk] : rows_[static_cast<std::size_t>(v)])
      m.block(v * b, w * b, b, b) = blk;
  return m;
}

Eigen::VectorXd DiracOperator::spectrum(std::int64_t max_dim) const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense(max_dim),
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("DiracOperator::spectrum: solver failed");
  return es.eigenvalues();
}

double DiracOperator::trace_d4(int threads) const {
  const std::int64_t V = lattice_.vertex_count();
  return tiled_sum(V, threads, [&](std::int64_t u) {
    // block row u of D^2, keyed by column vertex
    std::vector<std::pair<std::int64_t, ComplexMatrix>> acc;
    for (const auto& [v, b1] : rows_[static_cast<std::size_t>(u)]) {
      for (const auto& [w, b2] : rows_[static_cast<std::size_t>(v)]) {
        auto it = std::find_if(acc.begin(), acc.end(),
                               [&](const auto& p) { return p.first == w; });
        if (it == acc.end())
          acc.emplace_back(w, b1 * b2);
        else
          it->second += b1 * b2;
      }
    }
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double sum = 0.0;
    for (const auto& [w, blk] : acc) sum += blk.squaredNorm();
    return sum;
  });
}

double spectral_action(const GaugeNetworkConfig& cfg, double c, int threads) {
  const DiracOperator op(cfg, c);
  const double ld = std::pow(cfg.lattice.spacing(), cfg.lattice.dim());
  return ld * op.trace_d4(threads);
}

double spectral_action_dense(const GaugeNetworkConfig& cfg, double c,
                             std::int64_t max_dim) {
  const DiracOperator op(cfg, c);
  const Eigen::VectorXd lam = op.spectrum(max_dim);
  const double ld = std::pow(cfg.lattice.spacing(), cfg.lattice.dim());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    sum += lam(i) * lam(i) * lam(i) * lam(i);
  return ld * sum;
}

ComplexMatrix plaquette_holonomy(const GaugeNetworkConfig& cfg,
                                 std::int64_t p) {
  const auto e = cfg.lattice.plaquette_edges(p);
  const ComplexMatrix& l1 = cfg.L[static_cast<std::size_t>(e[0])];
  const ComplexMatrix& l2 = cfg.L[static_cast<std::size_t>(e[1])];
  const ComplexMatrix& l3 = cfg.L[static_cast<std::size_t>(e[2])];
  const ComplexMatrix& l4 = cfg.L[static_cast<std::size_t>(e[3])];
  return l4.adjoint() * (l3.adjoint() * (l2 * l1));
}

double wilson_action(const GaugeNetworkConfig& cfg, int threads) {
  return tiled_sum(cfg.lattice.plaquette_count(), threads,
                   [&](std::int64_t p) {
                     return -2.0 * plaquette_holonomy(cfg, p).trace().real();
                   });
}

HiggsTerms higgs_terms(const GaugeNetworkConfig& cfg, int threads) {
  HiggsTerms out;
  const std::int64_t V = cfg.lattice.vertex_count();
  const std::int64_t E = cfg.lattice.edge_count();
  out.t4 = tiled_sum(V, threads, [&](std::int64_t v) {
    const ComplexMatrix& d = cfg.D[static_cast<std::size_t>(v)];
    const ComplexMatrix d2 = d * d;
    return (d2 * d2).trace().real();
  });
  out.per_edge.resize(static_cast<std::size_t>(E));
  out.t2_edge = tiled_sum(E, threads, [&](std::int64_t e) {
    const Edge ed = cfg.lattice.edge(e);
    const std::int64_t t = cfg.lattice.edge_target(e);
    const ComplexMatrix& ds = cfg.D[static_cast<std::size_t>(ed.source)];
    const ComplexMatrix& dt = cfg.D[static_cast<std::size_t>(t)];
    const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(e)];
    const double val = (ds * ds).trace().real() + (dt * dt).trace().real() -
                       (le.adjoint() * dt * le * ds).trace().real();
    out.per_edge[static_cast<std::size_t>(e)] = val;
    return val;
  });
  return out;
}

DecompositionReport decompose(const GaugeNetworkConfig& cfg, double c,
                              int threads) {
  DecompositionReport r;
  r.S = spectral_action(cfg, c, threads);
  r.W = wilson_action(cfg, threads);
  const HiggsTerms h = higgs_terms(cfg, threads);
  r.T4 = h.t4;
  r.T2edge = h.t2_edge;
  r.alpha = action_coefficients(cfg.lattice, cfg.N, c);
  r.residual = r.S - (r.alpha.alpha_w * r.W + r.alpha.alpha_4 * r.T4 +
                      r.alpha.alpha_2 * r.T2edge + r.alpha.alpha_0);
  r.exact_lattice = decomposition_exact(cfg.lattice);
  r.provenance = {{"lattice",
                   {{"d", cfg.lattice.dim()},
                    {"n", cfg.lattice.extent()},
                    {"l", cfg.lattice.spacing()}}},
                  {"N", cfg.N},
                  {"c", c}};
  if (!cfg.meta.is_null()) r.provenance["config"] = cfg.meta;
  return r;
}

json decomposition_to_json(const DecompositionReport& r) {
  return {{"S", r.S},
          {"W", r.W},
          {"T4", r.T4},
          {"T2edge", r.T2edge},
          {"alpha_w", r.alpha.alpha_w},
          {"alpha_4", r.alpha.alpha_4},
          {"alpha_2", r.alpha.alpha_2},
          {"alpha_0", r.alpha.alpha_0},
          {"residual", r.residual},
          {"exact_lattice", r.exact_lattice},
          {"provenance", r.provenance}};
}

double wrap_line_correction(const GaugeNetworkConfig& cfg, double c) {
  const TorusLattice& lat = cfg.lattice;
  const int d = lat.dim();
  const int n = lat.extent();
  const double s = 1 << (d / 2);
  const double ld = std::pow(lat.spacing(), d);
  const double c4 = c * c * c * c;
  double sum = 0.0;
  for (int mu = 0; mu < d; ++mu) {
    for (std::int64_t v = 0; v < lat.vertex_count(); ++v) {
      if (lat.coords(v)[mu] != 0) continue;  // one base point per line
      ComplexMatrix p = ComplexMatrix::Identity(cfg.N, cfg.N);
      std::int64_t at = v;
      for (int k = 0; k < n; ++k) {
        p = cfg.L[static_cast<std::size_t>(lat.edge_index(at, mu))] * p;
        at = lat.neighbor(at, mu);
      }
      sum += 8.0 * p.trace().real();
    }
  }
  return c4 * ld * s * sum;
}

double edge_cancellation_max(const GaugeNetworkConfig& cfg) {
  double worst = 0.0;
  const std::int64_t E = cfg.lattice.edge_count();
  for (std::int64_t e = 0; e < E; ++e) {
    const Edge ed = cfg.lattice.edge(e);
    const std::int64_t t = cfg.lattice.edge_target(e);
    const ComplexMatrix& ds = cfg.D[static_cast<std::size_t>(ed.source)];
    const ComplexMatrix& dt = cfg.D[static_cast<std::size_t>(t)];
    const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(e)];
    const double val = (dt * dt).trace().real() -
                       (le.adjoint() * dt * le * ds).trace().real();
    worst = std::max(worst, std::abs(val));
  }
  return worst;
}

std::vector<double> vertex_trace_profile(const GaugeNetworkConfig& cfg,
                                         int m) {
  if (m < 1) throw std::invalid_argument("vertex_trace_profile: m < 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.lattice.vertex_count()));
  for (const ComplexMatrix& d : cfg.D) {
    ComplexMatrix p = d;
    for (int k = 1; k < m; ++k) p = p * d;
    out.push_back(p.trace().real());
  }
  return out;
}

EqBSides eqB_collapse(const GaugeNetworkConfig& cfg, double c,
                      double constraint_tol) {
  const double res = check_representation(cfg);
  if (res > constraint_tol)
    throw std::domain_error(
        "eqB_collapse: representation constraint violated (residual " +
        std::to_string(res) + ")");
  const ActionCoefficients a = action_coefficients(cfg.lattice, cfg.N, c);
  const HiggsTerms h = higgs_terms(cfg);
  EqBSides sides;
  sides.lhs = a.alpha_4 * h.t4 + a.alpha_2 * h.t2_edge;
  const int d = cfg.lattice.dim();
  double rhs = 0.0;
  for (const ComplexMatrix& dv : cfg.D) {
    const ComplexMatrix d2 = dv * dv;
    rhs += a.alpha_4 * (d2 * d2).trace().real() +
           a.alpha_2 * d * d2.trace().real();
  }
  sides.rhs = rhs;
  return sides;
}

}  // namespace latspec
