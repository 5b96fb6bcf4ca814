#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "latspec/clifford.hpp"
#include "latspec/gauge.hpp"

namespace latspec {

// Coefficients of the exact torus identity
//   S = alpha_w * W + alpha_4 * T4 + alpha_2 * T2edge + alpha_0
// valid on lattices without closed non-backtracking walks of length <= 4
// beyond plaquette loops, i.e. extent 3 or >= 5. On extent 2 and 4 the
// residual picks up wrap-line holonomies (see wrap_line_correction).
struct ActionCoefficients {
  double alpha_w = 0;
  double alpha_4 = 0;
  double alpha_2 = 0;
  double alpha_0 = 0;
};

ActionCoefficients action_coefficients(const TorusLattice& lat, int N,
                                       double c);

// True when the decomposition identity above is exact on this lattice.
bool decomposition_exact(const TorusLattice& lat);

// D = hopping + diagonal: block c * gamma^mu (x) L_e at (t, s) plus its
// adjoint at (s, t) for every edge, and gamma (x) D_v on the diagonal.
// Blocks between the same vertex pair accumulate (extent-2 tori have two
// directed edges per geometric pair).
class DiracOperator {
 public:
  DiracOperator(const GaugeNetworkConfig& cfg, double c);

  const TorusLattice& lattice() const { return lattice_; }
  const CliffordBasis& basis() const { return basis_; }
  int matrix_size() const { return n_; }
  double hopping() const { return c_; }
  int block_dim() const { return basis_.spinor_dim * n_; }
  std::int64_t dim() const { return block_dim() * lattice_.vertex_count(); }

  using Row = std::vector<std::pair<std::int64_t, ComplexMatrix>>;
  const std::vector<Row>& rows() const { return rows_; }

  // Dense assembly; guarded by the dimension cap.
  ComplexMatrix dense(std::int64_t max_dim = 8192) const;
  Eigen::VectorXd spectrum(std::int64_t max_dim = 8192) const;

  // Tr(D^4) = ||D^2||_F^2 computed block-row by block-row; never
  // materializes the dense operator.
  double trace_d4(int threads = 1) const;

 private:
  TorusLattice lattice_;
  CliffordBasis basis_;
  int n_;
  double c_;
  std::vector<Row> rows_;
};

// l^d * Tr(D^4), block-sparse route.
double spectral_action(const GaugeNetworkConfig& cfg, double c,
                       int threads = 1);
// Same number through the dense eigenvalue route; the oracle path.
double spectral_action_dense(const GaugeNetworkConfig& cfg, double c,
                             std::int64_t max_dim = 8192);

// W(L) = -sum_p tr(hol_p + hol_p'), each geometric square once.
double wilson_action(const GaugeNetworkConfig& cfg, int threads = 1);

// L4' L3' L2 L1 around plaquette p.
ComplexMatrix plaquette_holonomy(const GaugeNetworkConfig& cfg,
                                 std::int64_t p);

struct HiggsTerms {
  double t4 = 0;       // sum_v tr D_v^4
  double t2_edge = 0;  // sum_e tr(D_s^2 + D_t^2 - L' D_t L D_s)
  std::vector<double> per_edge;
};
HiggsTerms higgs_terms(const GaugeNetworkConfig& cfg, int threads = 1);

struct DecompositionReport {
  double S = 0;
  double W = 0;
  double T4 = 0;
  double T2edge = 0;
  ActionCoefficients alpha;
  double residual = 0;
  bool exact_lattice = true;  // extent admits the exact identity
  nlohmann::json provenance;
};
DecompositionReport decompose(const GaugeNetworkConfig& cfg, double c,
                              int threads = 1);
nlohmann::json decomposition_to_json(const DecompositionReport& r);

// Straight wrap-line term that closes the identity on extent-4 tori:
// 8 c^4 l^d dim_s * sum over axis lines of Re tr(line holonomy).
double wrap_line_correction(const GaugeNetworkConfig& cfg, double c);

// max over edges of |tr(D_t^2 - L' D_t L D_s)|; vanishes under the
// representation constraint.
double edge_cancellation_max(const GaugeNetworkConfig& cfg);

// tr(D_v^m) per vertex, in vertex order.
std::vector<double> vertex_trace_profile(const GaugeNetworkConfig& cfg,
                                         int m);

struct EqBSides {
  double lhs = 0;  // alpha_4 T4 + alpha_2 T2edge
  double rhs = 0;  // sum_v (alpha_4 tr D_v^4 + alpha_2 d tr D_v^2)
};
// Requires check_representation(cfg) <= constraint_tol.
EqBSides eqB_collapse(const GaugeNetworkConfig& cfg, double c,
                      double constraint_tol = 1e-8);

}  // namespace latspec
