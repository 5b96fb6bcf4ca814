#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latspec/lattice.hpp"
#include "latspec/matrix.hpp"
#include "latspec/rng.hpp"

namespace latspec {

// Base spectrum for the constrained generator: (eigenvalue, multiplicity)
// levels of D0. A level with multiplicity >= 2 gives a non-abelian edge
// commutant, which keeps the Wilson term dynamical.
struct ConstrainedSpec {
  std::vector<std::pair<double, int>> levels;

  int matrix_size() const;
  Eigen::VectorXd expanded() const;
  double max_abs_eigenvalue() const;
};

// The dynamical data {D_v Hermitian, L_e unitary} on a lattice. D in vertex
// order, L in edge order (the lattice module's deterministic orders).
struct GaugeNetworkConfig {
  TorusLattice lattice;
  int N = 0;
  std::vector<ComplexMatrix> D;
  std::vector<ComplexMatrix> L;
  nlohmann::json meta;  // provenance; ignored by numerics and equality

  bool same_data(const GaugeNetworkConfig& o) const;
};

// Independent GUE vertex operators and Haar edge unitaries; generically
// violates the edge constraint. Splits the rng by vertex / edge index.
GaugeNetworkConfig random_unconstrained(const TorusLattice& lat, int N,
                                        double scale, const PhiloxRng& root);

// Commutant construction: D_v = U_v D0 U_v', L_e = U_t W_e U_s' with W_e
// block-Haar inside each eigenspace of D0, so D_t = L D_s L' holds exactly.
GaugeNetworkConfig random_constrained(const TorusLattice& lat,
                                      const ConstrainedSpec& spec,
                                      const PhiloxRng& root);

// max over edges of ||D_t - L D_s L'||_max
double check_representation(const GaugeNetworkConfig& cfg);

// Ordered product along the path, rightmost factor first; L for forward
// steps, L' for reversed ones.
ComplexMatrix path_holonomy(const GaugeNetworkConfig& cfg,
                            const DirectedPath& path);

// D_v -> U_v D_v U_v', L_e -> U_t L_e U_s'.
GaugeNetworkConfig gauge_transform(const GaugeNetworkConfig& cfg,
                                   const std::vector<ComplexMatrix>& u);

nlohmann::json config_to_json(const GaugeNetworkConfig& cfg);
GaugeNetworkConfig config_from_json(const nlohmann::json& j);

}  // namespace latspec
