#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "latspec/gauge.hpp"

namespace latspec {

// One trigonometric mode: coeff * cos(2 pi k.x / T + phase) with a Hermitian
// matrix coefficient, so the field value is Hermitian for every x.
struct FieldMode {
  std::array<int, 4> k{};
  ComplexMatrix coeff;
  double phase = 0.0;
};

// Trigonometric-polynomial fields A_mu(x), Phi(x) on the torus of period T
// per side. Integrals of polynomials in these fields are exact under the
// periodic Riemann rule once the grid beats the bandwidth.
struct SmoothFieldSpec {
  int d = 2;
  double period = 1.0;
  int N = 1;
  std::array<std::vector<FieldMode>, 4> vector_modes;  // A_mu, mu in [0, d)
  std::vector<FieldMode> higgs_modes;                  // Phi

  int k_max() const;
  ComplexMatrix vector_field(int mu, const std::array<double, 4>& x) const;
  // d/dx_nu A_mu
  ComplexMatrix vector_deriv(int mu, int nu,
                             const std::array<double, 4>& x) const;
  ComplexMatrix higgs_field(const std::array<double, 4>& x) const;
  ComplexMatrix higgs_deriv(int nu, const std::array<double, 4>& x) const;

  nlohmann::json to_json() const;
  static SmoothFieldSpec from_json(const nlohmann::json& j);
};

// F_mu_nu = d_mu A_nu - d_nu A_mu + i [A_mu, A_nu]; exact derivatives.
ComplexMatrix curvature(const SmoothFieldSpec& fields,
                        const std::array<double, 4>& x, int mu, int nu);

// integral over the torus of sum_{mu<nu} tr(F_mu_nu^2), by the periodic
// Riemann rule on quad_n^d points; exact once quad_n >= 4 k_max + 2.
double ym_integral(const SmoothFieldSpec& fields, int quad_n,
                   bool strict = true);

// L_e = exp(i l A_mu(x_v)), D_v = Phi(x_v); requires period == n * l.
GaugeNetworkConfig from_continuum(const TorusLattice& lat,
                                  const SmoothFieldSpec& fields);

struct SweepPoint {
  int n = 0;
  double l = 0;
  double value = 0;
  double target = 0;
  double abs_err = 0;
  double rel_err = 0;
};

struct FitResult {
  double order = 0;
  double fit_residual = 0;  // rms residual of the log-log fit
  int points_used = 0;
  int points_dropped = 0;
};

// Least-squares slope of log(err) against log(l). Points with err <= 0 are
// dropped; fewer than 3 survivors is a domain_error.
FitResult fit_order(const std::vector<std::pair<double, double>>& l_err);

struct ConvergenceReport {
  std::string observable;
  std::vector<SweepPoint> points;
  FitResult fit;
  bool fitted = false;          // a log-log fit was possible
  bool absolute_mode = false;   // target was zero; abs errors reported
  bool tail_converged = false;  // finest point already at machine precision
  double kappa = 0.0;           // measured value / target at the finest l
  nlohmann::json to_json() const;
};

// W(L) + 2NP, normalized by l^(d-4), against the ym_integral target.
ConvergenceReport wilson_limit_sweep(const SmoothFieldSpec& fields,
                                     const std::vector<int>& n_list,
                                     int threads = 1);

// (i) quartic l^d sum_v tr D_v^4 vs integral of tr Phi^4;
// (ii) covariant kinetic l^(d-2) sum_e tr((L'D_tL - D_s)^2) vs the
//      integral of sum_mu tr((d_mu Phi - i[A_mu, Phi])^2);
// (iii) mass l^d sum_e (tr D_s^2 + tr D_t^2)/2 vs d * integral of tr Phi^2.
std::array<ConvergenceReport, 3> higgs_limit_sweep(
    const SmoothFieldSpec& fields, const std::vector<int>& n_list,
    int threads = 1);

std::string convergence_csv(const ConvergenceReport& r);

}  // namespace latspec
