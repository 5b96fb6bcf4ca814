#include <doctest.h>

#include <cmath>

#include "latspec/action.hpp"
#include "latspec/continuum.hpp"
#include "latspec/reduce.hpp"

using namespace latspec;

namespace {

// a cos(2 pi k.x / T + phase) placed on axis mu
SmoothFieldSpec abelian_field(double a, double T, int axis_mu,
                              std::array<int, 4> k) {
  SmoothFieldSpec f;
  f.d = 2;
  f.period = T;
  f.N = 1;
  FieldMode mode;
  mode.k = k;
  mode.coeff = ComplexMatrix::Constant(1, 1, a);
  f.vector_modes[axis_mu].push_back(mode);
  return f;
}

double kinetic_sum(const GaugeNetworkConfig& cfg) {
  const TorusLattice& lat = cfg.lattice;
  const double scale = std::pow(lat.spacing(), lat.dim() - 2);
  return scale * tiled_sum(lat.edge_count(), 1, [&](std::int64_t e) {
           const Edge ed = lat.edge(e);
           const std::int64_t t = lat.edge_target(e);
           const ComplexMatrix& le = cfg.L[static_cast<std::size_t>(e)];
           const ComplexMatrix diff =
               le.adjoint() * cfg.D[static_cast<std::size_t>(t)] * le -
               cfg.D[static_cast<std::size_t>(ed.source)];
           return (diff * diff).trace().real();
         });
}

}  // namespace

TEST_CASE("curvature") {
  // constant non-commuting fields: F = i [A_mu, A_nu]
  SmoothFieldSpec f;
  f.d = 2;
  f.period = 1.0;
  f.N = 2;
  ComplexMatrix s1(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  FieldMode m1, m2;
  m1.k = {0, 0, 0, 0};
  m1.coeff = s1;
  m2.k = {0, 0, 0, 0};
  m2.coeff = s3;
  f.vector_modes[0].push_back(m1);
  f.vector_modes[1].push_back(m2);
  const std::array<double, 4> x{0.3, 0.4, 0, 0};
  const ComplexMatrix want =
      std::complex<double>(0, 1) * (s1 * s3 - s3 * s1);
  CHECK(max_abs(curvature(f, x, 0, 1) - want) < 1e-14);
  CHECK(hermiticity_error(curvature(f, x, 0, 1)) < 1e-14);
  CHECK_THROWS_AS(curvature(f, x, 1, 1), std::invalid_argument);

  // abelian single mode A_2 = a cos(2 pi x_1 / T):
  // F_12 = -(2 pi a / T) sin(2 pi x_1 / T)
  const double a = 0.7, T = 2.0;
  const SmoothFieldSpec ab = abelian_field(a, T, 1, {1, 0, 0, 0});
  for (double x1 : {0.0, 0.3, 1.1, 1.9}) {
    const std::array<double, 4> pt{x1, 0.5, 0, 0};
    const double want12 = -(2 * M_PI * a / T) * std::sin(2 * M_PI * x1 / T);
    CHECK(curvature(ab, pt, 0, 1)(0, 0).real() ==
          doctest::Approx(want12).epsilon(1e-12));
  }
}

TEST_CASE("ym integral") {
  SmoothFieldSpec flat;
  flat.d = 2;
  flat.period = 1.0;
  flat.N = 1;
  CHECK(ym_integral(flat, 4) == 0.0);

  // closed form: integral of (2 pi a / T)^2 sin^2 = (2 pi a / T)^2 T^2 / 2
  const double a = 0.7, T = 2.0;
  const SmoothFieldSpec ab = abelian_field(a, T, 1, {1, 0, 0, 0});
  const double want = std::pow(2 * M_PI * a / T, 2) * T * T / 2.0;
  const double got = ym_integral(ab, 6);
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
  // the rule is exact once past the bandwidth: refining changes nothing
  CHECK(std::abs(ym_integral(ab, 12) - got) < 1e-12 * (1.0 + got));
  CHECK_THROWS_AS(ym_integral(ab, 4), std::invalid_argument);  // 4 < 4k+2
  CHECK(ym_integral(ab, 4, /*strict=*/false) > 0.0);
}

TEST_CASE("from_continuum") {
  // zero fields: trivial links, zero vertex operators
  SmoothFieldSpec flat;
  flat.d = 2;
  flat.period = 1.0;
  flat.N = 2;
  const TorusLattice lat(2, 4, 0.25);
  const GaugeNetworkConfig cfg = from_continuum(lat, flat);
  for (const ComplexMatrix& l : cfg.L)
    CHECK(max_abs(l - ComplexMatrix::Identity(2, 2)) < 1e-14);
  for (const ComplexMatrix& d : cfg.D) CHECK(max_abs(d) == 0.0);

  // constant Higgs with flat links is a constrained configuration
  SmoothFieldSpec consth = flat;
  FieldMode phi;
  phi.k = {0, 0, 0, 0};
  ComplexMatrix h(2, 2);
  h << 1.0, std::complex<double>(0, 0.5), std::complex<double>(0, -0.5), -1.0;
  phi.coeff = h;
  consth.higgs_modes.push_back(phi);
  const GaugeNetworkConfig ch = from_continuum(lat, consth);
  CHECK(check_representation(ch) < 1e-12);

  // period mismatch is rejected
  CHECK_THROWS_AS(from_continuum(TorusLattice(2, 4, 0.3), flat),
                  std::invalid_argument);

  // abelian flux: the plaquette phase is l^2 F_12 + O(l^3)
  const double a = 0.7, T = 1.0;
  const SmoothFieldSpec ab = abelian_field(a, T, 1, {1, 0, 0, 0});
  const int n = 8;
  const double l = T / n;
  const TorusLattice fine(2, n, l);
  const GaugeNetworkConfig acfg = from_continuum(fine, ab);
  const double bound = 2.0 * M_PI * M_PI * a * l * l * l / (T * T);
  for (std::int64_t p = 0; p < fine.plaquette_count(); ++p) {
    const double phase = std::arg(plaquette_holonomy(acfg, p)(0, 0));
    const Coords c = fine.coords(fine.plaquette(p).base);
    const double f12 = -(2 * M_PI * a / T) * std::sin(2 * M_PI * c[0] * l / T);
    CHECK(std::abs(phase - l * l * f12) <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("fit_order") {
  std::vector<std::pair<double, double>> exact;
  for (double l : {0.4, 0.2, 0.1, 0.05}) exact.emplace_back(l, 3.0 * l * l);
  CHECK(fit_order(exact).order == doctest::Approx(2.0).epsilon(1e-6));

  std::vector<std::pair<double, double>> linear;
  for (double l : {0.4, 0.2, 0.1}) linear.emplace_back(l, 0.7 * l);
  CHECK(fit_order(linear).order == doctest::Approx(1.0).epsilon(1e-6));

  // l^2 with a 10% quartic admixture over one decade stays close to 2
  std::vector<std::pair<double, double>> mixed;
  for (double e : {0.0, -0.25, -0.5, -0.75, -1.0}) {
    const double l = std::pow(10.0, e);
    mixed.emplace_back(l, l * l * (1.0 + 0.1 * l * l));
  }
  const FitResult fr = fit_order(mixed);
  CHECK(fr.order > 1.9);
  CHECK(fr.order < 2.1);

  // zero errors are dropped; too few survivors refuse
  std::vector<std::pair<double, double>> sparse = {
      {0.4, 0.16}, {0.2, 0.04}, {0.1, 0.0}};
  CHECK_THROWS_AS(fit_order(sparse), std::domain_error);
  sparse.emplace_back(0.05, 0.0025);
  sparse.emplace_back(0.025, 0.000625);
  const FitResult fr2 = fit_order(sparse);
  CHECK(fr2.points_dropped == 1);
  CHECK(fr2.points_used == 4);
  CHECK(fr2.order == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("wilson sweep on the abelian closed form") {
  const SmoothFieldSpec ab = abelian_field(0.7, 1.0, 1, {1, 0, 0, 0});
  const ConvergenceReport rep = wilson_limit_sweep(ab, {8, 16, 32, 64});
  REQUIRE(rep.fitted);
  CHECK(rep.fit.order > 1.6);
  CHECK(rep.fit.order < 2.4);
  CHECK(std::abs(rep.kappa - 1.0) < 0.05);
  const double want = std::pow(2 * M_PI * 0.7, 2) / 2.0;
  CHECK(rep.points.front().target == doctest::Approx(want).epsilon(1e-12));

  // flat field: the subtracted observable is exactly zero at every n
  SmoothFieldSpec flat;
  flat.d = 2;
  flat.period = 1.0;
  flat.N = 1;
  const ConvergenceReport zero = wilson_limit_sweep(flat, {4, 8, 12});
  CHECK(!zero.fitted);
  CHECK(zero.absolute_mode);
  for (const SweepPoint& p : zero.points) CHECK(std::abs(p.value) < 1e-10);

  CHECK_THROWS_AS(wilson_limit_sweep(ab, {8, 16}), std::invalid_argument);
  CHECK_THROWS_AS(wilson_limit_sweep(ab, {16, 8, 32}), std::invalid_argument);
}

TEST_CASE("higgs sweep observables") {
  // Phi = b cos(2 pi x_1 / T), A = 0
  const double b = 0.6, T = 1.0;
  SmoothFieldSpec f;
  f.d = 2;
  f.period = T;
  f.N = 1;
  FieldMode phi;
  phi.k = {1, 0, 0, 0};
  phi.coeff = ComplexMatrix::Constant(1, 1, b);
  f.higgs_modes.push_back(phi);

  const auto reps = higgs_limit_sweep(f, {6, 8, 12, 16});
  const ConvergenceReport& quartic = reps[0];
  const ConvergenceReport& kinetic = reps[1];
  const ConvergenceReport& mass = reps[2];

  // lattice quartic sums of a trig polynomial are exact past the bandwidth
  for (const SweepPoint& p : quartic.points) CHECK(p.rel_err <= 1e-10);
  // same for the mass sum (it is a plain Riemann sum of tr Phi^2)
  for (const SweepPoint& p : mass.points) CHECK(p.rel_err <= 1e-10);

  REQUIRE(kinetic.fitted);
  CHECK(kinetic.fit.order > 1.6);
  CHECK(kinetic.fit.order < 2.4);
  const double want = std::pow(2 * M_PI * b / T, 2) * T * T / 2.0;
  CHECK(kinetic.points.front().target ==
        doctest::Approx(want).epsilon(1e-12));

  // n = 4 aliases the |k| = 4 component of Phi^4 while finer grids are
  // exact; the fit degenerates but the report survives and the tail is
  // converged
  const auto mixed = higgs_limit_sweep(f, {4, 6, 8});
  CHECK(!mixed[0].fitted);
  CHECK(mixed[0].tail_converged);
  CHECK(mixed[0].points.front().rel_err > 1e-6);
  CHECK(mixed[0].points.back().rel_err <= 1e-12);

  // constant Phi: the covariant difference vanishes identically
  SmoothFieldSpec cf;
  cf.d = 2;
  cf.period = T;
  cf.N = 1;
  FieldMode cmode;
  cmode.k = {0, 0, 0, 0};
  cmode.coeff = ComplexMatrix::Constant(1, 1, 0.9);
  cf.higgs_modes.push_back(cmode);
  const auto creps = higgs_limit_sweep(cf, {4, 6, 8});
  for (const SweepPoint& p : creps[1].points) CHECK(p.value == 0.0);
  CHECK(creps[1].absolute_mode);
}

TEST_CASE("constrained configs freeze the higgs observables") {
  const TorusLattice small(2, 3, 1.0 / 3.0);
  const TorusLattice fine(2, 6, 1.0 / 6.0);
  ConstrainedSpec spec;
  spec.levels = {{1.0, 2}, {-1.0, 2}};
  const GaugeNetworkConfig a = random_constrained(small, spec, PhiloxRng(1));
  const GaugeNetworkConfig b = random_constrained(fine, spec, PhiloxRng(2));

  // kinetic observable collapses to zero under the constraint
  CHECK(kinetic_sum(a) < 1e-18);
  CHECK(kinetic_sum(b) < 1e-18);

  // quartic observable: l^d sum tr D^4 = T^d tr D0^4, independent of n
  auto quartic = [](const GaugeNetworkConfig& cfg) {
    double t4 = 0.0;
    for (const ComplexMatrix& d : cfg.D) {
      const ComplexMatrix d2 = d * d;
      t4 += (d2 * d2).trace().real();
    }
    return std::pow(cfg.lattice.spacing(), cfg.lattice.dim()) * t4;
  };
  CHECK(quartic(a) == doctest::Approx(quartic(b)).epsilon(1e-10));
}

TEST_CASE("lattice gauge transformations leave sweep observables fixed") {
  const double a = 0.7, b = 0.6, T = 1.0;
  SmoothFieldSpec f = abelian_field(a, T, 1, {1, 0, 0, 0});
  f.N = 1;
  FieldMode phi;
  phi.k = {1, 0, 0, 0};
  phi.coeff = ComplexMatrix::Constant(1, 1, b);
  f.higgs_modes.push_back(phi);

  const int n = 8;
  const TorusLattice lat(2, n, T / n);
  const GaugeNetworkConfig cfg = from_continuum(lat, f);

  // g(x) = exp(i chi(x)) sampled at the vertices
  std::vector<ComplexMatrix> u;
  for (std::int64_t v = 0; v < lat.vertex_count(); ++v) {
    const Coords c = lat.coords(v);
    const double chi =
        0.4 * std::cos(2 * M_PI * c[1] * lat.spacing() / T + 0.3);
    u.push_back(ComplexMatrix::Constant(1, 1, std::polar(1.0, chi)));
  }
  const GaugeNetworkConfig moved = gauge_transform(cfg, u);

  const double w0 = wilson_action(cfg);
  const double w1 = wilson_action(moved);
  CHECK(std::abs(w0 - w1) <= 1e-9 * (1.0 + std::abs(w0)));
  const double k0 = kinetic_sum(cfg);
  const double k1 = kinetic_sum(moved);
  CHECK(std::abs(k0 - k1) <= 1e-9 * (1.0 + std::abs(k0)));
}
