#include <doctest.h>

#include "latspec/clifford.hpp"

using namespace latspec;

namespace {

double re_trace(const ComplexMatrix& m) { return m.trace().real(); }

}  // namespace

TEST_CASE("d=2 basis") {
  const CliffordBasis b = CliffordBasis::build(2);
  CHECK(b.spinor_dim == 2);
  CHECK(std::abs((b.gamma[0] * b.gamma[1]).trace()) < 1e-14);
  for (int mu = 0; mu < 2; ++mu) {
    CHECK(hermiticity_error(b.gamma[mu]) < 1e-14);
    CHECK(unitarity_error(b.gamma[mu]) < 1e-14);
  }
  CHECK(hermiticity_error(b.chirality) < 1e-14);
}

TEST_CASE("d=4 basis") {
  const CliffordBasis b = CliffordBasis::build(4);
  CHECK(b.spinor_dim == 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const double want = mu == nu ? 4.0 : 0.0;
      CHECK(re_trace(b.gamma[mu] * b.gamma[nu]) == doctest::Approx(want));
    }
  // gamma^mu gamma gamma^mu gamma = -1 because the chirality anticommutes;
  // this sign drives the relative minus of the hopping-diagonal cross term.
  for (int mu = 0; mu < 4; ++mu)
    CHECK(re_trace(b.gamma[mu] * b.chirality * b.gamma[mu] * b.chirality) ==
          doctest::Approx(-4.0));
}

TEST_CASE("pair traces for both dimensions") {
  for (int d : {2, 4}) {
    const CliffordBasis b = CliffordBasis::build(d);
    const double s = b.spinor_dim;
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        const double fours =
            re_trace(b.gamma[mu] * b.gamma[nu] * b.gamma[mu] * b.gamma[nu]);
        CHECK(fours == doctest::Approx(mu == nu ? s : -s));
        const double chi = re_trace(b.gamma[mu] * b.chirality * b.gamma[nu] *
                                    b.chirality);
        CHECK(chi == doctest::Approx(mu == nu ? -s : 0.0));
      }
  }
}

TEST_CASE("unsupported dimensions") {
  CHECK_THROWS_AS(CliffordBasis::build(3), std::invalid_argument);
  CHECK_THROWS_AS(CliffordBasis::build(6), std::invalid_argument);
}
