#include "latspec/clifford.hpp"

#include <stdexcept>

namespace latspec {

namespace {

ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  switch (k) {
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

void verify(const CliffordBasis& b) {
  const double tol = 1e-12;
  const ComplexMatrix id =
      ComplexMatrix::Identity(b.spinor_dim, b.spinor_dim);
  for (int mu = 0; mu < b.d; ++mu) {
    for (int nu = 0; nu < b.d; ++nu) {
      const ComplexMatrix anti =
          b.gamma[mu] * b.gamma[nu] + b.gamma[nu] * b.gamma[mu];
      const double want = mu == nu ? 2.0 : 0.0;
      if (max_abs(anti - want * id) > tol)
        throw std::logic_error("CliffordBasis: anticommutator violated");
    }
    if (max_abs(b.chirality * b.gamma[mu] + b.gamma[mu] * b.chirality) > tol)
      throw std::logic_error("CliffordBasis: chirality does not anticommute");
    if (std::abs(b.gamma[mu].trace()) > tol)
      throw std::logic_error("CliffordBasis: gamma not traceless");
  }
  if (max_abs(b.chirality * b.chirality - id) > tol ||
      std::abs(b.chirality.trace()) > tol)
    throw std::logic_error("CliffordBasis: chirality invariants violated");
}

}  // namespace

CliffordBasis CliffordBasis::build(int d) {
  CliffordBasis b;
  b.d = d;
  if (d == 2) {
    b.spinor_dim = 2;
    b.gamma = {pauli(1), pauli(2)};
    b.chirality = pauli(3);
  } else if (d == 4) {
    b.spinor_dim = 4;
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    b.gamma = {kron(pauli(1), pauli(1)), kron(pauli(1), pauli(2)),
               kron(pauli(1), pauli(3)), kron(pauli(2), id2)};
    b.chirality = kron(pauli(3), id2);
  } else {
    throw std::invalid_argument("CliffordBasis: d must be 2 or 4");
  }
  verify(b);
  return b;
}

}  // namespace latspec
