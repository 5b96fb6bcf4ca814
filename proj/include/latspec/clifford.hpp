#pragma once

#include <vector>

#include "latspec/matrix.hpp"

namespace latspec {

// Hermitian gamma matrices with {g^mu, g^nu} = 2 delta and the chirality
// grading that anticommutes with all of them. Euclidean signature.
struct CliffordBasis {
  int d = 0;
  int spinor_dim = 0;
  std::vector<ComplexMatrix> gamma;
  ComplexMatrix chirality;

  // d = 2: Pauli (sigma1, sigma2) with chirality sigma3.
  // d = 4: tensor doubling of the d = 2 basis.
  static CliffordBasis build(int d);
};

}  // namespace latspec
