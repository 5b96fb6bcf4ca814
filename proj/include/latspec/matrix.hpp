#pragma once

#include <Eigen/Dense>
#include <complex>

#include "latspec/rng.hpp"

namespace latspec {

using ComplexMatrix = Eigen::MatrixXcd;

// Trace of a square matrix; throws std::invalid_argument otherwise.
std::complex<double> trace(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
// ||M - M'||_max and ||U'U - 1||_max respectively.
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

void require_hermitian(const ComplexMatrix& m, double tol);
void require_unitary(const ComplexMatrix& m, double tol);

// exp(i * scale * H) for Hermitian H, via eigendecomposition.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double scale);

// Haar-distributed unitary (Ginibre + QR with the phase fix that makes the
// R diagonal positive, so the distribution is exactly Haar).
ComplexMatrix haar_unitary(int n, PhiloxRng& rng);

// Hermitian matrix with independent Gaussian entries: diagonal real
// N(0, scale^2), off-diagonal complex with E|z|^2 = scale^2.
ComplexMatrix gue_hermitian(int n, double scale, PhiloxRng& rng);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace latspec
