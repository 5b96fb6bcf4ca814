#include "latspec/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace latspec {

std::complex<double> trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("trace: matrix is not square");
  return m.trace();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

double unitarity_error(const ComplexMatrix& m) {
  return max_abs(m.adjoint() * m -
                 ComplexMatrix::Identity(m.cols(), m.cols()));
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("require_hermitian: not square");
  if (!all_finite(m))
    throw std::invalid_argument("require_hermitian: non-finite entries");
  if (hermiticity_error(m) > tol * (1.0 + max_abs(m)))
    throw std::invalid_argument("require_hermitian: tolerance exceeded");
}

void require_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("require_unitary: not square");
  if (!all_finite(m))
    throw std::invalid_argument("require_unitary: non-finite entries");
  if (unitarity_error(m) > tol)
    throw std::invalid_argument("require_unitary: tolerance exceeded");
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double scale) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("exp_i_hermitian: not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exp_i_hermitian: eigendecomposition failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases(i) = std::polar(1.0, scale * lam(i));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix haar_unitary(int n, PhiloxRng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n < 1");
  ComplexMatrix g(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re * inv_sqrt2, im * inv_sqrt2);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const Eigen::VectorXcd rdiag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(rdiag(j));
    const std::complex<double> phase = a > 0 ? rdiag(j) / a : 1.0;
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix gue_hermitian(int n, double scale, PhiloxRng& rng) {
  if (n < 1) throw std::invalid_argument("gue_hermitian: n < 1");
  ComplexMatrix h(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    h(i, i) = scale * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      h(i, j) = scale * std::complex<double>(re * inv_sqrt2, im * inv_sqrt2);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace latspec
