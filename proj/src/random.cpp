#include "qcatalog/random.hpp"

#include <cmath>
#include <numbers>

#include "qcatalog/errors.hpp"

namespace qcat::random {

double standard_normal(Rng& rng) {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(Rng& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re, im};
}

namespace {

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = complex_normal(rng);
  }
  return m;
}

}  // namespace

StateVector state(std::size_t dim, Rng& rng) {
  return StateVector::normalized(gaussian_matrix(dim, 1, rng).col(0));
}

ComplexMatrix hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  return ComplexMatrix(0.5 * (g + g.adjoint()));
}

Subspace subspace(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank > dim) throw DomainError("random::subspace: rank exceeds dimension");
  return Subspace::span(gaussian_matrix(dim, rank, rng));
}

Subspace subspace(std::size_t dim, Rng& rng) { return subspace(dim, rng.index(dim + 1), rng); }

Observable degenerate_observable(std::size_t dim, Rng& rng) {
  // Random unitary from the QR factorization of a Gaussian matrix.
  const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian_matrix(dim, dim, rng)).householderQ();
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) values(i) = static_cast<double>(rng.index(3)) - 1.0;
  return spectral_decompose(ComplexMatrix(q * values.cast<Complex>().asDiagonal() * q.adjoint()));
}

}  // namespace qcat::random
