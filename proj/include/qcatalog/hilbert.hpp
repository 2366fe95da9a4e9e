#pragma once

// Finite-dimensional complex inner-product spaces: state vectors,
// self-adjoint observables with their spectral decomposition, the Born
// rule, unitary evolution and tensor products.
//
// All value types are immutable after construction and validate their
// invariants in the constructor.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qcat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Largest dimension accepted by the value types.  Defaults to 64.
std::size_t max_dimension();
void set_max_dimension(std::size_t dim);

// Square dense complex matrix of dimension >= 1.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Matrix entries);

  static ComplexMatrix identity(std::size_t dim);
  // |v><v| for a (not necessarily normalized) vector.
  static ComplexMatrix outer(const Vector& v);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  // max_{jk} |m_jk - conj(m_kj)|
  double max_asymmetry() const;
  bool is_self_adjoint(double tol) const { return max_asymmetry() <= tol; }
  // Idempotent and self-adjoint within tol (max-entry norm).
  bool is_projector(double tol) const;

 private:
  Matrix entries_;
};

// Unit-norm amplitude vector.
class StateVector {
 public:
  // Throws DomainError unless | ||amplitudes|| - 1 | <= tol::kNorm.
  explicit StateVector(Vector amplitudes);

  // Rescales a nonzero vector to unit norm.
  static StateVector normalized(const Vector& v);
  // Canonical basis vector e_k.
  static StateVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t k) const {
    return amplitudes_(static_cast<Eigen::Index>(k));
  }

 private:
  Vector amplitudes_;
};

// One spectral term: eigenvalue, orthogonal projector onto its eigenspace,
// and an orthonormal basis of that eigenspace (columns).
struct Eigenspace {
  double eigenvalue;
  ComplexMatrix projector;
  Matrix basis;

  std::size_t multiplicity() const { return static_cast<std::size_t>(basis.cols()); }
};

// Self-adjoint operator together with its spectral decomposition.
// Eigenvalues are distinct and strictly increasing.
class Observable {
 public:
  // Assembles an observable from (eigenvalue, eigenspace basis) pairs.
  // The bases must be orthonormal, mutually orthogonal and together span
  // the space.  The matrix is sum_k eigenvalue_k * P_k.
  static Observable from_spectrum(std::vector<std::pair<double, Matrix>> terms);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<Eigenspace>& spectrum() const { return spectrum_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  friend Observable spectral_decompose(const ComplexMatrix& m);
  Observable(ComplexMatrix matrix, std::vector<Eigenspace> spectrum);

  ComplexMatrix matrix_;
  std::vector<Eigenspace> spectrum_;
};

struct EvolutionConfig {
  double hbar = 1.0;
  double duration = 0.0;
};

// sum_k conj(a_k) b_k
Complex inner_product(const StateVector& a, const StateVector& b);

// <state, P state> for an orthogonal projector P.
double born_probability(const StateVector& state, const ComplexMatrix& projector);

// Eigen-decomposition of a self-adjoint matrix with eigenvalues closer than
// tol::kDegenerate merged into one eigenspace.
Observable spectral_decompose(const ComplexMatrix& m);

// sum_k exp(-i E_k t / hbar) P_k state
StateVector evolve(const StateVector& state, const Observable& hamiltonian,
                   const EvolutionConfig& cfg);

StateVector tensor_state(const StateVector& a, const StateVector& b);
ComplexMatrix tensor_op(const ComplexMatrix& a, const ComplexMatrix& b);

// <state, M state>
double expectation_value(const StateVector& state, const Observable& obs);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qcat
