#include "qcatalog/hilbert.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qcatalog/errors.hpp"
#include "qcatalog/tolerances.hpp"

namespace qcat {

namespace {

std::atomic<std::size_t> g_max_dimension{64};

void check_dimension(Eigen::Index dim, const char* what) {
  if (dim < 1) throw DomainError(fmt::format("{}: dimension must be at least 1", what));
  if (static_cast<std::size_t>(dim) > max_dimension()) {
    throw DomainError(fmt::format("{}: dimension {} exceeds the limit {}", what, dim,
                                  max_dimension()));
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Absolute tolerance scaled to the magnitude of the operator.
double scaled(double tol, const Matrix& m) { return tol * std::max(1.0, max_abs(m)); }

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionError(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
}

}  // namespace

std::size_t max_dimension() { return g_max_dimension.load(std::memory_order_relaxed); }

void set_max_dimension(std::size_t dim) {
  if (dim < 1) throw DomainError("set_max_dimension: limit must be at least 1");
  g_max_dimension.store(dim, std::memory_order_relaxed);
}

// ComplexMatrix

ComplexMatrix::ComplexMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DomainError(fmt::format("ComplexMatrix: must be square, got {}x{}", entries_.rows(),
                                  entries_.cols()));
  }
  check_dimension(entries_.rows(), "ComplexMatrix");
  if (!entries_.allFinite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexMatrix(Matrix::Identity(n, n));
}

ComplexMatrix ComplexMatrix::outer(const Vector& v) { return ComplexMatrix(v * v.adjoint()); }

double ComplexMatrix::max_asymmetry() const {
  return max_abs(entries_ - entries_.adjoint());
}

bool ComplexMatrix::is_projector(double tol) const {
  return is_self_adjoint(tol) && max_abs(entries_ * entries_ - entries_) <= tol;
}

// StateVector

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  check_dimension(amplitudes_.size(), "StateVector");
  if (!amplitudes_.allFinite()) throw DomainError("StateVector: non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::kNorm) {
    throw DomainError(fmt::format("StateVector: norm is {:.17g}, expected 1", norm));
  }
}

StateVector StateVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("StateVector::normalized: vector has zero or non-finite norm");
  }
  return StateVector(v / norm);
}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DomainError(fmt::format("StateVector::basis: index {} >= dim {}", k, dim));
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return StateVector(std::move(v));
}

// Observable

Observable::Observable(ComplexMatrix matrix, std::vector<Eigenspace> spectrum)
    : matrix_(std::move(matrix)), spectrum_(std::move(spectrum)) {
  const Matrix& m = matrix_.entries();
  const auto n = m.rows();
  const double tol = scaled(tol::kNorm, m);
  if (!matrix_.is_self_adjoint(tol)) {
    throw DomainError(fmt::format("Observable: matrix not self-adjoint (max asymmetry {:.3g})",
                                  matrix_.max_asymmetry()));
  }
  Matrix sum = Matrix::Zero(n, n);
  Matrix recon = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < spectrum_.size(); ++k) {
    const auto& term = spectrum_[k];
    if (k > 0 && !(term.eigenvalue > spectrum_[k - 1].eigenvalue)) {
      throw DomainError("Observable: eigenvalues must be strictly increasing");
    }
    if (term.projector.dim() != matrix_.dim() || term.multiplicity() == 0) {
      throw DomainError("Observable: malformed eigenspace");
    }
    if (!term.projector.is_projector(tol::kNorm)) {
      throw DomainError("Observable: eigenprojector is not an orthogonal projector");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (max_abs(spectrum_[j].projector.entries() * term.projector.entries()) > tol::kNorm) {
        throw DomainError("Observable: eigenprojectors are not mutually orthogonal");
      }
    }
    sum += term.projector.entries();
    recon += term.eigenvalue * term.projector.entries();
  }
  if (max_abs(sum - Matrix::Identity(n, n)) > tol::kNorm) {
    throw DomainError("Observable: eigenprojectors do not sum to the identity");
  }
  if (max_abs(recon - m) > scaled(tol::kEigen, m)) {
    throw DomainError("Observable: spectral terms do not reconstruct the matrix");
  }
}

Observable Observable::from_spectrum(std::vector<std::pair<double, Matrix>> terms) {
  if (terms.empty()) throw DomainError("Observable::from_spectrum: empty spectrum");
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto n = terms.front().second.rows();
  check_dimension(n, "Observable::from_spectrum");
  std::vector<Eigenspace> spectrum;
  Matrix m = Matrix::Zero(n, n);
  for (auto& [value, basis] : terms) {
    if (basis.rows() != n) throw DimensionError("Observable::from_spectrum: basis row mismatch");
    const Matrix gram = basis.adjoint() * basis;
    if (max_abs(gram - Matrix::Identity(basis.cols(), basis.cols())) > tol::kNorm) {
      throw DomainError("Observable::from_spectrum: eigenspace basis is not orthonormal");
    }
    Matrix p = basis * basis.adjoint();
    m += value * p;
    spectrum.push_back(Eigenspace{value, ComplexMatrix(std::move(p)), std::move(basis)});
  }
  return Observable(ComplexMatrix(std::move(m)), std::move(spectrum));
}

// Operations

Complex inner_product(const StateVector& a, const StateVector& b) {
  check_same_dim(a.dim(), b.dim(), "inner_product");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

double born_probability(const StateVector& state, const ComplexMatrix& projector) {
  check_same_dim(state.dim(), projector.dim(), "born_probability");
  if (!projector.is_projector(tol::kNorm)) {
    throw DomainError("born_probability: operator is not an orthogonal projector");
  }
  const Vector& psi = state.amplitudes();
  const double p = psi.dot(projector.entries() * psi).real();
  return std::clamp(p, 0.0, 1.0);
}

Observable spectral_decompose(const ComplexMatrix& m) {
  const Matrix& a = m.entries();
  const double asym = m.max_asymmetry();
  if (asym > scaled(tol::kNorm, a)) {
    throw DomainError(
        fmt::format("spectral_decompose: matrix is not self-adjoint (max asymmetry {:.3g})", asym));
  }
  const Matrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("spectral_decompose: eigensolver did not converge");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Matrix& vectors = solver.eigenvectors();

  std::vector<Eigenspace> spectrum;
  Eigen::Index start = 0;
  const Eigen::Index n = values.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && values(i) - values(i - 1) < tol::kDegenerate) continue;
    const Eigen::Index count = i - start;
    Matrix basis = vectors.middleCols(start, count);
    const double value = values.segment(start, count).mean();
    Matrix p = basis * basis.adjoint();
    spectrum.push_back(Eigenspace{value, ComplexMatrix(std::move(p)), std::move(basis)});
    start = i;
  }
  return Observable(ComplexMatrix(herm), std::move(spectrum));
}

StateVector evolve(const StateVector& state, const Observable& hamiltonian,
                   const EvolutionConfig& cfg) {
  check_same_dim(state.dim(), hamiltonian.dim(), "evolve");
  if (!(cfg.hbar > 0.0) || !std::isfinite(cfg.hbar)) {
    throw DomainError("evolve: hbar must be positive and finite");
  }
  if (!std::isfinite(cfg.duration)) throw DomainError("evolve: duration must be finite");
  if (cfg.duration == 0.0) return state;
  const Vector& psi = state.amplitudes();
  Vector out = Vector::Zero(psi.size());
  for (const auto& term : hamiltonian.spectrum()) {
    const Complex phase = std::polar(1.0, -term.eigenvalue * cfg.duration / cfg.hbar);
    // Project through the eigenbasis: B (B^dagger psi).
    out += phase * (term.basis * (term.basis.adjoint() * psi));
  }
  return StateVector(std::move(out));
}

StateVector tensor_state(const StateVector& a, const StateVector& b) {
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return StateVector(std::move(out));
}

ComplexMatrix tensor_op(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Matrix& x = a.entries();
  const Matrix& y = b.entries();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return ComplexMatrix(std::move(out));
}

double expectation_value(const StateVector& state, const Observable& obs) {
  check_same_dim(state.dim(), obs.dim(), "expectation_value");
  const Vector& psi = state.amplitudes();
  return psi.dot(obs.matrix().entries() * psi).real();
}

namespace pauli {

ComplexMatrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return ComplexMatrix(m);
}

ComplexMatrix y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return ComplexMatrix(m);
}

ComplexMatrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return ComplexMatrix(m);
}

}  // namespace pauli

}  // namespace qcat
