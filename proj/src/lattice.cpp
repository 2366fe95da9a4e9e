#include "qcatalog/lattice.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcatalog/errors.hpp"
#include "qcatalog/tolerances.hpp"

namespace qcat {

namespace {

void check_ambient(const Subspace& e, const Subspace& f, const char* what) {
  if (e.ambient_dim() != f.ambient_dim()) {
    throw DimensionError(fmt::format("{}: ambient dimension mismatch ({} vs {})", what,
                                     e.ambient_dim(), f.ambient_dim()));
  }
}

Matrix identity(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return Matrix::Identity(d, d);
}

// Eigenvectors of a self-adjoint matrix whose eigenvalues satisfy `keep`.
template <typename Pred>
Matrix eigenvectors_where(const Matrix& herm, Pred keep) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("subspace lattice: eigensolver did not converge");
  }
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (keep(solver.eigenvalues()(i))) cols.push_back(i);
  }
  Matrix out(herm.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(cols[j]);
  }
  return out;
}

void check_universe(const ClassicalEvent& a, const ClassicalEvent& b, const char* what) {
  if (a.universe_size() != b.universe_size()) {
    throw DimensionError(fmt::format("{}: universe mismatch ({} vs {})", what, a.universe_size(),
                                     b.universe_size()));
  }
}

}  // namespace

// Subspace

Subspace::Subspace(std::size_t ambient_dim, Matrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ < 1 || ambient_dim_ > max_dimension()) {
    throw DomainError(fmt::format("Subspace: ambient dimension {} out of range", ambient_dim_));
  }
  if (static_cast<std::size_t>(basis_.rows()) != ambient_dim_ ||
      static_cast<std::size_t>(basis_.cols()) > ambient_dim_) {
    throw DimensionError("Subspace: basis shape does not match the ambient space");
  }
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.adjoint() * basis_;
    const double err = (gram - Matrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
    if (err > tol::kNorm) throw DomainError("Subspace: basis is not orthonormal");
  }
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix(static_cast<Eigen::Index>(ambient_dim), 0));
}

Subspace Subspace::full(std::size_t ambient_dim) { return Subspace(ambient_dim, identity(ambient_dim)); }

Subspace Subspace::span(const Matrix& vectors) {
  const auto n = static_cast<std::size_t>(vectors.rows());
  if (vectors.cols() == 0) return zero(n);
  if (!vectors.allFinite()) throw DomainError("Subspace::span: non-finite entry");
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > tol::kRank) ++r;
  return Subspace(n, svd.matrixU().leftCols(r));
}

Subspace Subspace::span(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw DomainError("Subspace::span: ambient dimension unknown for empty list");
  Matrix m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != m.rows()) throw DimensionError("Subspace::span: vector length mismatch");
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return span(m);
}

Subspace Subspace::range(const ComplexMatrix& projector) {
  if (!projector.is_projector(tol::kNorm)) {
    throw DomainError("Subspace::range: operator is not an orthogonal projector");
  }
  return Subspace(projector.dim(),
                  eigenvectors_where(projector.entries(), [](double v) { return v > 0.5; }));
}

Subspace Subspace::from_eigenspace(const Eigenspace& term) {
  return Subspace(term.projector.dim(), term.basis);
}

// Lattice operations

bool leq(const Subspace& e, const Subspace& f) {
  check_ambient(e, f, "leq");
  if (e.is_zero()) return true;
  const Matrix& be = e.basis();
  const Matrix& bf = f.basis();
  const Matrix residual = be - bf * (bf.adjoint() * be);
  for (Eigen::Index j = 0; j < residual.cols(); ++j) {
    if (residual.col(j).norm() >= tol::kRank) return false;
  }
  return true;
}

bool equal(const Subspace& e, const Subspace& f) {
  return e.rank() == f.rank() && leq(e, f) && leq(f, e);
}

Subspace meet(const Subspace& e, const Subspace& f) {
  check_ambient(e, f, "meet");
  // ker((I - P_E) + (I - P_F)) is exactly range(P_E) intersected with range(P_F).
  const Matrix sum = 2.0 * identity(e.ambient_dim()) - e.projector() - f.projector();
  Matrix basis = eigenvectors_where(sum, [](double v) { return v < tol::kRank; });
  return Subspace::span(basis);
}

Subspace join(const Subspace& e, const Subspace& f) {
  check_ambient(e, f, "join");
  Matrix stacked(static_cast<Eigen::Index>(e.ambient_dim()),
                 static_cast<Eigen::Index>(e.rank() + f.rank()));
  stacked << e.basis(), f.basis();
  return Subspace::span(stacked);
}

Subspace orthocomplement(const Subspace& e) {
  Matrix basis = eigenvectors_where(e.projector(), [](double v) { return v < 0.5; });
  return Subspace::span(basis);
}

Subspace disjunction(const Subspace& a, const Subspace& b) {
  check_ambient(a, b, "disjunction");
  return orthocomplement(meet(orthocomplement(a), orthocomplement(b)));
}

double commutator_norm(const Subspace& e, const Subspace& f) {
  check_ambient(e, f, "commutator_norm");
  const Matrix pe = e.projector();
  const Matrix pf = f.projector();
  return (pe * pf - pf * pe).norm();
}

bool commutes(const Subspace& e, const Subspace& f) { return commutator_norm(e, f) <= tol::kRank; }

bool distributivity_holds(const Subspace& a, const Subspace& b, const Subspace& c) {
  check_ambient(a, b, "distributivity_holds");
  check_ambient(a, c, "distributivity_holds");
  return equal(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
}

BooleanSublattice boolean_sublattice(const Observable& obs) {
  const auto& spectrum = obs.spectrum();
  const std::size_t k = spectrum.size();
  if (k > kMaxSublatticeGenerators) {
    throw DomainError(fmt::format("boolean_sublattice: {} eigenspaces exceed the limit of {}", k,
                                  kMaxSublatticeGenerators));
  }
  const auto n = static_cast<Eigen::Index>(obs.dim());
  BooleanSublattice out;
  const std::size_t size = std::size_t{1} << k;
  out.elements.reserve(size);
  for (std::size_t mask = 0; mask < size; ++mask) {
    Eigen::Index cols = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1U) cols += spectrum[j].basis.cols();
    }
    Matrix stacked(n, cols);
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask >> j & 1U)) continue;
      stacked.middleCols(at, spectrum[j].basis.cols()) = spectrum[j].basis;
      at += spectrum[j].basis.cols();
    }
    out.elements.push_back(Subspace::span(stacked));
  }

  if (k <= kExhaustiveTripleGenerators) {
    out.exhaustive = true;
    out.distributive = true;
    for (const auto& a : out.elements) {
      for (const auto& b : out.elements) {
        for (const auto& c : out.elements) {
          if (!distributivity_holds(a, b, c)) {
            out.distributive = false;
            return out;
          }
        }
      }
    }
    return out;
  }
  // Mutually commuting generators generate a Boolean lattice.
  out.distributive = true;
  for (std::size_t i = 0; i < k && out.distributive; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!commutes(Subspace::from_eigenspace(spectrum[i]), Subspace::from_eigenspace(spectrum[j]))) {
        out.distributive = false;
        break;
      }
    }
  }
  return out;
}

// ClassicalEvent

ClassicalEvent::ClassicalEvent(std::size_t universe_size, const std::vector<std::size_t>& members)
    : membership_(universe_size, false) {
  if (universe_size == 0) throw DomainError("ClassicalEvent: universe must be nonempty");
  for (auto m : members) {
    if (m >= universe_size) {
      throw DomainError(fmt::format("ClassicalEvent: member {} outside universe of size {}", m,
                                    universe_size));
    }
    membership_[m] = true;
  }
}

ClassicalEvent ClassicalEvent::empty(std::size_t universe_size) { return {universe_size, {}}; }

ClassicalEvent ClassicalEvent::full(std::size_t universe_size) {
  return c_complement(empty(universe_size));
}

ClassicalEvent ClassicalEvent::from_mask(std::size_t universe_size, std::uint64_t mask) {
  if (universe_size > 64) throw DomainError("ClassicalEvent::from_mask: universe larger than 64");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < universe_size; ++i) {
    if (mask >> i & 1U) members.push_back(i);
  }
  if (universe_size < 64 && (mask >> universe_size) != 0) {
    throw DomainError("ClassicalEvent::from_mask: bits set outside the universe");
  }
  return {universe_size, members};
}

std::vector<std::size_t> ClassicalEvent::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < membership_.size(); ++i) {
    if (membership_[i]) out.push_back(i);
  }
  return out;
}

bool c_leq(const ClassicalEvent& a, const ClassicalEvent& b) {
  check_universe(a, b, "c_leq");
  for (auto m : a.members()) {
    if (!b.contains(m)) return false;
  }
  return true;
}

ClassicalEvent c_meet(const ClassicalEvent& a, const ClassicalEvent& b) {
  check_universe(a, b, "c_meet");
  std::vector<bool> out(a.universe_size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.membership_[i] && b.membership_[i];
  return ClassicalEvent(std::move(out));
}

ClassicalEvent c_join(const ClassicalEvent& a, const ClassicalEvent& b) {
  check_universe(a, b, "c_join");
  std::vector<bool> out(a.universe_size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.membership_[i] || b.membership_[i];
  return ClassicalEvent(std::move(out));
}

ClassicalEvent c_complement(const ClassicalEvent& a) {
  std::vector<bool> out(a.membership_);
  out.flip();
  return ClassicalEvent(std::move(out));
}

bool c_distributivity_holds(const ClassicalEvent& a, const ClassicalEvent& b,
                            const ClassicalEvent& c) {
  return c_meet(a, c_join(b, c)) == c_join(c_meet(a, b), c_meet(a, c));
}

}  // namespace qcat
