#pragma once

// The lattice of subspaces of a finite-dimensional Hilbert space, ordered
// by inclusion and orthocomplemented by the orthogonal complement, plus the
// powerset lattice of a finite set for comparison.
//
// Rank decisions (span, meet, join) and inclusion residuals use
// tol::kRank.  Two subspaces are equal iff each is contained in the other;
// basis lists are never compared directly.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcatalog/hilbert.hpp"

namespace qcat {

class Subspace {
 public:
  // The zero subspace of an ambient space of dimension `ambient_dim`.
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  // Span of the columns of `vectors`; columns may be dependent or zero.
  static Subspace span(const Matrix& vectors);
  static Subspace span(const std::vector<Vector>& vectors);
  // Range of an orthogonal projector.
  static Subspace range(const ComplexMatrix& projector);
  static Subspace from_eigenspace(const Eigenspace& term);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  // Orthonormal columns.
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  bool is_zero() const { return rank() == 0; }
  bool is_full() const { return rank() == ambient_dim_; }

 private:
  Subspace(std::size_t ambient_dim, Matrix basis);

  std::size_t ambient_dim_;
  Matrix basis_;
};

// E <= F: every basis vector of E lies in F up to tol::kRank.
bool leq(const Subspace& e, const Subspace& f);
// Mutual inclusion.
bool equal(const Subspace& e, const Subspace& f);

// Greatest lower bound: the intersection.
Subspace meet(const Subspace& e, const Subspace& f);
// Least upper bound: the span of the union.
Subspace join(const Subspace& e, const Subspace& f);
Subspace orthocomplement(const Subspace& e);
// (A' ^ B')', which must coincide with join(A, B).
Subspace disjunction(const Subspace& a, const Subspace& b);

// Frobenius norm of [P_E, P_F].
double commutator_norm(const Subspace& e, const Subspace& f);
// Compatibility: the projectors commute within tol::kRank.
bool commutes(const Subspace& e, const Subspace& f);

// A ^ (B v C) == (A ^ B) v (A ^ C)
bool distributivity_holds(const Subspace& a, const Subspace& b, const Subspace& c);

struct BooleanSublattice {
  // Element i is the join of the eigenspaces whose bits are set in i, so
  // elements.front() is the zero subspace and elements.back() the full one.
  std::vector<Subspace> elements;
  // Result of the distributivity verification.
  bool distributive = false;
  // True when every triple was checked; otherwise distributivity was
  // established through pairwise commutation of the eigenspace projectors.
  bool exhaustive = false;
};

// Largest number of eigenspaces accepted by boolean_sublattice.
inline constexpr std::size_t kMaxSublatticeGenerators = 12;
// Up to this many eigenspaces every triple is checked explicitly.
inline constexpr std::size_t kExhaustiveTripleGenerators = 4;

// The Boolean sublattice generated by the eigenspaces of one observable.
BooleanSublattice boolean_sublattice(const Observable& obs);

// Subset of {0, ..., universe_size - 1}.
class ClassicalEvent {
 public:
  ClassicalEvent(std::size_t universe_size, const std::vector<std::size_t>& members);
  static ClassicalEvent empty(std::size_t universe_size);
  static ClassicalEvent full(std::size_t universe_size);
  // Members given by the bits of `mask` (universe_size <= 64).
  static ClassicalEvent from_mask(std::size_t universe_size, std::uint64_t mask);

  std::size_t universe_size() const { return membership_.size(); }
  bool contains(std::size_t i) const { return i < membership_.size() && membership_[i]; }
  std::vector<std::size_t> members() const;

  friend bool operator==(const ClassicalEvent&, const ClassicalEvent&) = default;

 private:
  explicit ClassicalEvent(std::vector<bool> membership) : membership_(std::move(membership)) {}
  friend ClassicalEvent c_meet(const ClassicalEvent&, const ClassicalEvent&);
  friend ClassicalEvent c_join(const ClassicalEvent&, const ClassicalEvent&);
  friend ClassicalEvent c_complement(const ClassicalEvent&);

  std::vector<bool> membership_;
};

bool c_leq(const ClassicalEvent& a, const ClassicalEvent& b);
ClassicalEvent c_meet(const ClassicalEvent& a, const ClassicalEvent& b);
ClassicalEvent c_join(const ClassicalEvent& a, const ClassicalEvent& b);
ClassicalEvent c_complement(const ClassicalEvent& a);
bool c_distributivity_holds(const ClassicalEvent& a, const ClassicalEvent& b,
                            const ClassicalEvent& c);

}  // namespace qcat
