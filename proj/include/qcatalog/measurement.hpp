#pragma once

// Projective measurement: state reduction on a definite result, the
// statistical mixture describing "some result occurred", the unitary
// premeasurement coupling of system and apparatus, and the partial trace
// that compares the two descriptions.
//
// Degenerate eigenvalues are handled by projecting onto the whole
// eigenspace (Lueders rule).

#include <cstdint>

#include "qcatalog/hilbert.hpp"
#include "qcatalog/rng.hpp"

namespace qcat {

// Self-adjoint, positive semidefinite, unit trace (all within tol::kDensity).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix);
  static DensityOperator pure(const StateVector& state);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  double trace() const { return matrix_.entries().trace().real(); }
  double purity() const;

 private:
  ComplexMatrix matrix_;
};

struct MeasurementOutcome {
  double eigenvalue;
  double probability;
  StateVector post_state;
};

enum class Factor { kFirst, kSecond };

// P state / ||P state||; throws ImpossibleOutcome when the Born
// probability of P is at most tol::kZero.
StateVector collapse(const StateVector& state, const ComplexMatrix& projector);

// sum_k P_k |state><state| P_k
DensityOperator von_neumann_mixture(const StateVector& state, const Observable& obs);

// sum_k (P_k system) (x) a_k with pointer states a_k = e_k of the apparatus
// space.  `apparatus_ready` must be a canonical basis vector (up to phase).
StateVector premeasurement(const StateVector& system, const Observable& obs,
                           const StateVector& apparatus_ready);

// Reduced state on one factor of a (dim_first * dim_second)-dimensional space.
DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_first,
                              std::size_t dim_second, Factor keep);

MeasurementOutcome sample_measurement(const StateVector& state, const Observable& obs,
                                      std::uint64_t seed);
MeasurementOutcome sample_measurement(const StateVector& state, const Observable& obs, Rng& rng);

// sum_{j != k} ||P_j rho P_k||_F^2
double interference_norm(const DensityOperator& rho, const Observable& obs);

// tr(rho M)
double expectation_value(const DensityOperator& rho, const Observable& obs);

// max_{jk} |a_jk - b_jk|
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qcat
