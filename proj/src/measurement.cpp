#include "qcatalog/measurement.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcatalog/errors.hpp"
#include "qcatalog/tolerances.hpp"

namespace qcat {

namespace {

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionError(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  const double asym = matrix_.max_asymmetry();
  if (asym > tol::kDensity) {
    throw DomainError(fmt::format("DensityOperator: not self-adjoint (max asymmetry {:.3g})", asym));
  }
  const double tr = trace();
  if (std::abs(tr - 1.0) > tol::kDensity) {
    throw DomainError(fmt::format("DensityOperator: trace is {:.17g}, expected 1", tr));
  }
  const Matrix& m = matrix_.entries();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -tol::kDensity) {
    throw DomainError(fmt::format("DensityOperator: negative eigenvalue {:.3g}", lowest));
  }
}

DensityOperator DensityOperator::pure(const StateVector& state) {
  return DensityOperator(ComplexMatrix::outer(state.amplitudes()));
}

double DensityOperator::purity() const {
  const Matrix& m = matrix_.entries();
  return (m * m).trace().real();
}

StateVector collapse(const StateVector& state, const ComplexMatrix& projector) {
  const double p = born_probability(state, projector);
  if (p <= tol::kZero) {
    throw ImpossibleOutcome(
        fmt::format("collapse: impossible outcome (Born probability {:.3g})", p));
  }
  return StateVector::normalized(projector.entries() * state.amplitudes());
}

DensityOperator von_neumann_mixture(const StateVector& state, const Observable& obs) {
  check_same_dim(state.dim(), obs.dim(), "von_neumann_mixture");
  const auto n = static_cast<Eigen::Index>(state.dim());
  Matrix rho = Matrix::Zero(n, n);
  for (const auto& term : obs.spectrum()) {
    const Vector projected = term.projector.entries() * state.amplitudes();
    rho += projected * projected.adjoint();
  }
  return DensityOperator(ComplexMatrix(std::move(rho)));
}

StateVector premeasurement(const StateVector& system, const Observable& obs,
                           const StateVector& apparatus_ready) {
  check_same_dim(system.dim(), obs.dim(), "premeasurement");
  const std::size_t readings = obs.spectrum().size();
  const std::size_t dim_apparatus = apparatus_ready.dim();
  if (dim_apparatus < readings) {
    throw DomainError(fmt::format(
        "premeasurement: apparatus dimension {} is smaller than the {} possible readings",
        dim_apparatus, readings));
  }
  const Vector& ready = apparatus_ready.amplitudes();
  Eigen::Index hot = 0;
  ready.cwiseAbs().maxCoeff(&hot);
  if (std::abs(std::abs(ready(hot)) - 1.0) > tol::kNorm) {
    throw DomainError("premeasurement: ready state must be a canonical basis vector");
  }

  const auto ds = static_cast<Eigen::Index>(system.dim());
  const auto da = static_cast<Eigen::Index>(dim_apparatus);
  Vector out = Vector::Zero(ds * da);
  for (std::size_t k = 0; k < readings; ++k) {
    const Vector projected = obs.spectrum()[k].projector.entries() * system.amplitudes();
    // (P_k system) (x) e_k: system index major, apparatus index minor.
    for (Eigen::Index i = 0; i < ds; ++i) out(i * da + static_cast<Eigen::Index>(k)) += projected(i);
  }
  return StateVector(std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_first,
                              std::size_t dim_second, Factor keep) {
  if (dim_first == 0 || dim_second == 0 || dim_first * dim_second != rho.dim()) {
    throw DimensionError(fmt::format("partial_trace: {} x {} does not factor dimension {}",
                                     dim_first, dim_second, rho.dim()));
  }
  const Matrix& m = rho.matrix().entries();
  const auto da = static_cast<Eigen::Index>(dim_first);
  const auto db = static_cast<Eigen::Index>(dim_second);
  Matrix out;
  if (keep == Factor::kFirst) {
    out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < da; ++j) {
        Complex s = 0;
        for (Eigen::Index k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    }
  } else {
    out = Matrix::Zero(db, db);
    for (Eigen::Index i = 0; i < db; ++i) {
      for (Eigen::Index j = 0; j < db; ++j) {
        Complex s = 0;
        for (Eigen::Index k = 0; k < da; ++k) s += m(k * db + i, k * db + j);
        out(i, j) = s;
      }
    }
  }
  return DensityOperator(ComplexMatrix(std::move(out)));
}

MeasurementOutcome sample_measurement(const StateVector& state, const Observable& obs,
                                      std::uint64_t seed) {
  Rng rng(seed);
  return sample_measurement(state, obs, rng);
}

MeasurementOutcome sample_measurement(const StateVector& state, const Observable& obs, Rng& rng) {
  check_same_dim(state.dim(), obs.dim(), "sample_measurement");
  std::vector<double> weights;
  weights.reserve(obs.spectrum().size());
  for (const auto& term : obs.spectrum()) weights.push_back(born_probability(state, term.projector));
  const std::size_t k = rng.categorical(weights);
  const auto& term = obs.spectrum()[k];
  return MeasurementOutcome{term.eigenvalue, weights[k], collapse(state, term.projector)};
}

double interference_norm(const DensityOperator& rho, const Observable& obs) {
  check_same_dim(rho.dim(), obs.dim(), "interference_norm");
  const Matrix& m = rho.matrix().entries();
  const auto& spectrum = obs.spectrum();
  double total = 0.0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      if (j == k) continue;
      // Block in the eigenbasis; same Frobenius norm as P_j rho P_k.
      const Matrix block = spectrum[j].basis.adjoint() * m * spectrum[k].basis;
      total += block.squaredNorm();
    }
  }
  return total;
}

double expectation_value(const DensityOperator& rho, const Observable& obs) {
  check_same_dim(rho.dim(), obs.dim(), "expectation_value");
  return (rho.matrix().entries() * obs.matrix().entries()).trace().real();
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a.dim(), b.dim(), "max_abs_difference");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace qcat
