#pragma once

namespace qcat::tol {

// Unit norm, self-adjointness, projector identities.
inline constexpr double kNorm = 1e-10;
// Eigenvalue accuracy of the spectral decomposition.
inline constexpr double kEigen = 1e-8;
// Eigenvalues closer than this are merged into one eigenspace.
inline constexpr double kDegenerate = 1e-8;
// Rank decisions and inclusion residuals in the subspace lattice.
inline constexpr double kRank = 1e-9;
// Below this a Born probability counts as zero when conditioning.
inline constexpr double kZero = 1e-12;
// Density operators: hermiticity, positivity, unit trace.
inline constexpr double kDensity = 1e-10;

}  // namespace qcat::tol
