#pragma once

// Random states, self-adjoint matrices and subspaces drawn from an Rng.
// Gaussian variates use Box-Muller on Rng::uniform so that every draw is
// reproducible across standard libraries.

#include <cstddef>

#include "qcatalog/hilbert.hpp"
#include "qcatalog/lattice.hpp"
#include "qcatalog/rng.hpp"

namespace qcat::random {

double standard_normal(Rng& rng);
Complex complex_normal(Rng& rng);

// Haar-distributed unit vector.
StateVector state(std::size_t dim, Rng& rng);
// Gaussian unitary ensemble sample.
ComplexMatrix hermitian(std::size_t dim, Rng& rng);
// Span of `rank` Gaussian vectors (rank <= dim).
Subspace subspace(std::size_t dim, std::size_t rank, Rng& rng);
// Random subspace with rank uniform in [0, dim].
Subspace subspace(std::size_t dim, Rng& rng);
// Observable whose eigenvalues are drawn from a small integer set, so that
// degenerate spectra occur regularly.
Observable degenerate_observable(std::size_t dim, Rng& rng);

}  // namespace qcat::random
