// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcatalog/epr.hpp"
#include "qcatalog/hilbert.hpp"
#include "qcatalog/lattice.hpp"
#include "qcatalog/measurement.hpp"
#include "qcatalog/prediction.hpp"
#include "qcatalog/random.hpp"
#include "qcatalog/rng.hpp"

namespace {

using namespace qcat;

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double round_sig(double x, int digits) {
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(x))));
  return std::round(x * scale) / scale;
}

double sigma_of(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / static_cast<double>(n)); }

Verdict binomial_table() {
  Verdict v;
  const Rational sixth(1, 6);
  const std::pair<unsigned, double> quoted[] = {{2, 0.296}, {1, 0.269}, {3, 0.197}, {0, 0.112}};
  for (auto [n, value] : quoted) {
    const double p = round_sig(binomial_pmf(n, 12, sixth), 3);
    v.require(p == value, fmt::format("p({}) = {} rounds to {}", n, binomial_pmf(n, 12, sixth), p));
  }
  const double p12 = round_sig(binomial_pmf(12, 12, sixth), 1);
  v.require(p12 == 5e-10, fmt::format("p(12) rounds to {}", p12));
  return v;
}

Verdict perfect_anticorrelation() {
  Verdict v;
  Rng rng(101);
  for (int rep = 0; rep < 100; ++rep) {
    const Direction d(kPi * rng.uniform(), 2 * kPi * rng.uniform());
    const auto j = joint_distribution(d, d);
    v.require(j.probability(1, 1) <= 1e-12 && j.probability(-1, -1) <= 1e-12,
              fmt::format("aligned p(+,+) = {}, p(-,-) = {}", j.probability(1, 1),
                          j.probability(-1, -1)));
  }
  const Direction d = Direction::planar(kPi / 3);
  const TrialLog log = run_trials({d}, {d}, 100000, 102);
  std::uint64_t same = 0;
  for (const auto& t : log.trials) same += t.alice_out == t.bob_out ? 1 : 0;
  v.require(same == 0, fmt::format("{} same-outcome events in 1e5 trials", same));
  return v;
}

std::vector<Direction> grid16() {
  std::vector<Direction> g;
  for (int k = 0; k < 16; ++k) g.push_back(Direction::planar(2 * kPi * k / 16.0));
  return g;
}

Verdict no_signaling() {
  Verdict v;
  const auto grid = grid16();
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      const auto j = joint_distribution(a, b);
      v.require(std::abs(j.bob_marginal(1) - 0.5) <= 1e-12 && std::abs(j.bob_marginal(-1) - 0.5) <= 1e-12,
                fmt::format("exact Bob marginal {} at a = {}, b = {}", j.bob_marginal(1), a.theta(),
                            b.theta()));
    }
  }
  constexpr std::uint64_t n = 100000;
  const Direction bob = Direction::planar(kPi / 5);
  std::uint64_t cell = 0;
  for (const auto& a : grid) {
    const TrialLog log = run_trials({a}, {bob}, n, derive_stream_seed(103, cell++));
    const double f = wing_frequencies(log, Wing::kBob).frequency(1.0);
    v.require(std::abs(f - 0.5) <= 3 * sigma_of(0.5, n),
              fmt::format("sampled Bob marginal {} at Alice theta {}", f, a.theta()));
  }
  return v;
}

Verdict postselection() {
  Verdict v;
  constexpr std::uint64_t n = 100000;
  const Direction up(0.0);
  for (int k = 0; k < 8; ++k) {
    const double theta = kPi * k / 7.0;
    const Direction b = Direction::planar(theta);
    const TrialLog log = run_trials({up}, {b}, n, derive_stream_seed(104, static_cast<std::uint64_t>(k)));
    const auto ensembles = postselect(log, 1, up);
    const auto& e = ensembles.front();
    const double predicted = e.predicted.probability(1.0);
    const double expected = std::pow(std::sin(theta / 2), 2);
    v.require(std::abs(predicted - expected) <= 1e-12,
              fmt::format("prediction {} vs sin^2 {} at theta {}", predicted, expected, theta));
    const double f = e.observed.frequency(1.0);
    const double tol = std::max(4 * sigma_of(expected, e.observed.trials), 1e-15);
    v.require(std::abs(f - expected) <= tol,
              fmt::format("conditional frequency {} vs {} at theta {}", f, expected, theta));
  }
  return v;
}

// Local deterministic strategies, enumerated independently of the library:
// bit i of the 4-bit strategy fixes the outcome for setting i (A, A', B, B').
int brute_force_lhv_bound() {
  int best = 0;
  for (int s = 0; s < 16; ++s) {
    auto out = [s](int i) { return ((s >> i) & 1) ? 1 : -1; };
    const int value = out(0) * out(2) + out(0) * out(3) + out(1) * out(2) - out(1) * out(3);
    best = std::max(best, std::abs(value));
  }
  return best;
}

Verdict bell_violation() {
  Verdict v;
  const Direction a = Direction::planar(0), ap = Direction::planar(kPi / 2);
  const Direction b = Direction::planar(kPi / 4), bp = Direction::planar(3 * kPi / 4);
  const double s = chsh(a, ap, b, bp);
  v.require(std::abs(std::abs(s) - 2 * std::numbers::sqrt2) <= 1e-9, fmt::format("exact S = {}", s));
  v.require(brute_force_lhv_bound() == 2, "brute-force local bound differs from 2");
  v.require(lhv_chsh_bound() == 2, fmt::format("library local bound {}", lhv_chsh_bound()));
  const TrialLog log = run_trials({a, ap}, {b, bp}, 100000, 105);
  const Estimate e = estimate_chsh(log, a, ap, b, bp);
  v.require(std::abs(std::abs(e.value) - 2 * std::numbers::sqrt2) <= 3 * e.sigma,
            fmt::format("sampled S = {} +- {}", e.value, e.sigma));
  return v;
}

// Same observable written in its own eigenbasis: eigenvectors become exact
// canonical basis vectors.
std::pair<StateVector, Observable> in_measured_basis(const StateVector& psi, const Observable& obs) {
  std::vector<std::pair<double, Matrix>> terms;
  std::vector<Matrix> bases;
  Eigen::Index col = 0;
  Matrix change(psi.dim(), psi.dim());
  for (const auto& e : obs.spectrum()) {
    const auto m = static_cast<Eigen::Index>(e.multiplicity());
    change.middleCols(col, m) = e.basis;
    terms.emplace_back(e.eigenvalue, Matrix::Identity(psi.dim(), psi.dim()).middleCols(col, m));
    col += m;
  }
  return {StateVector(change.adjoint() * psi.amplitudes()), Observable::from_spectrum(std::move(terms))};
}

Verdict measurement_core() {
  Verdict v;
  Rng rng(106);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rep % 3);
    const StateVector psi = random::state(dim, rng);
    const Observable obs = rep % 2 == 0 ? spectral_decompose(random::hermitian(dim, rng))
                                        : random::degenerate_observable(dim, rng);
    const std::size_t readings = obs.spectrum().size();
    const DensityOperator mixture = von_neumann_mixture(psi, obs);
    const StateVector compound = premeasurement(psi, obs, StateVector::basis(readings, 0));
    const DensityOperator reduced =
        partial_trace(DensityOperator::pure(compound), dim, readings, Factor::kFirst);
    const double residual = max_abs_difference(reduced.matrix(), mixture.matrix());
    v.require(residual <= 1e-9, fmt::format("residual {} in dim {}", residual, dim));

    const auto [psi_m, obs_m] = in_measured_basis(psi, obs);
    const double interference = interference_norm(von_neumann_mixture(psi_m, obs_m), obs_m);
    v.require(interference == 0.0, fmt::format("interference {} in the measured basis", interference));
  }
  return v;
}

Verdict lattice_axioms() {
  Verdict v;
  Rng rng(107);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int i = 0; i < 500; ++i) {
      const Subspace e = random::subspace(n, rng);
      const Subspace f = random::subspace(n, rng);
      const Subspace above = join(e, random::subspace(n, rng));
      const Subspace ec = orthocomplement(e);
      v.require(meet(e, ec).is_zero(), fmt::format("E ^ ~E != 0 in dim {}", n));
      v.require(join(e, ec).is_full(), fmt::format("E v ~E != 1 in dim {}", n));
      v.require(equal(orthocomplement(ec), e), fmt::format("~~E != E in dim {}", n));
      v.require(leq(e, above) && leq(orthocomplement(above), ec),
                fmt::format("complement does not reverse order in dim {}", n));
      v.require(equal(orthocomplement(join(e, f)), meet(ec, orthocomplement(f))),
                fmt::format("De Morgan fails in dim {}", n));
    }
  }
  const double r = 1.0 / std::numbers::sqrt2;
  Vector x_up(2), z_up(2), z_down(2);
  x_up << r, r;
  z_up << 1, 0;
  z_down << 0, 1;
  const Subspace a = Subspace::span(std::vector<Vector>{x_up});
  const Subspace b = Subspace::span(std::vector<Vector>{z_up});
  const Subspace c = Subspace::span(std::vector<Vector>{z_down});
  v.require(equal(meet(a, join(b, c)), a), "witness left side is not A");
  v.require(join(meet(a, b), meet(a, c)).is_zero(), "witness right side is not empty");
  for (std::uint64_t ma = 0; ma < 16; ++ma) {
    for (std::uint64_t mb = 0; mb < 16; ++mb) {
      for (std::uint64_t mc = 0; mc < 16; ++mc) {
        v.require(c_distributivity_holds(ClassicalEvent::from_mask(4, ma), ClassicalEvent::from_mask(4, mb),
                                         ClassicalEvent::from_mask(4, mc)),
                  "classical distributivity fails");
      }
    }
  }
  return v;
}

Verdict formalism_invariants() {
  Verdict v;
  Rng rng(108);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rep % 5);
    const StateVector psi = random::state(dim, rng);
    const Observable obs = spectral_decompose(random::hermitian(dim, rng));
    double total = 0.0;
    for (const auto& e : obs.spectrum()) total += born_probability(psi, e.projector);
    v.require(std::abs(total - 1.0) <= 1e-9, fmt::format("Born probabilities sum to {}", total));

    const Observable h = spectral_decompose(random::hermitian(dim, rng));
    const double t1 = 3 * rng.uniform(), t2 = 3 * rng.uniform();
    const StateVector once = evolve(psi, h, {1.0, t1 + t2});
    const StateVector twice = evolve(evolve(psi, h, {1.0, t1}), h, {1.0, t2});
    v.require(std::abs(once.amplitudes().norm() - 1.0) <= 1e-10, "evolution changes the norm");
    v.require((once.amplitudes() - twice.amplitudes()).cwiseAbs().maxCoeff() <= 1e-9,
              "evolution violates the group property");

    const std::size_t dim2 = 2 + static_cast<std::size_t>(rng.index(3));
    const StateVector phi = random::state(dim2, rng);
    const Observable obs2 = spectral_decompose(random::hermitian(dim2, rng));
    const StateVector joint = tensor_state(psi, phi);
    for (const auto& e1 : obs.spectrum()) {
      for (const auto& e2 : obs2.spectrum()) {
        const double p = born_probability(joint, tensor_op(e1.projector, e2.projector));
        const double q = born_probability(psi, e1.projector) * born_probability(phi, e2.projector);
        v.require(std::abs(p - q) <= 1e-10, fmt::format("product probability {} vs {}", p, q));
      }
    }
  }
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"binomial table", binomial_table},
      {"perfect anticorrelation", perfect_anticorrelation},
      {"no-signaling", no_signaling},
      {"post-selection bookkeeping", postselection},
      {"CHSH violation", bell_violation},
      {"measurement core", measurement_core},
      {"lattice axioms", lattice_axioms},
      {"formalism invariants", formalism_invariants},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s (%.2f s)%s%s\n", v.ok ? "PASS" : "FAIL", index, name, secs,
                v.ok ? "" : ": ", v.detail.c_str());
    failures += v.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
