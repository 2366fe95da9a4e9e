#pragma once

// Two spin-1/2 particles in the singlet state, measured along arbitrary
// directions by two distant experimenters (Alice holds the first factor,
// Bob the second).  Outcomes are labelled +1 (up) and -1 (down).
//
// Exact quantities come from the Born rule on the singlet.  Sampled runs
// produce a TrialLog; conditioning Bob's records on Alice's results is
// done afterwards on the log, never by changing Bob's sampling.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcatalog/hilbert.hpp"
#include "qcatalog/prediction.hpp"

namespace qcat {

// Measurement axis on the Bloch sphere: polar angle in [0, pi], azimuth in
// [0, 2 pi).
class Direction {
 public:
  explicit Direction(double theta, double phi = 0.0);
  // Direction in the x-z plane at `angle` from +z towards +x; any real
  // angle is accepted and reduced modulo 2 pi.
  static Direction planar(double angle);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  std::array<double, 3> unit_vector() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double theta_;
  double phi_;
};

// Angle between two axes, in [0, pi].
double angle_between(const Direction& a, const Direction& b);
// Equal angles up to 1e-9 rad (tolerates the 12-digit CSV encoding).
bool same_direction(const Direction& a, const Direction& b);

// (|01> - |10>) / sqrt(2)
StateVector singlet();

// n . sigma with eigenvalues exactly -1 and +1.
Observable spin_observable(const Direction& d);

// Joint outcome probabilities for one pair of settings.
class SpinPairDistribution {
 public:
  // Indexed by outcome (-1 or +1) on each wing.
  double probability(int alice, int bob) const;
  double alice_marginal(int alice) const;
  double bob_marginal(int bob) const;
  double correlation() const;
  // (-,-), (-,+), (+,-), (+,+)
  const std::array<double, 4>& table() const { return table_; }

 private:
  friend SpinPairDistribution joint_distribution(const Direction&, const Direction&);
  explicit SpinPairDistribution(std::array<double, 4> table) : table_(table) {}
  std::array<double, 4> table_;
};

SpinPairDistribution joint_distribution(const Direction& alice, const Direction& bob);
double correlation(const Direction& alice, const Direction& bob);

// E(a,b) - E(a,b') + E(a',b) + E(a',b')
double chsh(const Direction& a, const Direction& a_prime, const Direction& b,
            const Direction& b_prime);

// CHSH values of the 16 deterministic local strategies
// (A(a), A(a'), B(b), B(b')) in {-1,+1}^4, in binary order with bit set = +1.
std::array<int, 16> lhv_chsh_values();
// Largest |S| over the deterministic local strategies.
int lhv_chsh_bound();

inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2 sqrt(2)

struct Trial {
  Direction alice_dir;
  int alice_out;
  Direction bob_dir;
  int bob_out;
};

struct TrialLog {
  std::vector<Trial> trials;
  std::uint64_t seed = 0;
  std::string prng;
};

// n trials; each picks Alice's and Bob's settings independently and
// uniformly from the given lists, then draws the outcome pair from the
// joint distribution.
TrialLog run_trials(const std::vector<Direction>& alice_settings,
                    const std::vector<Direction>& bob_settings, std::uint64_t n,
                    std::uint64_t seed);

// `blocks` independent runs of `per_block` trials on derived seed streams,
// executed concurrently and concatenated in block order.
TrialLog run_trial_blocks(const std::vector<Direction>& alice_settings,
                          const std::vector<Direction>& bob_settings, std::uint64_t per_block,
                          std::uint64_t blocks, std::uint64_t seed);

enum class Wing { kAlice, kBob };

struct TrialFilter {
  std::optional<Direction> alice_dir;
  std::optional<int> alice_out;
  std::optional<Direction> bob_dir;
  std::optional<int> bob_out;
};

// Outcome counts on one wing over the trials matching `filter`.  Both
// labels -1 and +1 are always present in the record.
FrequencyRecord wing_frequencies(const TrialLog& log, Wing wing, const TrialFilter& filter = {});

struct PostselectedEnsemble {
  Direction bob_dir;
  FrequencyRecord observed;
  OutcomeDistribution predicted;
};

// Bob's records restricted to trials where Alice measured along
// `alice_dir` and found `alice_outcome`, one ensemble per Bob setting (in
// order of first appearance).  `predicted` is computed from the singlet
// reduced by Alice's result.
std::vector<PostselectedEnsemble> postselect(const TrialLog& log, int alice_outcome,
                                             const Direction& alice_dir);

// Bob's predicted outcome distribution along `bob_dir` after Alice found
// `alice_outcome` along `alice_dir`.
OutcomeDistribution conditional_bob_prediction(int alice_outcome, const Direction& alice_dir,
                                               const Direction& bob_dir);

struct Estimate {
  double value;
  double sigma;
  std::uint64_t samples;
};

// Mean of alice_out * bob_out over trials with the given settings;
// sigma = sqrt((1 - E^2) / n).
Estimate estimate_correlation(const TrialLog& log, const Direction& alice, const Direction& bob);
Estimate estimate_chsh(const TrialLog& log, const Direction& a, const Direction& a_prime,
                       const Direction& b, const Direction& b_prime);

// CSV with header
//   trial_index,alice_theta,alice_phi,alice_out,bob_theta,bob_phi,bob_out
// angles to 12 significant digits and a trailing '#' comment with the seed,
// generator and library version.
void write_trial_log_csv(const TrialLog& log, std::ostream& out);
TrialLog read_trial_log_csv(std::istream& in);

}  // namespace qcat
