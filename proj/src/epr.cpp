#include "qcatalog/epr.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qcatalog/errors.hpp"
#include "qcatalog/measurement.hpp"
#include "qcatalog/rng.hpp"
#include "qcatalog/version.hpp"

namespace qcat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDirectionTol = 1e-9;

std::size_t outcome_index(int outcome) {
  if (outcome == -1) return 0;
  if (outcome == 1) return 1;
  throw DomainError(fmt::format("spin outcome must be -1 or +1, got {}", outcome));
}

constexpr int outcome_label(std::size_t index) { return index == 0 ? -1 : 1; }

// Eigenprojector of n . sigma for `outcome`.
ComplexMatrix spin_projector(const Direction& d, int outcome) {
  return spin_observable(d).spectrum()[outcome_index(outcome)].projector;
}

bool matches(const Trial& t, const TrialFilter& f) {
  if (f.alice_dir && !same_direction(t.alice_dir, *f.alice_dir)) return false;
  if (f.bob_dir && !same_direction(t.bob_dir, *f.bob_dir)) return false;
  if (f.alice_out && t.alice_out != *f.alice_out) return false;
  if (f.bob_out && t.bob_out != *f.bob_out) return false;
  return true;
}

// Undoes the rounding of the 12-digit encoding at the ends of the ranges.
Direction parse_direction(const std::string& theta_text, const std::string& phi_text) {
  double theta = std::stod(theta_text);
  double phi = std::stod(phi_text);
  if (theta > std::numbers::pi && theta - std::numbers::pi < kDirectionTol) theta = std::numbers::pi;
  if (theta < 0.0 && theta > -kDirectionTol) theta = 0.0;
  if (phi >= kTwoPi && phi - kTwoPi < kDirectionTol) phi = 0.0;
  if (phi < 0.0 && phi > -kDirectionTol) phi = 0.0;
  return Direction(theta, phi);
}

}  // namespace

// Direction

Direction::Direction(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    throw DomainError(fmt::format("Direction: polar angle {} outside [0, pi]", theta));
  }
  if (!std::isfinite(phi) || phi < 0.0 || phi >= kTwoPi) {
    throw DomainError(fmt::format("Direction: azimuth {} outside [0, 2 pi)", phi));
  }
}

Direction Direction::planar(double angle) {
  if (!std::isfinite(angle)) throw DomainError("Direction::planar: non-finite angle");
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  if (a <= std::numbers::pi) return Direction(a, 0.0);
  return Direction(kTwoPi - a, std::numbers::pi);
}

std::array<double, 3> Direction::unit_vector() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

double angle_between(const Direction& a, const Direction& b) {
  const auto u = a.unit_vector();
  const auto v = b.unit_vector();
  const double c = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool same_direction(const Direction& a, const Direction& b) {
  return std::abs(a.theta() - b.theta()) <= kDirectionTol &&
         std::abs(a.phi() - b.phi()) <= kDirectionTol;
}

// Exact quantities

StateVector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = (1.0 / std::numbers::sqrt2);
  v(2) = -(1.0 / std::numbers::sqrt2);
  return StateVector(std::move(v));
}

Observable spin_observable(const Direction& d) {
  const double c = std::cos(d.theta() / 2.0);
  const double s = std::sin(d.theta() / 2.0);
  const Complex e = std::polar(1.0, d.phi());
  Matrix up(2, 1);
  up << c, e * s;
  Matrix down(2, 1);
  down << -std::conj(e) * s, c;
  return Observable::from_spectrum({{-1.0, down}, {1.0, up}});
}

double SpinPairDistribution::probability(int alice, int bob) const {
  return table_[2 * outcome_index(alice) + outcome_index(bob)];
}

double SpinPairDistribution::alice_marginal(int alice) const {
  return probability(alice, -1) + probability(alice, 1);
}

double SpinPairDistribution::bob_marginal(int bob) const {
  return probability(-1, bob) + probability(1, bob);
}

double SpinPairDistribution::correlation() const {
  return table_[0] - table_[1] - table_[2] + table_[3];
}

SpinPairDistribution joint_distribution(const Direction& alice, const Direction& bob) {
  const StateVector psi = singlet();
  std::array<double, 4> table{};
  for (std::size_t i = 0; i < 2; ++i) {
    const ComplexMatrix pa = spin_projector(alice, outcome_label(i));
    for (std::size_t j = 0; j < 2; ++j) {
      const ComplexMatrix pb = spin_projector(bob, outcome_label(j));
      table[2 * i + j] = born_probability(psi, tensor_op(pa, pb));
    }
  }
  return SpinPairDistribution(table);
}

double correlation(const Direction& alice, const Direction& bob) {
  return joint_distribution(alice, bob).correlation();
}

double chsh(const Direction& a, const Direction& a_prime, const Direction& b,
            const Direction& b_prime) {
  return correlation(a, b) - correlation(a, b_prime) + correlation(a_prime, b) +
         correlation(a_prime, b_prime);
}

std::array<int, 16> lhv_chsh_values() {
  std::array<int, 16> values{};
  for (unsigned s = 0; s < 16; ++s) {
    auto bit = [s](unsigned k) { return (s >> k & 1U) ? 1 : -1; };
    const int aa = bit(0), ap = bit(1), bb = bit(2), bp = bit(3);
    values[s] = aa * bb - aa * bp + ap * bb + ap * bp;
  }
  return values;
}

int lhv_chsh_bound() {
  int best = 0;
  for (int v : lhv_chsh_values()) best = std::max(best, std::abs(v));
  return best;
}

// Sampling

TrialLog run_trials(const std::vector<Direction>& alice_settings,
                    const std::vector<Direction>& bob_settings, std::uint64_t n,
                    std::uint64_t seed) {
  if (alice_settings.empty() || bob_settings.empty()) {
    throw DomainError("run_trials: setting lists must be nonempty");
  }
  if (n < 1) throw DomainError("run_trials: need at least one trial");

  std::vector<std::array<double, 4>> tables;
  tables.reserve(alice_settings.size() * bob_settings.size());
  for (const auto& a : alice_settings) {
    for (const auto& b : bob_settings) tables.push_back(joint_distribution(a, b).table());
  }

  TrialLog log{{}, seed, std::string(Rng::kAlgorithm)};
  log.trials.reserve(n);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < n; ++t) {
    const std::size_t ia = rng.index(alice_settings.size());
    const std::size_t ib = rng.index(bob_settings.size());
    const std::size_t cell = rng.categorical(tables[ia * bob_settings.size() + ib]);
    log.trials.push_back(Trial{alice_settings[ia], outcome_label(cell / 2), bob_settings[ib],
                               outcome_label(cell % 2)});
  }
  return log;
}

TrialLog run_trial_blocks(const std::vector<Direction>& alice_settings,
                          const std::vector<Direction>& bob_settings, std::uint64_t per_block,
                          std::uint64_t blocks, std::uint64_t seed) {
  if (blocks < 1) throw DomainError("run_trial_blocks: need at least one block");
  std::vector<std::future<TrialLog>> pending;
  pending.reserve(blocks);
  for (std::uint64_t k = 0; k < blocks; ++k) {
    pending.push_back(std::async(std::launch::async, [&, k] {
      return run_trials(alice_settings, bob_settings, per_block, derive_stream_seed(seed, k));
    }));
  }
  TrialLog merged{{}, seed, std::string(Rng::kAlgorithm)};
  merged.trials.reserve(per_block * blocks);
  for (auto& f : pending) {
    TrialLog block = f.get();
    merged.trials.insert(merged.trials.end(), block.trials.begin(), block.trials.end());
  }
  return merged;
}

FrequencyRecord wing_frequencies(const TrialLog& log, Wing wing, const TrialFilter& filter) {
  FrequencyRecord record{0, {{-1.0, 0}, {1.0, 0}}, log.seed, log.prng};
  for (const auto& t : log.trials) {
    if (!matches(t, filter)) continue;
    const int out = wing == Wing::kAlice ? t.alice_out : t.bob_out;
    ++record.counts[static_cast<double>(out)];
    ++record.trials;
  }
  return record;
}

OutcomeDistribution conditional_bob_prediction(int alice_outcome, const Direction& alice_dir,
                                               const Direction& bob_dir) {
  const ComplexMatrix alice_result =
      tensor_op(spin_projector(alice_dir, alice_outcome), ComplexMatrix::identity(2));
  const StateVector reduced = collapse(singlet(), alice_result);
  const DensityOperator bob =
      partial_trace(DensityOperator::pure(reduced), 2, 2, Factor::kSecond);
  std::vector<Outcome> outcomes;
  for (int beta : {-1, 1}) {
    const Matrix p = spin_projector(bob_dir, beta).entries();
    const double prob = (bob.matrix().entries() * p).trace().real();
    outcomes.push_back({static_cast<double>(beta), std::clamp(prob, 0.0, 1.0)});
  }
  return OutcomeDistribution(std::move(outcomes));
}

std::vector<PostselectedEnsemble> postselect(const TrialLog& log, int alice_outcome,
                                             const Direction& alice_dir) {
  outcome_index(alice_outcome);
  std::vector<Direction> bob_dirs;
  bool any_setting = false;
  for (const auto& t : log.trials) {
    if (!same_direction(t.alice_dir, alice_dir)) continue;
    any_setting = true;
    if (t.alice_out != alice_outcome) continue;
    const bool seen = std::any_of(bob_dirs.begin(), bob_dirs.end(),
                                  [&](const Direction& d) { return same_direction(d, t.bob_dir); });
    if (!seen) bob_dirs.push_back(t.bob_dir);
  }
  if (!any_setting) throw DomainError("postselect: no trials with the requested Alice setting");
  if (bob_dirs.empty()) throw DomainError("postselect: selection is empty");

  std::vector<PostselectedEnsemble> out;
  out.reserve(bob_dirs.size());
  for (const auto& b : bob_dirs) {
    TrialFilter filter{alice_dir, alice_outcome, b, std::nullopt};
    out.push_back(PostselectedEnsemble{b, wing_frequencies(log, Wing::kBob, filter),
                                       conditional_bob_prediction(alice_outcome, alice_dir, b)});
  }
  return out;
}

Estimate estimate_correlation(const TrialLog& log, const Direction& alice, const Direction& bob) {
  std::uint64_t n = 0;
  std::int64_t sum = 0;
  for (const auto& t : log.trials) {
    if (!same_direction(t.alice_dir, alice) || !same_direction(t.bob_dir, bob)) continue;
    ++n;
    sum += t.alice_out * t.bob_out;
  }
  if (n == 0) throw DomainError("estimate_correlation: no trials with the requested settings");
  const double e = static_cast<double>(sum) / static_cast<double>(n);
  return {e, std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(n)), n};
}

Estimate estimate_chsh(const TrialLog& log, const Direction& a, const Direction& a_prime,
                       const Direction& b, const Direction& b_prime) {
  const Estimate ab = estimate_correlation(log, a, b);
  const Estimate abp = estimate_correlation(log, a, b_prime);
  const Estimate apb = estimate_correlation(log, a_prime, b);
  const Estimate apbp = estimate_correlation(log, a_prime, b_prime);
  const double var = ab.sigma * ab.sigma + abp.sigma * abp.sigma + apb.sigma * apb.sigma +
                     apbp.sigma * apbp.sigma;
  return {ab.value - abp.value + apb.value + apbp.value, std::sqrt(var),
          ab.samples + abp.samples + apb.samples + apbp.samples};
}

// CSV

void write_trial_log_csv(const TrialLog& log, std::ostream& out) {
  out << "trial_index,alice_theta,alice_phi,alice_out,bob_theta,bob_phi,bob_out\n";
  for (std::size_t i = 0; i < log.trials.size(); ++i) {
    const Trial& t = log.trials[i];
    fmt::print(out, "{},{:.12g},{:.12g},{},{:.12g},{:.12g},{}\n", i, t.alice_dir.theta(),
               t.alice_dir.phi(), t.alice_out, t.bob_dir.theta(), t.bob_dir.phi(), t.bob_out);
  }
  fmt::print(out, "# seed={} prng={} version={}\n", log.seed, log.prng, kVersion);
}

TrialLog read_trial_log_csv(std::istream& in) {
  TrialLog log;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string field;
      while (meta >> field) {
        if (field.rfind("seed=", 0) == 0) log.seed = std::stoull(field.substr(5));
        if (field.rfind("prng=", 0) == 0) log.prng = field.substr(5);
      }
      continue;
    }
    if (!header) {
      if (line != "trial_index,alice_theta,alice_phi,alice_out,bob_theta,bob_phi,bob_out") {
        throw DomainError("read_trial_log_csv: unexpected header row");
      }
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) {
      throw DomainError(fmt::format("read_trial_log_csv: expected 7 columns, got {}", cells.size()));
    }
    const int alice_out = std::stoi(cells[3]);
    const int bob_out = std::stoi(cells[6]);
    outcome_index(alice_out);
    outcome_index(bob_out);
    log.trials.push_back(Trial{parse_direction(cells[1], cells[2]), alice_out,
                               parse_direction(cells[4], cells[5]), bob_out});
  }
  if (!header) throw DomainError("read_trial_log_csv: missing header row");
  return log;
}

}  // namespace qcat
