#include "qcatalog/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qcatalog/epr.hpp"
#include "qcatalog/errors.hpp"
#include "qcatalog/lattice.hpp"
#include "qcatalog/measurement.hpp"
#include "qcatalog/prediction.hpp"
#include "qcatalog/random.hpp"
#include "qcatalog/rng.hpp"
#include "qcatalog/version.hpp"

namespace qcat::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr unsigned kDiceThrows = 12;
constexpr double kSelfCheckTol = 1e-9;

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string csv_preamble(const char* command, const RunConfig& cfg) {
  return fmt::format("# qcat {} {} seed={} prng={} trials={}\n", kVersion, command, cfg.seed,
                     Rng::kAlgorithm, cfg.trials);
}

Json json_preamble(const char* command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["version"] = std::string(kVersion);
  j["seed"] = cfg.seed;
  j["prng"] = std::string(Rng::kAlgorithm);
  j["trials"] = cfg.trials;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void self_check(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("self-check failed: " + what);
}

// Sampling standard deviation of a frequency estimate.
double binomial_sigma(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Complex number from JSON: a plain number or an [re, im] pair.
Complex parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw DomainError("malformed complex number: expected a number or [re, im]");
}

Json load_json(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (spec[first] == '[' || spec[first] == '{')) {
    text = spec;
  } else {
    std::ifstream in(spec);
    if (!in) throw DomainError(fmt::format("cannot read '{}'", spec));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(fmt::format("malformed JSON: {}", e.what()));
  }
}

StateVector parse_state(const std::string& spec) {
  Json j = load_json(spec);
  if (j.is_object() && j.contains("state")) j = j["state"];
  if (!j.is_array() || j.empty()) throw DomainError("state must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
  return StateVector::normalized(v);
}

Observable parse_observable(const std::string& spec) {
  Json j = load_json(spec);
  if (j.is_object() && j.contains("observable")) j = j["observable"];
  if (!j.is_array() || j.empty()) throw DomainError("observable must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw DomainError("observable must be a square matrix given as rows");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return spectral_decompose(ComplexMatrix(m));
}

void write_output(const RunConfig& cfg, const std::string& report, std::ostream& out) {
  if (!cfg.output_path) {
    out << report;
    return;
  }
  std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::ios_base::failure("cannot open " + *cfg.output_path);
  file << report;
  if (!file) throw std::ios_base::failure("write failed for " + *cfg.output_path);
}

}  // namespace

EprOptions default_epr_options() {
  constexpr double pi = std::numbers::pi;
  return EprOptions{{0.0, pi / 2.0}, {0.0, pi / 4.0, pi / 2.0, 3.0 * pi / 4.0, pi}};
}

// dice

std::string cmd_dice(const RunConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("dice: trials must be at least 1");
  const Rational sixth(1, 6);
  std::vector<double> exact(kDiceThrows + 1);
  Rational total = 0;
  for (unsigned n = 0; n <= kDiceThrows; ++n) {
    const Rational p = binomial_pmf_exact(n, kDiceThrows, sixth);
    total += p;
    exact[n] = p.convert_to<double>();
  }
  self_check(total == 1, "exact binomial probabilities do not sum to 1");

  // Each repetition throws a fair die twelve times and counts the fours.
  std::vector<std::uint64_t> counts(kDiceThrows + 1, 0);
  Rng rng(cfg.seed);
  for (std::uint64_t rep = 0; rep < cfg.trials; ++rep) {
    unsigned fours = 0;
    for (unsigned t = 0; t < kDiceThrows; ++t) fours += rng.index(6) == 3 ? 1U : 0U;
    ++counts[fours];
  }

  std::vector<double> sampled(kDiceThrows + 1);
  for (unsigned n = 0; n <= kDiceThrows; ++n) {
    sampled[n] = static_cast<double>(counts[n]) / static_cast<double>(cfg.trials);
  }

  if (cfg.format == Format::kJson) {
    Json j = json_preamble("dice", cfg);
    j["throws"] = kDiceThrows;
    j["face_probability"] = "1/6";
    Json rows = Json::array();
    for (unsigned n = 0; n <= kDiceThrows; ++n) {
      rows.push_back({{"n", n},
                      {"exact", exact[n]},
                      {"sampled", sampled[n]},
                      {"sigma", binomial_sigma(exact[n], cfg.trials)},
                      {"count", counts[n]}});
    }
    j["rows"] = rows;
    return dump(j);
  }
  std::string s = csv_preamble("dice", cfg);
  s += "n,exact,sampled,sigma,count\n";
  for (unsigned n = 0; n <= kDiceThrows; ++n) {
    s += fmt::format("{},{},{},{},{}\n", n, num(exact[n]), num(sampled[n]),
                     num(binomial_sigma(exact[n], cfg.trials)), counts[n]);
  }
  s += "# exact_sum=1.000000\n";
  return s;
}

// epr

std::string cmd_epr(const RunConfig& cfg, const EprOptions& opts) {
  if (cfg.trials < 1) throw DomainError("epr: trials must be at least 1");
  if (opts.alice_angles.empty() || opts.bob_angles.empty()) {
    throw DomainError("epr: need at least one angle per wing");
  }
  struct Cell {
    double alice_angle, bob_angle;
    std::array<std::uint64_t, 4> counts{};
    double alice_p_plus, bob_p_plus, bob_exact_p_plus;
    Estimate corr;
    double corr_exact;
    double cond_plus, cond_plus_pred, cond_minus, cond_minus_pred;
    double nosignal_delta, nosignal_sigma;
  };
  std::vector<Cell> cells;
  std::vector<double> reference_bob;  // Bob's +1 frequency under the first Alice setting

  std::uint64_t stream = 0;
  for (std::size_t ia = 0; ia < opts.alice_angles.size(); ++ia) {
    const Direction a = Direction::planar(opts.alice_angles[ia]);
    for (std::size_t ib = 0; ib < opts.bob_angles.size(); ++ib) {
      const Direction b = Direction::planar(opts.bob_angles[ib]);
      const SpinPairDistribution exact = joint_distribution(a, b);
      double sum = 0.0;
      for (double p : exact.table()) sum += p;
      self_check(std::abs(sum - 1.0) <= kSelfCheckTol, "joint probabilities do not sum to 1");
      self_check(std::abs(exact.bob_marginal(1) - 0.5) <= kSelfCheckTol,
                 "Bob's exact marginal depends on Alice's setting");

      const TrialLog log = run_trials({a}, {b}, cfg.trials, derive_stream_seed(cfg.seed, stream++));
      Cell c{};
      c.alice_angle = opts.alice_angles[ia];
      c.bob_angle = opts.bob_angles[ib];
      for (const auto& t : log.trials) ++c.counts[2 * (t.alice_out > 0) + (t.bob_out > 0)];
      c.alice_p_plus = wing_frequencies(log, Wing::kAlice).frequency(1.0);
      c.bob_p_plus = wing_frequencies(log, Wing::kBob).frequency(1.0);
      c.bob_exact_p_plus = exact.bob_marginal(1);
      c.corr = estimate_correlation(log, a, b);
      c.corr_exact = exact.correlation();
      auto conditional = [&](int alice_out, double& observed, double& predicted) {
        const auto rec = wing_frequencies(log, Wing::kBob, TrialFilter{a, alice_out, b, {}});
        observed = rec.trials > 0 ? rec.frequency(1.0) : std::nan("");
        predicted = conditional_bob_prediction(alice_out, a, b).probability(1.0);
      };
      conditional(1, c.cond_plus, c.cond_plus_pred);
      conditional(-1, c.cond_minus, c.cond_minus_pred);
      if (ia == 0) reference_bob.push_back(c.bob_p_plus);
      c.nosignal_delta = c.bob_p_plus - reference_bob[ib];
      c.nosignal_sigma = ia == 0 ? 0.0 : std::sqrt(2.0) * binomial_sigma(0.5, cfg.trials);
      cells.push_back(c);
    }
  }

  if (cfg.format == Format::kJson) {
    Json j = json_preamble("epr", cfg);
    Json rows = Json::array();
    for (const auto& c : cells) {
      Json row;
      row["alice_angle"] = c.alice_angle;
      row["bob_angle"] = c.bob_angle;
      row["counts"] = {{"--", c.counts[0]}, {"-+", c.counts[1]}, {"+-", c.counts[2]},
                       {"++", c.counts[3]}};
      row["alice_p_plus"] = c.alice_p_plus;
      row["bob_p_plus"] = c.bob_p_plus;
      row["bob_exact_p_plus"] = c.bob_exact_p_plus;
      row["correlation"] = c.corr.value;
      row["correlation_sigma"] = c.corr.sigma;
      row["correlation_exact"] = c.corr_exact;
      row["bob_p_plus_given_alice_plus"] = c.cond_plus;
      row["predicted_given_alice_plus"] = c.cond_plus_pred;
      row["bob_p_plus_given_alice_minus"] = c.cond_minus;
      row["predicted_given_alice_minus"] = c.cond_minus_pred;
      row["nosignal_delta"] = c.nosignal_delta;
      row["nosignal_sigma"] = c.nosignal_sigma;
      rows.push_back(row);
    }
    j["cells"] = rows;
    return dump(j);
  }
  std::string s = csv_preamble("epr", cfg);
  s += "alice_angle,bob_angle,n_mm,n_mp,n_pm,n_pp,alice_p_plus,bob_p_plus,bob_exact_p_plus,"
       "correlation,correlation_sigma,correlation_exact,bob_p_plus_given_alice_plus,"
       "predicted_given_alice_plus,bob_p_plus_given_alice_minus,predicted_given_alice_minus,"
       "nosignal_delta,nosignal_sigma\n";
  for (const auto& c : cells) {
    s += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(c.alice_angle),
                     num(c.bob_angle), c.counts[0], c.counts[1], c.counts[2], c.counts[3],
                     num(c.alice_p_plus), num(c.bob_p_plus), num(c.bob_exact_p_plus),
                     num(c.corr.value), num(c.corr.sigma), num(c.corr_exact), num(c.cond_plus),
                     num(c.cond_plus_pred), num(c.cond_minus), num(c.cond_minus_pred),
                     num(c.nosignal_delta), num(c.nosignal_sigma));
  }
  return s;
}

// bell

std::string cmd_bell(const RunConfig& cfg, const BellOptions& opts) {
  if (cfg.trials < 1) throw DomainError("bell: trials must be at least 1");
  const Direction a = Direction::planar(opts.a);
  const Direction ap = Direction::planar(opts.a_prime);
  const Direction b = Direction::planar(opts.b);
  const Direction bp = Direction::planar(opts.b_prime);
  const double exact = chsh(a, ap, b, bp);
  const int lhv = lhv_chsh_bound();
  self_check(std::abs(exact) <= kTsirelsonBound + kSelfCheckTol, "CHSH value exceeds 2 sqrt(2)");
  self_check(lhv == 2, "local strategies exceed |S| = 2");

  const TrialLog log = run_trials({a, ap}, {b, bp}, cfg.trials, cfg.seed);
  const Estimate sampled = estimate_chsh(log, a, ap, b, bp);
  const bool violated = std::abs(sampled.value) - 3.0 * sampled.sigma > lhv;
  const char* verdict = violated ? "violated" : "not-violated";

  if (cfg.format == Format::kJson) {
    Json j = json_preamble("bell", cfg);
    j["angles"] = {{"a", opts.a}, {"a_prime", opts.a_prime}, {"b", opts.b}, {"b_prime", opts.b_prime}};
    j["exact_s"] = exact;
    j["sampled_s"] = sampled.value;
    j["sampled_sigma"] = sampled.sigma;
    j["lhv_bound"] = lhv;
    j["tsirelson_bound"] = kTsirelsonBound;
    j["verdict"] = verdict;
    return dump(j);
  }
  std::string s = csv_preamble("bell", cfg);
  s += "quantity,value\n";
  s += fmt::format("a,{}\na_prime,{}\nb,{}\nb_prime,{}\n", num(opts.a), num(opts.a_prime),
                   num(opts.b), num(opts.b_prime));
  s += fmt::format("exact_s,{}\nsampled_s,{}\nsampled_sigma,{}\n", num(exact), num(sampled.value),
                   num(sampled.sigma));
  s += fmt::format("lhv_bound,{}\ntsirelson_bound,{}\nverdict,{}\n", lhv, num(kTsirelsonBound),
                   verdict);
  return s;
}

// measure

std::string cmd_measure(const RunConfig& cfg, const MeasureOptions& opts) {
  if (cfg.trials < 1) throw DomainError("measure: trials must be at least 1");
  const StateVector state = parse_state(opts.state);
  const Observable obs = parse_observable(opts.observable);
  if (state.dim() != obs.dim()) {
    throw DimensionError(fmt::format("measure: state has dimension {} but observable {}",
                                     state.dim(), obs.dim()));
  }
  const OutcomeDistribution dist = state_distribution(state, obs);
  const FrequencyRecord freq = sample_frequencies(dist, cfg.trials, cfg.seed);
  const DensityOperator pure = DensityOperator::pure(state);
  const DensityOperator mixture = von_neumann_mixture(state, obs);
  const double before = interference_norm(pure, obs);
  const double after = interference_norm(mixture, obs);

  const std::size_t readings = obs.spectrum().size();
  const StateVector compound =
      premeasurement(state, obs, StateVector::basis(std::max<std::size_t>(readings, 1), 0));
  const DensityOperator reduced =
      partial_trace(DensityOperator::pure(compound), state.dim(), readings, Factor::kFirst);
  const double residual = max_abs_difference(reduced.matrix(), mixture.matrix());
  self_check(residual <= kSelfCheckTol,
             fmt::format("reduced premeasurement state differs from the mixture by {:.3g}", residual));
  self_check(after <= kSelfCheckTol, "mixture retains interference terms");

  const double expect_pure = expectation_value(state, obs);
  const double expect_mixture = expectation_value(mixture, obs);
  const Matrix& m = mixture.matrix().entries();

  if (cfg.format == Format::kJson) {
    Json j = json_preamble("measure", cfg);
    Json d = Json::array();
    for (const auto& o : dist.outcomes()) {
      d.push_back({{"eigenvalue", o.label},
                   {"probability", o.probability},
                   {"frequency", freq.frequency(o.label)}});
    }
    j["distribution"] = d;
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    j["mixture"] = rows;
    j["interference_before"] = before;
    j["interference_after"] = after;
    j["premeasurement_residual"] = residual;
    j["expectation_pure"] = expect_pure;
    j["expectation_mixture"] = expect_mixture;
    return dump(j);
  }
  std::string s = csv_preamble("measure", cfg);
  s += "section,key,value\n";
  for (const auto& o : dist.outcomes()) {
    s += fmt::format("probability,{},{}\n", num(o.label), num(o.probability));
  }
  for (const auto& o : dist.outcomes()) {
    s += fmt::format("frequency,{},{}\n", num(o.label), num(freq.frequency(o.label)));
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      s += fmt::format("mixture_re,{}:{},{}\n", r, c, num(m(r, c).real()));
      s += fmt::format("mixture_im,{}:{},{}\n", r, c, num(m(r, c).imag()));
    }
  }
  s += fmt::format("interference,before,{}\ninterference,after,{}\n", num(before), num(after));
  s += fmt::format("residual,premeasurement_vs_mixture,{}\n", num(residual));
  s += fmt::format("expectation,pure,{}\nexpectation,mixture,{}\n", num(expect_pure),
                   num(expect_mixture));
  return s;
}

// lattice

std::string cmd_lattice(const RunConfig& cfg, const LatticeOptions& opts) {
  if (opts.dim < 2) throw DomainError("lattice: dimension must be at least 2");
  if (opts.samples < 1) throw DomainError("lattice: samples must be at least 1");
  const std::size_t n = opts.dim;

  struct Tally {
    const char* name;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    void record(bool ok) { ok ? ++passed : ++failed; }
  };
  std::vector<Tally> tallies{{"meet_with_complement_is_zero"},  {"join_with_complement_is_one"},
                             {"double_complement"},             {"complement_reverses_order"},
                             {"de_morgan"},                     {"disjunction_equals_join"}};

  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const Subspace e = random::subspace(n, rng);
    const Subspace other = random::subspace(n, rng);
    const Subspace above = join(e, random::subspace(n, rng));
    const Subspace ec = orthocomplement(e);
    tallies[0].record(meet(e, ec).is_zero());
    tallies[1].record(join(e, ec).is_full());
    tallies[2].record(equal(orthocomplement(ec), e));
    tallies[3].record(leq(e, above) && leq(orthocomplement(above), ec));
    tallies[4].record(equal(orthocomplement(join(e, other)), meet(ec, orthocomplement(other))));
    tallies[5].record(equal(disjunction(e, other), join(e, other)));
  }

  // Spin-x up against spin-z up and down, embedded in the first two axes.
  Vector ax = Vector::Zero(static_cast<Eigen::Index>(n));
  ax(0) = ax(1) = (1.0 / std::numbers::sqrt2);
  Vector az_up = Vector::Zero(static_cast<Eigen::Index>(n));
  az_up(0) = 1.0;
  Vector az_down = Vector::Zero(static_cast<Eigen::Index>(n));
  az_down(1) = 1.0;
  const Subspace wa = Subspace::span(std::vector<Vector>{ax});
  const Subspace wb = Subspace::span(std::vector<Vector>{az_up});
  const Subspace wc = Subspace::span(std::vector<Vector>{az_down});
  const Subspace left = meet(wa, join(wb, wc));
  const Subspace right = join(meet(wa, wb), meet(wa, wc));
  const bool left_is_a = equal(left, wa);
  const bool right_is_zero = right.is_zero();

  // Powerset of a four-element universe.
  constexpr std::size_t kUniverse = 4;
  Tally classical_axioms{"classical_axioms"};
  Tally classical_distributivity{"classical_distributivity"};
  for (std::uint64_t ma = 0; ma < 16; ++ma) {
    const auto ea = ClassicalEvent::from_mask(kUniverse, ma);
    const auto ca = c_complement(ea);
    classical_axioms.record(c_meet(ea, ca) == ClassicalEvent::empty(kUniverse) &&
                            c_join(ea, ca) == ClassicalEvent::full(kUniverse) &&
                            c_complement(ca) == ea);
    for (std::uint64_t mb = 0; mb < 16; ++mb) {
      const auto eb = ClassicalEvent::from_mask(kUniverse, mb);
      classical_axioms.record(!c_leq(ea, eb) || c_leq(c_complement(eb), ca));
      for (std::uint64_t mc = 0; mc < 16; ++mc) {
        classical_distributivity.record(
            c_distributivity_holds(ea, eb, ClassicalEvent::from_mask(kUniverse, mc)));
      }
    }
  }

  std::uint64_t failures = classical_axioms.failed + classical_distributivity.failed;
  for (const auto& t : tallies) failures += t.failed;
  self_check(failures == 0, fmt::format("{} lattice axiom checks failed", failures));
  self_check(left_is_a && right_is_zero, "distributivity witness did not evaluate as expected");

  if (cfg.format == Format::kJson) {
    Json j = json_preamble("lattice", cfg);
    j["dim"] = n;
    j["samples"] = opts.samples;
    Json checks = Json::array();
    for (const auto& t : tallies) {
      checks.push_back({{"check", t.name}, {"passed", t.passed}, {"failed", t.failed}});
    }
    j["checks"] = checks;
    j["witness"] = {{"a", "spin-x up"},
                    {"b", "spin-z up"},
                    {"c", "spin-z down"},
                    {"left_rank", left.rank()},
                    {"left_equals_a", left_is_a},
                    {"right_rank", right.rank()},
                    {"right_is_zero", right_is_zero},
                    {"distributive", distributivity_holds(wa, wb, wc)}};
    j["classical"] = {{"universe_size", kUniverse},
                      {"axiom_failures", classical_axioms.failed},
                      {"distributivity_triples", classical_distributivity.passed +
                                                     classical_distributivity.failed},
                      {"distributivity_failures", classical_distributivity.failed}};
    return dump(j);
  }
  std::string s = csv_preamble("lattice", cfg);
  s += fmt::format("# dim={} samples={}\n", n, opts.samples);
  s += "check,passed,failed\n";
  for (const auto& t : tallies) s += fmt::format("{},{},{}\n", t.name, t.passed, t.failed);
  s += fmt::format("{},{},{}\n", classical_axioms.name, classical_axioms.passed,
                   classical_axioms.failed);
  s += fmt::format("{},{},{}\n", classical_distributivity.name, classical_distributivity.passed,
                   classical_distributivity.failed);
  s += "# witness: A = spin-x up, B = spin-z up, C = spin-z down\n";
  s += fmt::format("# witness left = A ^ (B v C): rank {}, equals A: {}\n", left.rank(),
                   left_is_a ? "yes" : "no");
  s += fmt::format("# witness right = (A ^ B) v (A ^ C): rank {}, is zero: {}\n", right.rank(),
                   right_is_zero ? "yes" : "no");
  return s;
}

// dispatch

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional quantum prediction engine", "qcat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string format = "csv";
  std::string out_path;
  app.add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Number of sampled trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output file (default: standard output)");

  auto* dice = app.add_subcommand("dice", "Probability of n fours in twelve throws of a die");

  EprOptions epr_opts = default_epr_options();
  auto* epr = app.add_subcommand("epr", "Singlet spin correlations on a grid of settings");
  epr->add_option("--alice", epr_opts.alice_angles, "Alice's planar angles (radians)")
      ->delimiter(',');
  epr->add_option("--bob", epr_opts.bob_angles, "Bob's planar angles (radians)")->delimiter(',');

  BellOptions bell_opts;
  auto* bell = app.add_subcommand("bell", "CHSH value, exact and sampled");
  bell->add_option("--a", bell_opts.a, "Alice's first angle")->capture_default_str();
  bell->add_option("--a-prime", bell_opts.a_prime, "Alice's second angle")->capture_default_str();
  bell->add_option("--b", bell_opts.b, "Bob's first angle")->capture_default_str();
  bell->add_option("--b-prime", bell_opts.b_prime, "Bob's second angle")->capture_default_str();

  MeasureOptions measure_opts;
  auto* measure = app.add_subcommand("measure", "Measurement of an observable on a state");
  measure->add_option("--state", measure_opts.state, "State vector (JSON or file)")->required();
  measure->add_option("--observable", measure_opts.observable, "Observable matrix (JSON or file)")
      ->required();

  LatticeOptions lattice_opts;
  auto* lattice = app.add_subcommand("lattice", "Subspace-lattice axiom checks");
  lattice->add_option("--dim", lattice_opts.dim, "Ambient dimension")->capture_default_str();
  lattice->add_option("--samples", lattice_opts.samples, "Random subspaces")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  cfg.format = format == "json" ? Format::kJson : Format::kCsv;
  if (!out_path.empty()) cfg.output_path = out_path;

  try {
    std::string report;
    if (dice->parsed()) {
      report = cmd_dice(cfg);
    } else if (epr->parsed()) {
      report = cmd_epr(cfg, epr_opts);
    } else if (bell->parsed()) {
      report = cmd_bell(cfg, bell_opts);
    } else if (measure->parsed()) {
      report = cmd_measure(cfg, measure_opts);
    } else {
      report = cmd_lattice(cfg, lattice_opts);
    }
    write_output(cfg, report, out);
    return 0;
  } catch (const InvariantViolation& e) {
    err << "qcat: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "qcat: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qcat::cli
