#pragma once

// Probabilities as predictions of relative frequencies: exact binomial
// probabilities, outcome distributions read off a state, seeded frequency
// experiments and the product rule for independent systems.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcatalog/hilbert.hpp"

namespace qcat {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Outcome {
  double label;
  double probability;
};

// Labels strictly increasing, probabilities nonnegative and summing to 1
// within 1e-9.
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::vector<Outcome> outcomes);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  // Probability of `label`, 0 if it is not an outcome.
  double probability(double label) const;
  double mean() const;

 private:
  std::vector<Outcome> outcomes_;
};

struct FrequencyRecord {
  std::uint64_t trials = 0;
  std::map<double, std::uint64_t> counts;
  std::uint64_t seed = 0;
  std::string prng;

  double frequency(double label) const;
};

// Binomial coefficient as an exact integer.
BigInt binomial_coefficient(unsigned n, unsigned k);
// C(trials, n) p^n (1 - p)^(trials - n), exactly.
Rational binomial_pmf_exact(unsigned n, unsigned trials, const Rational& p);
double binomial_pmf(unsigned n, unsigned trials, const Rational& p);

// One entry per eigenvalue, weighted by the Born probability of its eigenspace.
OutcomeDistribution state_distribution(const StateVector& state, const Observable& obs);

// `trials` i.i.d. inverse-CDF draws (labels in increasing order).
FrequencyRecord sample_frequencies(const OutcomeDistribution& dist, std::uint64_t trials,
                                   std::uint64_t seed);

struct JointOutcome {
  double first;
  double second;
  double probability;
};

// Distribution of a pair of independent systems.  The factors are kept, so
// the marginals returned are exactly the distributions that were combined.
class ProductDistribution {
 public:
  ProductDistribution(OutcomeDistribution first, OutcomeDistribution second);

  // Pairs in lexicographic label order.
  const std::vector<JointOutcome>& outcomes() const { return outcomes_; }
  double probability(double first, double second) const;
  const OutcomeDistribution& marginal_first() const { return first_; }
  const OutcomeDistribution& marginal_second() const { return second_; }

 private:
  OutcomeDistribution first_;
  OutcomeDistribution second_;
  std::vector<JointOutcome> outcomes_;
};

ProductDistribution independent_product(const OutcomeDistribution& a,
                                         const OutcomeDistribution& b);

}  // namespace qcat
