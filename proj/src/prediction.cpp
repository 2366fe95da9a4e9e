#include "qcatalog/prediction.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "qcatalog/errors.hpp"
#include "qcatalog/rng.hpp"

namespace qcat {

namespace {

constexpr double kDistributionSumTol = 1e-9;

Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) out *= b;
    b *= b;
    exponent >>= 1U;
  }
  return out;
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<Outcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw DomainError("OutcomeDistribution: no outcomes");
  double total = 0.0;
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const auto& o = outcomes_[i];
    if (!std::isfinite(o.label)) throw DomainError("OutcomeDistribution: non-finite label");
    if (i > 0 && !(o.label > outcomes_[i - 1].label)) {
      throw DomainError("OutcomeDistribution: labels must be strictly increasing");
    }
    if (!(o.probability >= 0.0) || !std::isfinite(o.probability)) {
      throw DomainError(fmt::format("OutcomeDistribution: invalid probability {}", o.probability));
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > kDistributionSumTol) {
    throw DomainError(fmt::format("OutcomeDistribution: probabilities sum to {:.17g}", total));
  }
}

double OutcomeDistribution::probability(double label) const {
  for (const auto& o : outcomes_) {
    if (o.label == label) return o.probability;
  }
  return 0.0;
}

double OutcomeDistribution::mean() const {
  double m = 0.0;
  for (const auto& o : outcomes_) m += o.label * o.probability;
  return m;
}

double FrequencyRecord::frequency(double label) const {
  if (trials == 0) return 0.0;
  auto it = counts.find(label);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
}

BigInt binomial_coefficient(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;  // exact: c is C(n - k + i, i) after this step
  }
  return c;
}

Rational binomial_pmf_exact(unsigned n, unsigned trials, const Rational& p) {
  if (n > trials) {
    throw DomainError(fmt::format("binomial_pmf: n = {} outside [0, {}]", n, trials));
  }
  if (p < 0 || p > 1) throw DomainError("binomial_pmf: p must lie in [0, 1]");
  return Rational(binomial_coefficient(trials, n)) * pow(p, n) * pow(Rational(1) - p, trials - n);
}

double binomial_pmf(unsigned n, unsigned trials, const Rational& p) {
  return binomial_pmf_exact(n, trials, p).convert_to<double>();
}

OutcomeDistribution state_distribution(const StateVector& state, const Observable& obs) {
  if (state.dim() != obs.dim()) {
    throw DimensionError(
        fmt::format("state_distribution: dimension mismatch ({} vs {})", state.dim(), obs.dim()));
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(obs.spectrum().size());
  for (const auto& term : obs.spectrum()) {
    outcomes.push_back({term.eigenvalue, born_probability(state, term.projector)});
  }
  return OutcomeDistribution(std::move(outcomes));
}

FrequencyRecord sample_frequencies(const OutcomeDistribution& dist, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw DomainError("sample_frequencies: trials must be at least 1");
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const auto& o : dist.outcomes()) weights.push_back(o.probability);
  std::vector<std::uint64_t> counts(dist.size(), 0);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) ++counts[rng.categorical(weights)];

  FrequencyRecord record{trials, {}, seed, std::string(Rng::kAlgorithm)};
  for (std::size_t i = 0; i < dist.size(); ++i) {
    record.counts[dist.outcomes()[i].label] = counts[i];
  }
  return record;
}

ProductDistribution::ProductDistribution(OutcomeDistribution first, OutcomeDistribution second)
    : first_(std::move(first)), second_(std::move(second)) {
  outcomes_.reserve(first_.size() * second_.size());
  for (const auto& a : first_.outcomes()) {
    for (const auto& b : second_.outcomes()) {
      outcomes_.push_back({a.label, b.label, a.probability * b.probability});
    }
  }
}

double ProductDistribution::probability(double first, double second) const {
  return first_.probability(first) * second_.probability(second);
}

ProductDistribution independent_product(const OutcomeDistribution& a,
                                         const OutcomeDistribution& b) {
  return ProductDistribution(a, b);
}

}  // namespace qcat
