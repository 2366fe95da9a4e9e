#include "qcatalog/rng.hpp"

#include <cmath>
#include <numeric>

#include "qcatalog/errors.hpp"

namespace qcat {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw DomainError("Rng::index: empty range");
  auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

std::size_t Rng::categorical(std::span<const double> weights) {
  if (weights.empty()) throw DomainError("Rng::categorical: no outcomes");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("Rng::categorical: weights must have a positive finite sum");
  }
  const double u = uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw DomainError("Rng::categorical: negative weight");
    if (weights[i] == 0.0) continue;
    last_positive = i;
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  // Rounding in the running sum can leave u just above the final total.
  return last_positive;
}

}  // namespace qcat
