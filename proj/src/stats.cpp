#include "ftqec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace ftqec {

uint64_t FidelityEstimate::successes() const {
  return static_cast<uint64_t>(std::llround(p_hat * static_cast<double>(n_kept)));
}

double FidelityEstimate::discard_fraction() const {
  const uint64_t total = n_kept + n_discarded;
  return total == 0 ? 0.0 : static_cast<double>(n_discarded) / static_cast<double>(total);
}

double logical_fidelity(uint64_t successes, uint64_t kept) {
  if (kept == 0) throw std::domain_error("fidelity is undefined without kept shots");
  if (successes > kept) throw std::invalid_argument("more successes than kept shots");
  return static_cast<double>(successes) / static_cast<double>(kept);
}

std::pair<double, double> wilson_bounds(double p, uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("Wilson bounds need N >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double N = static_cast<double>(n);
  const double z2 = z * z;
  const double center = p + z2 / (2.0 * N);
  const double spread = z * std::sqrt(p * (1.0 - p) / N + z2 / (4.0 * N * N));
  const double denom = 1.0 + z2 / N;
  const double low = std::clamp((center - spread) / denom, 0.0, 1.0);
  const double high = std::clamp((center + spread) / denom, 0.0, 1.0);
  return {std::min(low, p), std::max(high, p)};
}

FidelityEstimate estimate_fidelity(uint64_t successes, uint64_t kept, uint64_t discarded, double z) {
  FidelityEstimate e;
  e.p_hat = logical_fidelity(successes, kept);
  e.n_kept = kept;
  e.n_discarded = discarded;
  e.z = z;
  std::tie(e.wilson_low, e.wilson_high) = wilson_bounds(e.p_hat, kept, z);
  return e;
}

}  // namespace ftqec
