#pragma once

#include <cstdint>
#include <utility>

namespace ftqec {

struct FidelityEstimate {
  double p_hat = 0.0;
  uint64_t n_kept = 0;
  uint64_t n_discarded = 0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double z = 1.0;

  uint64_t successes() const;
  double discard_fraction() const;
};

/// Success fraction; throws std::domain_error when nothing was kept.
double logical_fidelity(uint64_t successes, uint64_t kept);

/// Wilson score interval for an observed success fraction `p` out of `n` trials.
std::pair<double, double> wilson_bounds(double p, uint64_t n, double z = 1.0);

FidelityEstimate estimate_fidelity(uint64_t successes, uint64_t kept, uint64_t discarded, double z = 1.0);

}  // namespace ftqec
