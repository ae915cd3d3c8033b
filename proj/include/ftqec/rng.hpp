#pragma once

#include <cmath>
#include <cstdint>

namespace ftqec {

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream for one shot.
///
/// Draw k of shot s under seed S is a pure function of (S, s, k), so results do
/// not depend on how shots are distributed over worker threads.
class ShotRng {
 public:
  ShotRng(uint64_t seed, uint64_t shot) : key_(splitmix64(seed ^ splitmix64(shot + 0x632BE59BD9B4E019ULL))) {}

  uint64_t next_u64() { return splitmix64(key_ + 0xD1B54A32D192ED03ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>((next_u64() >> 32) * static_cast<uint64_t>(n) >> 32); }

  /// Number of failures before the next success of a Bernoulli(p) sequence.
  /// Used to skip over idle qubits without one draw per qubit.
  uint64_t geometric_skip(double p) {
    if (p >= 1.0) return 0;
    const double u = 1.0 - uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / std::log1p(-p));
    return skip > 1e18 ? ~uint64_t{0} : static_cast<uint64_t>(skip);
  }

  uint64_t draws() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace ftqec
