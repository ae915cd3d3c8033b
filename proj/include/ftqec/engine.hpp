#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ftqec/circuit.hpp"
#include "ftqec/noise.hpp"
#include "ftqec/pauli.hpp"

namespace ftqec {

/// Record value for a measurement that never ran in this shot.
inline constexpr int8_t kRecordAbsent = -1;

struct ShotOutcome {
  std::vector<int8_t> records;
  bool discarded = false;
  DiscardReason reason = DiscardReason::none;
  /// One entry per conditional block reached: 1 when its body ran.
  std::vector<uint8_t> executed_path;

  int8_t record(int id) const { return records.at(id); }
};

/// Decides a conditional block from the records written so far.
using PredicateEvaluator =
    std::function<bool(const Circuit& circuit, int predicate, const std::vector<int8_t>& records)>;

/// Default reading of a predicate: some listed record is 1.
bool any_record_set(const Circuit& circuit, int predicate, const std::vector<int8_t>& records);

/// A Pauli forced onto the register at one instruction: after gates,
/// preparations, resets and mid-circuit markers, before measurements.
struct InjectedFault {
  size_t instruction = 0;
  PauliString pauli;
};

struct RunOptions {
  PredicateEvaluator evaluator;
  std::vector<InjectedFault> faults;
  /// Attempts per verified preparation. Above 1, a firing verification record
  /// replays the instructions that prepared its block instead of discarding.
  int max_prep_attempts = 1;
};

/// Executes `circuit` once. Randomness comes from (seed, shot) only.
ShotOutcome run_shot(const Circuit& circuit, const NoiseModel& model, uint64_t seed, uint64_t shot,
                     const RunOptions& options = {});

/// Shots `first_shot .. first_shot + shots - 1`, returned in shot order. The
/// result does not depend on `workers`.
std::vector<ShotOutcome> run_many(const Circuit& circuit, const NoiseModel& model, uint64_t shots, uint64_t seed,
                                  int workers, const RunOptions& options = {}, uint64_t first_shot = 0);

/// Calls `fn(i, outcome)` for every shot, in parallel over `workers` threads;
/// each worker owns a contiguous block of shot indices.
void for_each_shot(const Circuit& circuit, const NoiseModel& model, uint64_t shots, uint64_t seed, int workers,
                   const RunOptions& options, const std::function<void(uint64_t, const ShotOutcome&)>& fn,
                   uint64_t first_shot = 0);

/// Worker count from FTQEC_WORKERS, else the hardware concurrency.
int default_workers();

}  // namespace ftqec
