#include "ftqec/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ftqec/rng.hpp"
#include "ftqec/tableau.hpp"

namespace ftqec {

bool any_record_set(const Circuit& circuit, int predicate, const std::vector<int8_t>& records) {
  for (int r : circuit.predicates().at(predicate).records) {
    if (records.at(r) == kRecordAbsent) {
      throw std::runtime_error("predicate '" + circuit.predicates()[predicate].label + "' reads missing record " +
                               std::to_string(r));
    }
    if (records[r] == 1) return true;
  }
  return false;
}

namespace {

uint64_t operand_mask(const Instruction& in) {
  uint64_t m = 0;
  for (int q : in.qubits) {
    if (q >= 0) m |= uint64_t{1} << q;
  }
  return m;
}

struct PrepBlock {
  size_t start = 0;
  uint64_t qubits = 0;
};

// Walks back from a verification measurement to the preparations of every
// qubit it depends on.
PrepBlock find_prep_block(const Circuit& c, size_t verify) {
  const auto& ins = c.instructions();
  PrepBlock b;
  b.qubits = operand_mask(ins[verify]);
  uint64_t open = b.qubits;
  for (size_t j = verify; j-- > 0;) {
    const Instruction& in = ins[j];
    if (in.kind == OpKind::if_begin || in.kind == OpKind::if_end || in.kind == OpKind::mid_circuit) continue;
    const uint64_t ops = operand_mask(in);
    if (!(ops & open)) continue;
    if (in.kind == OpKind::prepare_0 || in.kind == OpKind::reset) {
      open &= ~ops;
    } else if (in.kind == OpKind::measure_z || in.kind == OpKind::measure_x) {
      throw std::logic_error("verified block at instruction " + std::to_string(verify) +
                             " reuses a qubit measured before it was prepared again");
    } else {
      open |= ops & ~b.qubits;
      b.qubits |= ops;
    }
    if (!open) {
      b.start = j;
      for (size_t k = j; k < verify; ++k) {
        if ((ins[k].kind == OpKind::if_begin || ins[k].kind == OpKind::if_end)) {
          throw std::logic_error("verified block contains a conditional block");
        }
      }
      return b;
    }
  }
  throw std::logic_error("verified block at instruction " + std::to_string(verify) + " has unprepared qubits");
}

struct Program {
  const Circuit& circuit;
  std::vector<size_t> block_end;  // for if_begin: index of the matching if_end
  uint64_t all_qubits;
  std::vector<PrepBlock> prep;  // for verification measurements

  Program(const Circuit& c, bool with_prep_blocks) : circuit(c), block_end(c.instructions().size(), 0) {
    all_qubits = low_mask(c.num_qubits());
    std::vector<size_t> open;
    const auto& ins = c.instructions();
    for (size_t i = 0; i < ins.size(); ++i) {
      if (ins[i].kind == OpKind::if_begin) open.push_back(i);
      if (ins[i].kind == OpKind::if_end) {
        if (open.empty()) throw std::logic_error("END_IF without IF");
        block_end[open.back()] = i;
        open.pop_back();
      }
    }
    if (!open.empty()) throw std::logic_error("unterminated conditional block");
    if (!with_prep_blocks) return;
    prep.resize(ins.size());
    for (size_t i = 0; i < ins.size(); ++i) {
      if ((ins[i].kind == OpKind::measure_z || ins[i].kind == OpKind::measure_x) &&
          c.records().at(ins[i].index).discard_on_one != DiscardReason::none) {
        prep[i] = find_prep_block(c, i);
      }
    }
  }
};

void apply_faults(Tableau& t, const std::vector<InjectedFault>& faults, size_t i) {
  for (const auto& f : faults) {
    if (f.instruction == i) t.apply_pauli(f.pauli.x_mask(), f.pauli.z_mask());
  }
}

ShotOutcome execute(const Program& prog, const NoiseModel& model, uint64_t seed, uint64_t shot,
                    const RunOptions& options) {
  const Circuit& c = prog.circuit;
  const auto& ins = c.instructions();
  ShotOutcome out;
  out.records.assign(c.records().size(), kRecordAbsent);
  Tableau t(c.num_qubits());
  ShotRng rng(seed, shot);
  auto random_bit = [&rng] { return (rng.next_u64() >> 63) != 0; };
  const bool injected = !options.faults.empty();
  bool in_mid_block = false;
  // Replay of a verified preparation: only instructions on `replay_qubits`
  // up to `replay_end` run.
  size_t replay_end = 0;
  uint64_t replay_qubits = 0;
  std::vector<int> attempts;
  if (options.max_prep_attempts > 1) attempts.assign(ins.size(), 1);

  auto spam_idle = [&](int q) {
    if (model.spam_idle_us > 0.0 && !in_mid_block) {
      const uint64_t z = sample_idle_mask(prog.all_qubits & ~(uint64_t{1} << q), model.spam_idle_us, model, rng);
      if (z) t.apply_pauli(0, z);
    }
  };

  for (size_t i = 0; i < ins.size(); ++i) {
    const Instruction& in = ins[i];
    if (replay_qubits) {
      if (i > replay_end) {
        replay_qubits = 0;
      } else if (in.kind == OpKind::mid_circuit || !(operand_mask(in) & replay_qubits)) {
        continue;
      }
    }
    const int q = in.qubits[0];
    switch (in.kind) {
      case OpKind::prepare_0:
      case OpKind::reset: {
        if (t.measure_z(q, random_bit)) t.x(q);
        if (sample_spam_fault(SpamKind::prepare, model, rng)) t.x(q);
        spam_idle(q);
        break;
      }
      case OpKind::hadamard:
      case OpKind::pauli_x:
      case OpKind::pauli_y:
      case OpKind::pauli_z:
      case OpKind::cnot: {
        in_mid_block = false;
        if (in.kind == OpKind::hadamard) t.h(q);
        else if (in.kind == OpKind::pauli_x) t.x(q);
        else if (in.kind == OpKind::pauli_y) t.y(q);
        else if (in.kind == OpKind::pauli_z) t.z(q);
        else t.cx(q, in.qubits[1]);
        if (auto f = sample_gate_fault(in.kind, model, rng)) {
          const uint64_t fx = f->x_mask(), fz = f->z_mask();
          uint64_t x = 0, z = 0;
          for (int k = 0; k < f->num_qubits(); ++k) {
            x |= ((fx >> k) & 1) << in.qubits[k];
            z |= ((fz >> k) & 1) << in.qubits[k];
          }
          t.apply_pauli(x, z);
        }
        if (const uint64_t z = sample_idle_faults(in, c.num_qubits(), model, rng)) t.apply_pauli(0, z);
        break;
      }
      case OpKind::measure_z:
      case OpKind::measure_x: {
        if (injected) apply_faults(t, options.faults, i);
        const bool x_basis = in.kind == OpKind::measure_x;
        if (x_basis) t.h(q);
        if (sample_spam_fault(SpamKind::measure, model, rng)) t.x(q);
        const int bit = t.measure_z(q, random_bit);
        if (x_basis) t.h(q);
        out.records[in.index] = static_cast<int8_t>(bit);
        spam_idle(q);
        const DiscardReason reason = c.records()[in.index].discard_on_one;
        if (bit && reason != DiscardReason::none) {
          if (!attempts.empty() && attempts[i] < options.max_prep_attempts) {
            ++attempts[i];
            replay_end = i;
            replay_qubits = prog.prep[i].qubits;
            i = prog.prep[i].start - 1;
            continue;
          }
          out.discarded = true;
          out.reason = reason;
          return out;
        }
        continue;
      }
      case OpKind::mid_circuit: {
        in_mid_block = true;
        const PauliString f = sample_mid_circuit_faults(in.mask, c.num_qubits(), model, rng);
        if (!f.is_identity()) t.apply_pauli(f.x_mask(), f.z_mask());
        break;
      }
      case OpKind::if_begin: {
        const bool take = options.evaluator ? options.evaluator(c, in.index, out.records)
                                            : any_record_set(c, in.index, out.records);
        out.executed_path.push_back(take ? 1 : 0);
        if (!take) i = prog.block_end[i];
        continue;
      }
      case OpKind::if_end:
        continue;
    }
    if (injected) apply_faults(t, options.faults, i);
  }
  return out;
}

}  // namespace

ShotOutcome run_shot(const Circuit& circuit, const NoiseModel& model, uint64_t seed, uint64_t shot,
                     const RunOptions& options) {
  if (options.max_prep_attempts < 1) throw std::invalid_argument("max_prep_attempts must be >= 1");
  const Program prog(circuit, options.max_prep_attempts > 1);
  return execute(prog, model, seed, shot, options);
}

void for_each_shot(const Circuit& circuit, const NoiseModel& model, uint64_t shots, uint64_t seed, int workers,
                   const RunOptions& options, const std::function<void(uint64_t, const ShotOutcome&)>& fn,
                   uint64_t first_shot) {
  if (options.max_prep_attempts < 1) throw std::invalid_argument("max_prep_attempts must be >= 1");
  const Program prog(circuit, options.max_prep_attempts > 1);
  const uint64_t w = std::clamp<uint64_t>(workers < 1 ? 1 : workers, 1, std::max<uint64_t>(shots, 1));
  auto work = [&](uint64_t begin, uint64_t end) {
    for (uint64_t s = begin; s < end; ++s) fn(s - first_shot, execute(prog, model, seed, s, options));
  };
  if (w == 1) {
    work(first_shot, first_shot + shots);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (uint64_t k = 0; k < w; ++k) {
    const uint64_t begin = first_shot + shots * k / w;
    const uint64_t end = first_shot + shots * (k + 1) / w;
    threads.emplace_back([&, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ShotOutcome> run_many(const Circuit& circuit, const NoiseModel& model, uint64_t shots, uint64_t seed,
                                  int workers, const RunOptions& options, uint64_t first_shot) {
  if (shots == 0) throw std::invalid_argument("run_many needs at least one shot");
  std::vector<ShotOutcome> out(shots);
  for_each_shot(circuit, model, shots, seed, workers, options,
                [&](uint64_t i, const ShotOutcome& o) { out[i] = o; }, first_shot);
  return out;
}

int default_workers() {
  if (const char* env = std::getenv("FTQEC_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace ftqec
