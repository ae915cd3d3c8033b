#include <chrono>
#include <cstdlib>
#include <iostream>

#include "ftqec/builders.hpp"
#include "ftqec/engine.hpp"
#include "ftqec/protocol.hpp"

using namespace ftqec;

int main(int argc, char** argv) {
  const uint64_t shots = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : 1;
  const Circuit circuit = compose_experiment({CodeKind::color, 3, Protocol::steane_full, LogicalState::zero_L, 3, {}});
  const Decoder decoder(CodeKind::color, 3);
  const RunOptions options = protocol_run_options(circuit, decoder);
  const NoiseModel noise = NoiseModel::paper_default();

  uint64_t kept = 0, ok = 0;
  const auto start = std::chrono::steady_clock::now();
  for_each_shot(circuit, noise, shots, 1, workers, options, [&](uint64_t, const ShotOutcome& o) {
    const ShotVerdict v = decoder.decode(circuit, o, LogicalState::zero_L);
    if (!v.discarded) {
      ++kept;
      ok += v.success;
    }
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double rate = static_cast<double>(shots) / secs;
  std::cout << "color steane_full, 3 rounds, " << circuit.num_qubits() << " qubits, "
            << circuit.instructions().size() << " instructions\n";
  std::cout << shots << " shots on " << workers << " worker(s) in " << secs << " s: " << rate << " shots/s\n";
  std::cout << "kept " << kept << ", fidelity " << (kept ? static_cast<double>(ok) / kept : 0.0) << "\n";
  return rate >= 1e3 ? 0 : 1;
}
