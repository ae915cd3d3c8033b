#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <complex>
#include <set>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ftqec/engine.hpp"

namespace ftqec::testing {


using Amp = std::complex<double>;
using State = std::vector<Amp>;

// Brute-force statevector simulator: enumerates every measurement branch and
// returns the exact distribution over the full record vector.
class DenseOracle {
 public:
  explicit DenseOracle(const Circuit& c) : c_(c), block_end_(c.instructions().size(), 0) {
    std::vector<size_t> open;
    for (size_t i = 0; i < c.instructions().size(); ++i) {
      if (c.instructions()[i].kind == OpKind::if_begin) open.push_back(i);
      if (c.instructions()[i].kind == OpKind::if_end) {
        block_end_[open.back()] = i;
        open.pop_back();
      }
    }
  }

  std::map<std::vector<int8_t>, double> distribution() {
    State psi(size_t{1} << c_.num_qubits(), 0.0);
    psi[0] = 1.0;
    std::vector<int8_t> records(c_.records().size(), kRecordAbsent);
    dist_.clear();
    run(0, psi, records, 1.0);
    return dist_;
  }

 private:
  void h(State& s, int q) {
    const size_t bit = size_t{1} << q;
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < s.size(); ++i) {
      if (i & bit) continue;
      const Amp a = s[i], b = s[i | bit];
      s[i] = r * (a + b);
      s[i | bit] = r * (a - b);
    }
  }
  void x(State& s, int q) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < s.size(); ++i)
      if (!(i & bit)) std::swap(s[i], s[i | bit]);
  }
  void z(State& s, int q) {
    for (size_t i = 0; i < s.size(); ++i)
      if ((i >> q) & 1) s[i] = -s[i];
  }
  void cx(State& s, int c, int t) {
    const size_t cb = size_t{1} << c, tb = size_t{1} << t;
    for (size_t i = 0; i < s.size(); ++i)
      if ((i & cb) && !(i & tb)) std::swap(s[i], s[i | tb]);
  }
  double prob_one(const State& s, int q) {
    double p = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if ((i >> q) & 1) p += std::norm(s[i]);
    return p;
  }
  State project(const State& s, int q, int outcome, double p) {
    State out(s.size(), 0.0);
    const double norm = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < s.size(); ++i)
      if (static_cast<int>((i >> q) & 1) == outcome) out[i] = s[i] * norm;
    return out;
  }

  void run(size_t i, State psi, std::vector<int8_t> records, double weight) {
    const auto& ins = c_.instructions();
    for (; i < ins.size(); ++i) {
      const Instruction& in = ins[i];
      const int q = in.qubits[0];
      switch (in.kind) {
        case OpKind::hadamard: h(psi, q); break;
        case OpKind::pauli_x: x(psi, q); break;
        case OpKind::pauli_z: z(psi, q); break;
        case OpKind::pauli_y:
          z(psi, q);
          x(psi, q);
          break;
        case OpKind::cnot: cx(psi, q, in.qubits[1]); break;
        case OpKind::mid_circuit:
        case OpKind::if_end: break;
        case OpKind::if_begin:
          if (!any_record_set(c_, in.index, records)) i = block_end_[i];
          break;
        case OpKind::prepare_0:
        case OpKind::reset:
        case OpKind::measure_z:
        case OpKind::measure_x: {
          const bool xb = in.kind == OpKind::measure_x;
          if (xb) h(psi, q);
          const double p1 = prob_one(psi, q);
          for (int outcome : {0, 1}) {
            const double p = outcome ? p1 : 1.0 - p1;
            if (p < 1e-12) continue;
            State next = project(psi, q, outcome, p);
            auto rec = records;
            if (in.kind == OpKind::measure_z || xb) {
              if (xb) h(next, q);
              rec[in.index] = static_cast<int8_t>(outcome);
            } else if (outcome) {
              x(next, q);
            }
            run(i + 1, next, rec, weight * p);
          }
          return;
        }
      }
    }
    dist_[records] += weight;
  }

  const Circuit& c_;
  std::vector<size_t> block_end_;
  std::map<std::vector<int8_t>, double> dist_;
};

inline Circuit random_circuit(std::mt19937_64& rng, int n, int gates, int max_meas) {
  Circuit c(n);
  int meas = 0;
  std::uniform_int_distribution<int> qd(0, n - 1);
  for (int g = 0; g < gates; ++g) {
    const int kind = static_cast<int>(rng() % 10);
    const int a = qd(rng);
    int b = qd(rng);
    while (b == a) b = qd(rng);
    if (kind < 3) c.h(a);
    else if (kind < 6) c.cx(a, b);
    else if (kind == 6) c.x(a);
    else if (kind == 7) c.z(a);
    else if (kind == 8) c.y(a);
    else if (meas < max_meas - n) {
      if (rng() & 1) c.measure_z(a, "m" + std::to_string(meas++));
      else c.measure_x(a, "m" + std::to_string(meas++));
      if (rng() % 3 == 0) c.reset(a);
    }
  }
  for (int q = 0; q < n; ++q) {
    if (rng() % 3 == 0) c.measure_x(q, "f" + std::to_string(q));
    else c.measure_z(q, "f" + std::to_string(q));
  }
  return c;
}

inline std::vector<std::pair<std::string, Circuit>> oracle_corpus() {
  std::vector<std::pair<std::string, Circuit>> out;
  {
    Circuit c(2);
    c.h(0);
    c.cx(0, 1);
    c.measure_z(0, "a");
    c.measure_z(1, "b");
    out.emplace_back("bell", c);
  }
  {
    Circuit c(3);
    c.h(0);
    c.cx(0, 1);
    c.cx(1, 2);
    for (int q = 0; q < 3; ++q) c.measure_z(q, "g" + std::to_string(q));
    out.emplace_back("ghz3", c);
  }
  {
    Circuit c(3);
    c.h(0);
    c.cx(0, 1);
    c.cx(0, 2);
    for (int q = 0; q < 3; ++q) c.measure_x(q, "g" + std::to_string(q));
    out.emplace_back("ghz3_x", c);
  }
  {
    // Teleport |1> from qubit 0 to qubit 2 with feed-forward corrections.
    Circuit c(3);
    c.x(0);
    c.h(1);
    c.cx(1, 2);
    c.cx(0, 1);
    c.h(0);
    const int m0 = c.measure_z(0, "m0");
    const int m1 = c.measure_z(1, "m1");
    c.begin_if(c.add_predicate({"x_fix", 0, {m1}}));
    c.x(2);
    c.end_if();
    c.begin_if(c.add_predicate({"z_fix", 0, {m0}}));
    c.z(2);
    c.end_if();
    c.measure_z(2, "out");
    out.emplace_back("teleport", c);
  }
  {
    Circuit c(2);
    c.h(0);
    c.measure_z(0, "r");
    c.reset(0);
    c.measure_z(0, "after_reset");
    c.x(1);
    c.measure_x(1, "minus");
    c.measure_z(1, "z_after_x");
    out.emplace_back("reset_and_bases", c);
  }
  {
    // Parity check onto an ancilla, ancilla reused.
    Circuit c(4);
    c.h(0);
    c.cx(0, 1);
    c.cx(0, 2);
    c.cx(1, 3);
    c.cx(2, 3);
    c.measure_z(3, "p1");
    c.reset(3);
    c.cx(0, 3);
    c.cx(1, 3);
    c.measure_z(3, "p2");
    for (int q = 0; q < 3; ++q) c.measure_x(q, "d" + std::to_string(q));
    out.emplace_back("parity_reuse", c);
  }
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 4;
    out.emplace_back("random" + std::to_string(k), random_circuit(rng, n, 12 + 2 * k, n + 3));
  }
  return out;
}


struct OracleComparison {
  bool ok = true;
  std::string message;
  double p_value = 1.0;
};

// Runs `shots` noiseless shots and compares them with the exact distribution:
// no forbidden outcomes, deterministic records equal, chi-square p > 0.01.
inline OracleComparison compare_with_oracle(const Circuit& circuit, uint64_t shots, uint64_t seed, int workers) {
  OracleComparison out;
  const auto exact = DenseOracle(circuit).distribution();
  std::map<std::vector<int8_t>, uint64_t> observed;
  for (const auto& o : run_many(circuit, NoiseModel::noiseless(), shots, seed, workers)) ++observed[o.records];
  for (const auto& [rec, count] : observed) {
    if (!exact.count(rec)) {
      out.ok = false;
      out.message = "engine produced an outcome the oracle forbids";
      return out;
    }
  }
  for (size_t r = 0; r < circuit.records().size(); ++r) {
    std::set<int8_t> values;
    for (const auto& [rec, p] : exact) values.insert(rec[r]);
    if (values.size() != 1) continue;
    for (const auto& [rec, count] : observed) {
      if (rec[r] != *values.begin()) {
        out.ok = false;
        out.message = "deterministic record " + std::to_string(r) + " differs";
        return out;
      }
    }
  }
  if (exact.size() > 1) {
    double chi2 = 0;
    for (const auto& [rec, p] : exact) {
      const double expected = p * static_cast<double>(shots);
      const double seen = observed.count(rec) ? static_cast<double>(observed.at(rec)) : 0.0;
      chi2 += (seen - expected) * (seen - expected) / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(exact.size() - 1));
    out.p_value = boost::math::cdf(boost::math::complement(dist, chi2));
    if (out.p_value <= 0.01) {
      out.ok = false;
      out.message = "chi-square p = " + std::to_string(out.p_value) + " over " + std::to_string(exact.size()) + " outcomes";
    }
  }
  return out;
}

}  // namespace ftqec::testing
