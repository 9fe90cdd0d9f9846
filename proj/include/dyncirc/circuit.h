// Copyright 2026 The dyncirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNCIRC_CIRCUIT_H
#define DYNCIRC_CIRCUIT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dyncirc {

enum class Op : uint8_t {
  H, S, SDG, X, Y, Z, T, TDG,
  CNOT, CCZ,
  MEASURE,     // Z basis, writes `record`
  RESET,       // to |0>
  COND_PAULI,  // `pauli` on qubits[0] iff XOR of `parity` records is 1
  NOISE,       // Pauli-Lindblad term: `noise` letters on `qubits`, rate `rate`
  BARRIER,
};

std::string_view op_name(Op op);
Op op_from_name(std::string_view name);
bool is_unitary_gate(Op op);
bool is_clifford_gate(Op op);
size_t gate_arity(Op op);

struct Instruction {
  Op op;
  std::vector<uint32_t> qubits;
  uint32_t record = 0;
  char pauli = 'I';
  std::vector<uint32_t> parity;
  std::string noise;
  double rate = 0;
  // Earliest start time; builders use it to pin a fixed layering.
  double not_before = 0;
  // Filled in by Circuit::schedule(). start < 0 means unscheduled.
  double start = -1;
  double duration = 0;
};

/// Budget counts. Times are in CNOT-gate units.
struct InstructionTally {
  double t_idle = 0;
  size_t n_cnot = 0;
  size_t n_meas = 0;
  double depth = 0;
  size_t n_feed_forward = 0;
  size_t feed_forward_steps = 0;
};

struct IdleInterval {
  uint32_t qubit;
  double start;
  double duration;
  // Index of the instruction that ends the gap, or SIZE_MAX for the tail.
  size_t before;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(uint32_t num_qubits, std::string name = "");

  uint32_t num_qubits = 0;
  uint32_t num_records = 0;
  std::string name;
  std::vector<Instruction> instructions;
  // Data qubits in, data qubits out (same order); output k carries input k.
  std::vector<uint32_t> inputs;
  std::vector<uint32_t> outputs;
  // Qubits that hold unrelated, nonzero states throughout (variant II).
  std::vector<uint32_t> spectators;
  // Duration of a measurement + feed-forward block.
  double mu = 0;
  // false: conditional Paulis go into a Pauli frame (post-processing).
  bool feed_forward = true;

  void gate(Op op, std::vector<uint32_t> qubits, double not_before = 0);
  void h(uint32_t q, double not_before = 0) { gate(Op::H, {q}, not_before); }
  void cnot(uint32_t c, uint32_t t, double not_before = 0) { gate(Op::CNOT, {c, t}, not_before); }
  uint32_t measure(uint32_t q);
  void reset(uint32_t q);
  void conditional(char pauli, uint32_t q, std::vector<uint32_t> parity);
  void noise(std::string paulis, std::vector<uint32_t> qubits, double rate);
  void barrier(std::vector<uint32_t> qubits = {});

  /// Throws std::invalid_argument / SequencingError on malformed content.
  void validate() const;
  /// ASAP schedule honoring not_before; conditionals wait on their records.
  void schedule();
  bool scheduled() const;
  double makespan() const;

  nlohmann::json to_json() const;
  static Circuit from_json(const nlohmann::json &j);
};

/// Intervals in which a qubit is neither operated on nor known to be |0>.
/// Trailing intervals only count for output qubits.
std::vector<IdleInterval> idle_intervals(const Circuit &c);
InstructionTally tally(const Circuit &c);

void to_json(nlohmann::json &j, const InstructionTally &t);

}  // namespace dyncirc

#endif
