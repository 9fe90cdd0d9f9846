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

#ifndef DYNCIRC_SIMULATOR_H
#define DYNCIRC_SIMULATOR_H

#include <optional>
#include <random>
#include <vector>

#include "dyncirc/circuit.h"
#include "dyncirc/pauli.h"
#include "dyncirc/tableau.h"
#include "json.hpp"

namespace dyncirc {

struct InjectedError {
  size_t instruction;
  double time;
  PauliString pauli;  // over the whole register
};

struct ShotResult {
  std::vector<uint8_t> classical_bits;
  std::optional<PauliString> pauli_frame;
  std::vector<InjectedError> sampled_errors;
};

void to_json(nlohmann::json &j, const ShotResult &r);

struct RunOptions {
  bool noisy = true;
  // 0 = OpenMP default.
  int threads = 0;
};

/// Probability that a Pauli-Lindblad term of rate lambda fires.
double fire_probability(double lambda);

/// Applies a Pauli-Lindblad term: with probability omega(lambda), p.
/// Returns whether it fired.
bool inject_pauli_noise(StabilizerState &state, const PauliString &p, double lambda,
                        std::mt19937_64 &rng);

/// One shot in progress. The state may have more qubits than the circuit
/// (extra qubits serve as references); circuit qubit i is state qubit i.
class Shot {
 public:
  Shot(size_t total_qubits, const Circuit &c);

  StabilizerState state;
  // Present in post-processing mode. Corrections that were not applied.
  std::optional<PauliString> frame;
  std::vector<InjectedError> errors;

  /// Runs every instruction of c (which must be the circuit passed above or
  /// share its record layout).
  void run(const Circuit &c, std::mt19937_64 &rng, const RunOptions &opt = {});

  // Gate helpers that keep the frame consistent.
  void apply(Op op, const std::vector<uint32_t> &qubits);
  /// Z measurement corrected by the frame.
  bool measure(uint32_t q, std::mt19937_64 &rng);
  /// <P> on the frame-corrected state: +1, -1 or 0.
  int expectation(const PauliString &p) const;

  ShotResult result() const;
};

ShotResult run_shot(const Circuit &c, std::mt19937_64 &rng, const RunOptions &opt = {});

/// Shot i uses stream_rng(master_seed, i). OpenMP over shots.
std::vector<ShotResult> run_shots(const Circuit &c, size_t shots, uint64_t master_seed,
                                  const RunOptions &opt = {});
/// Reference loop, one shot after another.
std::vector<ShotResult> run_shots_serial(const Circuit &c, size_t shots, uint64_t master_seed,
                                         const RunOptions &opt = {});

}  // namespace dyncirc

#endif
