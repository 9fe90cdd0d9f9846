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

#ifndef DYNCIRC_CERTIFY_H
#define DYNCIRC_CERTIFY_H

#include <array>
#include <cstdint>
#include <vector>

#include "dyncirc/circuit.h"
#include "dyncirc/pauli.h"
#include "json.hpp"

namespace dyncirc {

/// Per-sample precision 0.1 with |rho| = 1 needs about 0.1^-2 shots.
constexpr size_t kDefaultShotsPerSample = 100;

/// The 2^n stabilizers of GHZ_n (n >= 2), generated by X..X and Z_{i}Z_{i+1}.
class GhzStabilizerGroup {
 public:
  explicit GhzStabilizerGroup(size_t n);
  size_t num_qubits() const { return n_; }
  /// Generator g_0 = X^n, g_i = Z_{i-1} Z_i.
  const PauliString &generator(size_t i) const { return gens_.at(i); }
  /// Product of the generators selected by mask bits (bit i -> g_i).
  PauliString at(const std::vector<bool> &mask) const;
  /// Same, for n <= 64.
  PauliString at(uint64_t mask) const;

 private:
  size_t n_;
  std::vector<PauliString> gens_;
};

GhzStabilizerGroup ghz_stabilizer_group(size_t n);

struct StabilizerSample {
  size_t sample_index;
  PauliString stabilizer;
  double measured_expectation;
  size_t shots_used;
};

struct SupportTuple {
  char pi, pj, pk, pl;
  int rho;
};

struct ProcessSample {
  size_t sample_index;
  SupportTuple tuple;
  double measured_value;  // divided by rho (the JSON form is raw)
  size_t shots_used;
};

struct CertifyOptions {
  size_t m_samples = 64;
  size_t shots_per_sample = kDefaultShotsPerSample;
  uint64_t seed = 1;
  int threads = 0;
  bool noisy = true;
};

struct GhzEstimate {
  double fidelity;
  double std_err;
  std::vector<StabilizerSample> samples;
};

struct CnotEstimate {
  double process_fidelity;
  double gate_fidelity;
  double std_err;  // of gate_fidelity
  std::vector<ProcessSample> samples;
};

/// `source` prepares the state on its outputs (in order). Raw estimate,
/// never clipped.
GhzEstimate estimate_ghz_fidelity(const Circuit &source, size_t n, const CertifyOptions &opt);

/// The 16 (P_i, P_j, P_k, P_l) with nonzero rho for CNOT (control first).
std::array<SupportTuple, 16> cnot_process_support();

/// `channel` acts on inputs (control, target) -> outputs, its input qubits
/// start in |0>. Raw estimate, never clipped.
CnotEstimate estimate_cnot_gate_fidelity(const Circuit &channel, const CertifyOptions &opt);

void to_json(nlohmann::json &j, const StabilizerSample &s);
void to_json(nlohmann::json &j, const ProcessSample &s);

}  // namespace dyncirc

#endif
