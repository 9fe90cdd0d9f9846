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

#ifndef DYNCIRC_EXPERIMENTS_H
#define DYNCIRC_EXPERIMENTS_H

#include <cstdint>
#include <string>
#include <vector>

#include "dyncirc/circuit.h"
#include "dyncirc/noise.h"
#include "dyncirc/pauli.h"
#include "json.hpp"

namespace dyncirc {

struct ExperimentConfig {
  // "cnot" or "ghz".
  std::string family = "cnot";
  // cnot: dynamic, Ia, Ib, Ic, II. ghz: dynamic, unitary.
  std::vector<std::string> variants;
  int n_min = 2;
  int n_max = 10;
  int step = 1;
  NoiseParams noise;
  std::string cnot_pauli = "ZX";
  char meas_pauli = 'X';
  size_t shots = 100;  // per sample
  size_t m_samples = 64;
  uint64_t seed = 1;
  std::string out;
  // feed_forward | post_process | noiseless
  std::string mode = "feed_forward";
  // crossover grid axes
  std::vector<double> lambda_cnots;
  std::vector<double> lambda_meas;
  int threads = 0;

  void validate() const;
  std::vector<int> sizes() const;
};

void to_json(nlohmann::json &j, const ExperimentConfig &c);
void from_json(const nlohmann::json &j, ExperimentConfig &c);

/// Qubit-by-qubit placement of a k-qubit Pauli onto `where` of an n-qubit
/// register.
PauliString embed(const PauliString &p, const std::vector<uint32_t> &where, size_t n);

/// Runs a noiseless CNOT circuit on all 36 products of Pauli eigenstates
/// (several shots each) and checks the output stabilizers exactly.
/// On failure returns false and fills `why`.
bool cnot_stabilizer_io_check(const Circuit &c, uint64_t seed, std::string *why = nullptr,
                              size_t shots_per_pair = 4);

/// Checks every GHZ generator has expectation +1 on the outputs, for a few
/// noiseless shots.
bool ghz_stabilizer_check(const Circuit &c, uint64_t seed, std::string *why = nullptr, size_t shots = 4);

struct VerifyRow {
  std::string family;
  int size;
  std::string check;
  bool passed;
  std::string detail;
};

std::vector<VerifyRow> run_verify_suite(int threads = 0);

struct CnotSweepRow {
  int n;
  std::string variant;
  double model_bound_fproc;
  double model_fgate;
  double simulated_fgate;
  double std_err;
};

struct GhzSweepRow {
  int n;
  std::string method;
  double model_bound;
  double simulated_f;
  double std_err;
  bool entangled;
};

/// Builds the noisy circuit for one sweep point.
Circuit sweep_circuit(const ExperimentConfig &cfg, const std::string &variant, int n);
/// The model family/parameters for one sweep point.
ErrorBudget sweep_budget(const ExperimentConfig &cfg, const std::string &variant, int n);

std::vector<CnotSweepRow> cnot_sweep(const ExperimentConfig &cfg);
std::vector<GhzSweepRow> ghz_sweep(const ExperimentConfig &cfg);

std::string to_csv(const std::vector<CnotSweepRow> &rows);
std::string to_csv(const std::vector<GhzSweepRow> &rows);
std::string to_csv(const std::vector<CrossoverRow> &rows);

/// Resolved config, plus a timestamp unless reproducible.
nlohmann::json sidecar(const ExperimentConfig &cfg, const std::string &command, bool reproducible);

/// Fixed-format number for CSV cells.
std::string fmt(double v);

}  // namespace dyncirc

#endif
