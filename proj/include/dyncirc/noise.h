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

#ifndef DYNCIRC_NOISE_H
#define DYNCIRC_NOISE_H

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dyncirc/circuit.h"
#include "dyncirc/pauli.h"
#include "json.hpp"

namespace dyncirc {

/// (1 - e^{-2 lambda}) / 2; infinity gives 1/2.
double omega(double lambda);

/// Product of Gamma_P^{lambda_P}. Paulis are stored unsigned.
class PauliLindbladChannel {
 public:
  explicit PauliLindbladChannel(size_t num_qubits) : n_(num_qubits) {}

  size_t num_qubits() const { return n_; }
  /// Adds rate to P (merging with an existing term). Identity is ignored.
  void add(const PauliString &p, double lambda);
  void compose(const PauliLindbladChannel &other);
  const std::map<PauliString, double, PauliLess> &terms() const { return terms_; }
  double total_rate() const;
  /// exp(-sum lambda).
  double fidelity_lower_bound() const;
  /// prod (1 - omega_P): the identity coefficient when no products cancel.
  double no_cancellation_fidelity() const;

 private:
  size_t n_;
  std::map<PauliString, double, PauliLess> terms_;
};

PauliLindbladChannel damping_to_pauli(double t, double t1, double t2);
double depolarizing_rate(size_t n, double q);
PauliLindbladChannel depolarizing_channel(size_t n, double q);
double twirl_coefficient(const PauliLindbladChannel &ch, const PauliString &q);

/// The channel as a circuit on its own qubits (inputs = outputs = all).
Circuit channel_circuit(const PauliLindbladChannel &ch);

struct UnsupportedPropagation : std::domain_error {
  using std::domain_error::domain_error;
};

struct PropagatedTerm {
  PauliString pauli;  // on the full register, non-output qubits cleared
  double rate;
};

/// Pushes a Pauli acting just before instruction `position` to the end of
/// the circuit: Clifford conjugation, flipped records pull in the
/// corrections that read them, reset and discard drop factors.
PropagatedTerm propagate(const Circuit &c, size_t position, const PauliString &p, double rate);

struct NoiseParams {
  double lambda_idle = 0;
  double lambda_cnot = 0;
  double lambda_meas = 0;
  double mu = 0;
  std::optional<double> t1;
  std::optional<double> t2;

  void validate() const;
  std::vector<std::string> warnings() const;
};

void to_json(nlohmann::json &j, const NoiseParams &p);
void from_json(const nlohmann::json &j, NoiseParams &p);

struct NoiseAttachOptions {
  // Letters for (control, target) after each CNOT.
  std::string cnot_pauli = "ZX";
  // Pauli applied to a qubit right before it is measured.
  char meas_pauli = 'X';
};

/// Returns c with NOISE instructions: after each CNOT, before each
/// measurement, and over each idle interval (Z at lambda_idle * t, or the
/// twirled T1/T2 channel when both are given).
Circuit attach_noise(const Circuit &c, const NoiseParams &p, const NoiseAttachOptions &o = {});

enum class Family {
  cnot_dynamic,
  cnot_Ia,
  cnot_Ib,
  cnot_Ic,
  cnot_II,
  cnot_II_normed,
  ghz_unitary,
  ghz_dynamic,
};

Family family_from_name(std::string_view name);
std::string_view family_name(Family f);

/// Closed-form budget counts (real-valued).
struct ModelTally {
  double t_idle = 0;
  double n_cnot = 0;
  double n_meas = 0;
  double depth = 0;
};

struct ErrorBudget {
  ModelTally tally;
  double lambda_tot = 0;
  double fidelity_lower_bound = 1;
};

void to_json(nlohmann::json &j, const ErrorBudget &b);

ModelTally closed_form_tally(Family f, int size, double mu);
ErrorBudget budget(Family f, int size, const NoiseParams &p);
ErrorBudget budget_from_tally(const ModelTally &t, const NoiseParams &p);

double gate_fidelity_from_process(double f_proc, int d);

struct Crossover {
  std::optional<int> n_cross;
  double f_cross = 0;
};

/// Smallest n (from n_min, stepping by `step`) where the dynamic bound
/// exceeds every family in `unitary`.
Crossover crossover(Family dynamic, const std::vector<Family> &unitary, const NoiseParams &p,
                    int n_min, int step, int n_max = 10000);
Crossover crossover_ghz(const NoiseParams &p, int n_max = 10000);
Crossover crossover_cnot(const NoiseParams &p, int n_max = 10000);

struct CrossoverRow {
  double lambda_cnot;
  double lambda_meas;
  Crossover result;
};

/// Grid over (lambda_cnot x lambda_meas), OpenMP over points, rows in
/// lambda_cnot-major order.
std::vector<CrossoverRow> crossover_grid(bool ghz, const NoiseParams &base,
                                         const std::vector<double> &lambda_cnots,
                                         const std::vector<double> &lambda_meas, int threads = 0);

/// Largest lambda_meas on a grid of spacing `resolution` for which the GHZ
/// crossover fidelity stays above `threshold`.
double ghz_meas_boundary(const NoiseParams &base, double threshold = 0.5, double resolution = 1e-5,
                         double upper = 0.1);

}  // namespace dyncirc

#endif
