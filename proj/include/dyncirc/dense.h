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

#ifndef DYNCIRC_DENSE_H
#define DYNCIRC_DENSE_H

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dyncirc/circuit.h"
#include "dyncirc/pauli.h"

namespace dyncirc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

constexpr size_t kDenseMaxQubits = 14;

/// Thrown when a dense computation would exceed kDenseMaxQubits.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// Amplitude of basis state i is amps[i]; qubit q is bit q of i.
class StateVector {
 public:
  explicit StateVector(size_t num_qubits);

  size_t num_qubits() const { return n_; }
  std::vector<cplx> &amps() { return amps_; }
  const std::vector<cplx> &amps() const { return amps_; }

  void apply_1q(const Matrix &u, size_t q);
  void apply_2q(const Matrix &u, size_t q0, size_t q1);  // q0 is the low bit of u's index
  void apply(Op op, const std::vector<uint32_t> &qubits);
  void apply_pauli(const PauliString &p);

  double prob_one(size_t q) const;
  /// Projects qubit q onto `outcome` and renormalizes. Returns the branch
  /// probability before renormalizing.
  double project(size_t q, bool outcome);
  double norm() const;

 private:
  size_t n_;
  std::vector<cplx> amps_;
};

/// Straight loops without OpenMP, kept as the reference for the kernels.
namespace serial {
void apply_1q(StateVector &s, const Matrix &u, size_t q);
void apply_2q(StateVector &s, const Matrix &u, size_t q0, size_t q1);
double prob_one(const StateVector &s, size_t q);
}  // namespace serial

double state_fidelity(const StateVector &a, const StateVector &b);

// Gate matrices.
Matrix gate_matrix(Op op);
Matrix cnot_matrix();  // control = low bit
Matrix ccz_matrix();
bool is_unitary(const Matrix &u, double tol = 1e-10);

/// One leaf of the measurement/noise branching tree.
struct Branch {
  double prob;
  StateVector state;               // frame already applied
  std::vector<uint8_t> records;    // frame-corrected
};

struct BranchOptions {
  bool noisy = true;
  // Above this many noise sites, noise is sampled instead of enumerated.
  size_t max_enumerated_noise = 20;
  size_t noise_samples = 2000;
  uint64_t seed = 1;
};

/// Runs c from `init` (which may carry extra reference qubits after the
/// circuit's own) and calls fn for every branch with nonzero probability.
/// Branch probabilities sum to 1.
void for_each_branch(const Circuit &c, const StateVector &init, const BranchOptions &opt,
                     const std::function<void(const Branch &)> &fn);

/// Exact distribution over frame-corrected record strings.
std::vector<std::pair<std::vector<uint8_t>, double>> record_distribution(const Circuit &c,
                                                                          const BranchOptions &opt = {});

/// Unitary of a measurement- and noise-free circuit on its inputs -> outputs.
/// Other qubits must start and end in |0>.
Matrix circuit_unitary(const Circuit &c);

/// Process fidelity between the ideal unitary `target` on c.inputs -> c.outputs
/// and the channel c implements (all branches, noise averaged).
double process_fidelity(const Circuit &c, const Matrix &target, const BranchOptions &opt = {});

/// As above with the target given as an ideal, measurement-free circuit.
double channel_process_fidelity(const Circuit &ideal, const Circuit &noisy,
                                const BranchOptions &opt = {});

/// Average of state fidelities of the channel over all 6^k products of
/// single-qubit Pauli eigenstates.
double pauli_eigenstate_average_fidelity(const Circuit &c, const Matrix &target,
                                         const BranchOptions &opt = {});

/// Mixed output state of c applied to |0..0>, as a fidelity against a pure
/// target on the circuit's outputs.
double output_state_fidelity(const Circuit &c, const StateVector &target_on_outputs,
                             const BranchOptions &opt = {});

// Superoperators (column-stacking vec, d^2 x d^2).
Matrix pauli_matrix(const PauliString &p);
Matrix superop_from_kraus(const std::vector<Matrix> &kraus);
Matrix superop_unitary(const Matrix &u);
/// exp(lambda * L_P), L_P(rho) = P rho P - rho, evaluated with a matrix exponential.
Matrix superop_lindblad_exp(const PauliString &p, double lambda);
/// Pauli twirl of a superoperator on nq qubits.
Matrix pauli_twirl(const Matrix &superop, size_t nq);
/// Tr(S_U^dag S) / d^2.
double superop_process_fidelity(const Matrix &superop, const Matrix &u);
/// exp(lambda * L_damp) with jump operator |0><1|.
Matrix amplitude_damping_superop(double lambda);

}  // namespace dyncirc

#endif
