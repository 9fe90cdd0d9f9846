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

#ifndef DYNCIRC_TABLEAU_H
#define DYNCIRC_TABLEAU_H

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "dyncirc/pauli.h"

namespace dyncirc {

/// Thrown when a conditional reads a record that was never written.
struct SequencingError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Aaronson-Gottesman tableau. Rows 0..n-1 are destabilizers, n..2n-1 are
/// stabilizers. Each row is bit-packed; signs are kept per row.
class StabilizerState {
 public:
  explicit StabilizerState(size_t num_qubits, size_t num_records = 0);

  size_t num_qubits() const { return n_; }

  void h(size_t q);
  void s(size_t q);
  void sdg(size_t q);
  void x(size_t q);
  void y(size_t q);
  void z(size_t q);
  void cnot(size_t c, size_t t);
  void apply_pauli(const PauliString &p);

  /// Z-basis measurement. Random outcomes take one bit from rng.
  bool measure(size_t q, std::mt19937_64 &rng);
  /// Z measurement where a random outcome is taken to be `outcome`.
  bool measure_forced(size_t q, bool outcome);
  /// As above, also writing the outcome to record slot `record`.
  bool measure(size_t q, size_t record, std::mt19937_64 &rng);
  /// Outcome of a Z measurement if it is deterministic.
  std::optional<bool> peek_z(size_t q) const;
  void reset(size_t q, std::mt19937_64 &rng);

  /// +1 / -1 if +-P is in the stabilizer group, 0 otherwise.
  int expectation(const PauliString &p) const;

  PauliString stabilizer(size_t i) const { return row(n_ + i); }
  PauliString destabilizer(size_t i) const { return row(i); }

  // Classical record register.
  size_t num_records() const { return bits_.size(); }
  void resize_records(size_t k) { bits_.assign(k, -1); }
  void write_record(size_t r, bool v);
  bool read_record(size_t r) const;
  bool record_written(size_t r) const { return r < bits_.size() && bits_[r] >= 0; }
  std::vector<uint8_t> records() const;

  /// Checks the commutation structure of the tableau.
  bool check_invariants() const;

 private:
  uint64_t *xr(size_t r) { return &xs_[r * w_]; }
  uint64_t *zr(size_t r) { return &zs_[r * w_]; }
  const uint64_t *xr(size_t r) const { return &xs_[r * w_]; }
  const uint64_t *zr(size_t r) const { return &zs_[r * w_]; }
  PauliString row(size_t r) const;
  void check(size_t q) const;
  bool peek_random(size_t q) const;
  // row h <- row h * row i, phase tracked.
  void rowmul(size_t h, size_t i);

  size_t n_;
  size_t w_;
  std::vector<uint64_t> xs_;
  std::vector<uint64_t> zs_;
  std::vector<uint8_t> r_;
  std::vector<int8_t> bits_;
};

}  // namespace dyncirc

#endif
