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

#ifndef DYNCIRC_PAULI_H
#define DYNCIRC_PAULI_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dyncirc {

/// An n-qubit Pauli operator in symplectic form.
///
/// Bits are packed 64 to a word. Qubit q has an X bit and a Z bit; both set
/// means the Hermitian Y. The phase is a power of i (0..3). Everything the
/// toolkit hands out (stabilizers, noise terms) has phase 0 or 2, i.e. a
/// sign. Products of anticommuting operators carry an odd phase; keeping it
/// exact is what makes multiplication associative.
class PauliString {
 public:
  explicit PauliString(size_t num_qubits);

  /// Parses "+XYZ", "-YYX", "ZZI". A leading U+2212 minus is also accepted.
  static PauliString from_str(std::string_view text);
  /// Single-qubit Pauli p in {I,X,Y,Z} on qubit q of an n-qubit register.
  static PauliString single(size_t num_qubits, size_t q, char p);

  size_t num_qubits() const { return n_; }
  size_t num_words() const { return xs_.size(); }

  bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
  bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
  char get(size_t q) const;
  void set(size_t q, char p);
  void set_x(size_t q, bool v);
  void set_z(size_t q, bool v);

  /// Power of i, 0..3.
  uint8_t phase() const { return phase_; }
  void set_phase(uint8_t p) { phase_ = p & 3; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  /// +1 or -1. Throws std::logic_error for an odd phase.
  int sign() const;
  bool negative() const { return sign() < 0; }
  void set_negative(bool neg) { phase_ = neg ? 2 : 0; }

  bool is_identity_up_to_sign() const;
  size_t weight() const;

  /// this <- this * rhs. Returns the exponent of i picked up.
  uint8_t mul_inplace(const PauliString &rhs);

  std::string str() const;

  const uint64_t *xs() const { return xs_.data(); }
  const uint64_t *zs() const { return zs_.data(); }
  uint64_t *xs() { return xs_.data(); }
  uint64_t *zs() { return zs_.data(); }

  bool operator==(const PauliString &o) const {
    return n_ == o.n_ && phase_ == o.phase_ && xs_ == o.xs_ && zs_ == o.zs_;
  }
  bool operator!=(const PauliString &o) const { return !(*this == o); }
  /// Ordering on the unsigned operator, used for map keys.
  bool less_ignoring_phase(const PauliString &o) const;
  bool equal_ignoring_phase(const PauliString &o) const {
    return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_;
  }

  // Conjugation by Clifford gates: P <- U P U^dagger.
  void conj_h(size_t q);
  void conj_s(size_t q);
  void conj_sdg(size_t q);
  void conj_cnot(size_t c, size_t t);
  /// Conjugation by a Pauli only flips the sign.
  void conj_pauli(char p, size_t q);

 private:
  void check_index(size_t q) const;

  size_t n_;
  uint8_t phase_ = 0;
  std::vector<uint64_t> xs_;
  std::vector<uint64_t> zs_;
};

PauliString multiply(const PauliString &a, const PauliString &b);
bool commutes(const PauliString &a, const PauliString &b);

struct PauliLess {
  bool operator()(const PauliString &a, const PauliString &b) const {
    return a.less_ignoring_phase(b);
  }
};

}  // namespace dyncirc

#endif
