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

#include "dyncirc/pauli.h"

#include <bit>
#include <stdexcept>

namespace dyncirc {

namespace {

size_t words_for(size_t n) { return (n + 63) >> 6; }

void check_same_size(const PauliString &a, const PauliString &b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("Pauli dimension mismatch: " + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()));
  }
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : n_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
  if (num_qubits == 0) {
    throw std::invalid_argument("PauliString needs at least one qubit");
  }
}

PauliString PauliString::from_str(std::string_view text) {
  uint8_t phase = 0;
  if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("\xE2\x88\x92")) {
    phase = 2;
    text.remove_prefix(3);
  }
  if (text.starts_with("i")) {
    phase = (phase + 1) & 3;
    text.remove_prefix(1);
  }
  if (text.empty()) {
    throw std::invalid_argument("empty Pauli string");
  }
  PauliString p(text.size());
  for (size_t q = 0; q < text.size(); q++) {
    p.set(q, text[q]);
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(size_t num_qubits, size_t q, char c) {
  PauliString p(num_qubits);
  p.set(q, c);
  return p;
}

void PauliString::check_index(size_t q) const {
  if (q >= n_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " +
                            std::to_string(n_) + "-qubit Pauli");
  }
}

char PauliString::get(size_t q) const {
  check_index(q);
  return "IXZY"[x(q) | (z(q) << 1)];
}

void PauliString::set_x(size_t q, bool v) {
  check_index(q);
  uint64_t m = uint64_t{1} << (q & 63);
  xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliString::set_z(size_t q, bool v) {
  check_index(q);
  uint64_t m = uint64_t{1} << (q & 63);
  zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

void PauliString::set(size_t q, char p) {
  switch (p) {
    case 'I': case '_': set_x(q, false); set_z(q, false); break;
    case 'X': set_x(q, true); set_z(q, false); break;
    case 'Y': set_x(q, true); set_z(q, true); break;
    case 'Z': set_x(q, false); set_z(q, true); break;
    default:
      throw std::invalid_argument(std::string("not a Pauli character: '") + p + "'");
  }
}

int PauliString::sign() const {
  if (phase_ & 1) {
    throw std::logic_error("Pauli product " + str() + " is not Hermitian");
  }
  return phase_ == 0 ? +1 : -1;
}

bool PauliString::is_identity_up_to_sign() const {
  for (size_t w = 0; w < xs_.size(); w++) {
    if (xs_[w] | zs_[w]) return false;
  }
  return true;
}

size_t PauliString::weight() const {
  size_t k = 0;
  for (size_t w = 0; w < xs_.size(); w++) k += std::popcount(xs_[w] | zs_[w]);
  return k;
}

uint8_t PauliString::mul_inplace(const PauliString &rhs) {
  check_same_size(*this, rhs);
  // Per-qubit phase of (x1,z1)(x2,z2): +i for XY, YZ, ZX and -i for YX, ZY, XZ.
  int64_t plus = 0, minus = 0;
  for (size_t w = 0; w < xs_.size(); w++) {
    uint64_t x1 = xs_[w], z1 = zs_[w], x2 = rhs.xs_[w], z2 = rhs.zs_[w];
    uint64_t p = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t m = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
    plus += std::popcount(p);
    minus += std::popcount(m);
    xs_[w] = x1 ^ x2;
    zs_[w] = z1 ^ z2;
  }
  uint8_t e = static_cast<uint8_t>(((plus - minus) % 4 + 4) % 4);
  phase_ = (phase_ + rhs.phase_ + e) & 3;
  return e;
}

std::string PauliString::str() const {
  static const char *prefix[4] = {"+", "+i", "-", "-i"};
  std::string out = prefix[phase_];
  out.reserve(out.size() + n_);
  for (size_t q = 0; q < n_; q++) out.push_back("IXZY"[x(q) | (z(q) << 1)]);
  return out;
}

bool PauliString::less_ignoring_phase(const PauliString &o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (xs_ != o.xs_) return xs_ < o.xs_;
  return zs_ < o.zs_;
}

void PauliString::conj_h(size_t q) {
  bool a = x(q), b = z(q);
  if (a && b) phase_ ^= 2;
  set_x(q, b);
  set_z(q, a);
}

void PauliString::conj_s(size_t q) {
  // X -> Y, Y -> -X.
  bool a = x(q), b = z(q);
  if (a && b) phase_ ^= 2;
  set_z(q, a ^ b);
}

void PauliString::conj_sdg(size_t q) {
  // X -> -Y, Y -> X.
  bool a = x(q), b = z(q);
  if (a && !b) phase_ ^= 2;
  set_z(q, a ^ b);
}

void PauliString::conj_cnot(size_t c, size_t t) {
  check_index(c);
  check_index(t);
  if (c == t) throw std::invalid_argument("CNOT control equals target");
  bool xc = x(c), zc = z(c), xt = x(t), zt = z(t);
  if (xc && zt && (xt == zc)) phase_ ^= 2;
  set_x(t, xt ^ xc);
  set_z(c, zc ^ zt);
}

void PauliString::conj_pauli(char p, size_t q) {
  bool a = x(q), b = z(q);
  bool flip = false;
  switch (p) {
    case 'I': break;
    case 'X': flip = b; break;
    case 'Z': flip = a; break;
    case 'Y': flip = a ^ b; break;
    default: throw std::invalid_argument(std::string("not a Pauli character: '") + p + "'");
  }
  if (flip) phase_ ^= 2;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
  PauliString r = a;
  r.mul_inplace(b);
  return r;
}

bool commutes(const PauliString &a, const PauliString &b) {
  check_same_size(a, b);
  uint64_t acc = 0;
  for (size_t w = 0; w < a.num_words(); w++) {
    acc ^= (a.xs()[w] & b.zs()[w]) ^ (a.zs()[w] & b.xs()[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

}  // namespace dyncirc
