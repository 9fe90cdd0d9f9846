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

#include "dyncirc/tableau.h"

#include "dyncirc/rng.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace dyncirc {

namespace {

// (x1,z1) <- (x1,z1)*(x2,z2) over w words; returns the power of i picked up.
uint8_t mul_words(uint64_t *x1, uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t w) {
  int64_t plus = 0, minus = 0;
  for (size_t k = 0; k < w; k++) {
    uint64_t a = x1[k], b = z1[k], c = x2[k], d = z2[k];
    plus += std::popcount((a & ~b & c & d) | (a & b & ~c & d) | (~a & b & c & ~d));
    minus += std::popcount((a & ~b & ~c & d) | (a & b & c & ~d) | (~a & b & c & d));
    x1[k] = a ^ c;
    z1[k] = b ^ d;
  }
  return static_cast<uint8_t>(((plus - minus) % 4 + 4) % 4);
}

bool anticommute_words(const uint64_t *x1, const uint64_t *z1, const uint64_t *x2,
                       const uint64_t *z2, size_t w) {
  uint64_t acc = 0;
  for (size_t k = 0; k < w; k++) acc ^= (x1[k] & z2[k]) ^ (z1[k] & x2[k]);
  return std::popcount(acc) & 1;
}

inline bool bit(const uint64_t *v, size_t q) { return (v[q >> 6] >> (q & 63)) & 1; }
inline void flip(uint64_t *v, size_t q) { v[q >> 6] ^= uint64_t{1} << (q & 63); }

}  // namespace

StabilizerState::StabilizerState(size_t num_qubits, size_t num_records)
    : n_(num_qubits),
      w_((num_qubits + 63) >> 6),
      xs_(2 * num_qubits * w_, 0),
      zs_(2 * num_qubits * w_, 0),
      r_(2 * num_qubits, 0),
      bits_(num_records, -1) {
  if (num_qubits == 0) throw std::invalid_argument("StabilizerState needs at least one qubit");
  for (size_t q = 0; q < n_; q++) {
    flip(xr(q), q);
    flip(zr(n_ + q), q);
  }
}

bool StabilizerState::peek_random(size_t q) const {
  for (size_t i = n_; i < 2 * n_; i++) {
    if (bit(xr(i), q)) return true;
  }
  return false;
}

void StabilizerState::check(size_t q) const {
  if (q >= n_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range (n=" +
                            std::to_string(n_) + ")");
  }
}

PauliString StabilizerState::row(size_t r) const {
  PauliString p(n_);
  for (size_t k = 0; k < w_; k++) {
    p.xs()[k] = xr(r)[k];
    p.zs()[k] = zr(r)[k];
  }
  p.set_phase(r_[r]);
  return p;
}

void StabilizerState::rowmul(size_t h, size_t i) {
  uint8_t e = mul_words(xr(h), zr(h), xr(i), zr(i), w_);
  r_[h] = (r_[h] + r_[i] + e) & 3;
}

void StabilizerState::h(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    bool a = bit(xr(r), q), b = bit(zr(r), q);
    if (a && b) r_[r] ^= 2;
    if (a != b) {
      flip(xr(r), q);
      flip(zr(r), q);
    }
  }
}

void StabilizerState::s(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    bool a = bit(xr(r), q), b = bit(zr(r), q);
    if (a && b) r_[r] ^= 2;
    if (a) flip(zr(r), q);
  }
}

void StabilizerState::sdg(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    bool a = bit(xr(r), q), b = bit(zr(r), q);
    if (a && !b) r_[r] ^= 2;
    if (a) flip(zr(r), q);
  }
}

void StabilizerState::x(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    if (bit(zr(r), q)) r_[r] ^= 2;
  }
}

void StabilizerState::y(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    if (bit(zr(r), q) != bit(xr(r), q)) r_[r] ^= 2;
  }
}

void StabilizerState::z(size_t q) {
  check(q);
  for (size_t r = 0; r < 2 * n_; r++) {
    if (bit(xr(r), q)) r_[r] ^= 2;
  }
}

void StabilizerState::cnot(size_t c, size_t t) {
  check(c);
  check(t);
  if (c == t) throw std::invalid_argument("CNOT control equals target");
  for (size_t r = 0; r < 2 * n_; r++) {
    bool xc = bit(xr(r), c), zc = bit(zr(r), c), xt = bit(xr(r), t), zt = bit(zr(r), t);
    if (xc && zt && (xt == zc)) r_[r] ^= 2;
    if (xc) flip(xr(r), t);
    if (zt) flip(zr(r), c);
  }
}

void StabilizerState::apply_pauli(const PauliString &p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
  for (size_t r = 0; r < 2 * n_; r++) {
    if (anticommute_words(xr(r), zr(r), p.xs(), p.zs(), w_)) r_[r] ^= 2;
  }
}

std::optional<bool> StabilizerState::peek_z(size_t q) const {
  check(q);
  for (size_t i = n_; i < 2 * n_; i++) {
    if (bit(xr(i), q)) return std::nullopt;
  }
  std::vector<uint64_t> sx(w_, 0), sz(w_, 0);
  uint8_t phase = 0;
  for (size_t i = 0; i < n_; i++) {
    if (bit(xr(i), q)) {
      uint8_t e = mul_words(sx.data(), sz.data(), xr(n_ + i), zr(n_ + i), w_);
      phase = (phase + r_[n_ + i] + e) & 3;
    }
  }
  return phase == 2;
}

bool StabilizerState::measure(size_t q, std::mt19937_64 &rng) {
  check(q);
  return measure_forced(q, peek_random(q) && coin(rng));
}

bool StabilizerState::measure_forced(size_t q, bool outcome) {
  check(q);
  size_t p = 2 * n_;
  for (size_t i = n_; i < 2 * n_; i++) {
    if (bit(xr(i), q)) {
      p = i;
      break;
    }
  }
  if (p == 2 * n_) return *peek_z(q);

  for (size_t i = 0; i < 2 * n_; i++) {
    if (i != p && bit(xr(i), q)) rowmul(i, p);
  }
  size_t d = p - n_;
  for (size_t k = 0; k < w_; k++) {
    xr(d)[k] = xr(p)[k];
    zr(d)[k] = zr(p)[k];
    xr(p)[k] = 0;
    zr(p)[k] = 0;
  }
  r_[d] = r_[p];
  flip(zr(p), q);
  r_[p] = outcome ? 2 : 0;
  return outcome;
}

bool StabilizerState::measure(size_t q, size_t record, std::mt19937_64 &rng) {
  bool v = measure(q, rng);
  write_record(record, v);
  return v;
}

void StabilizerState::reset(size_t q, std::mt19937_64 &rng) {
  if (measure(q, rng)) x(q);
}

int StabilizerState::expectation(const PauliString &p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
  for (size_t i = n_; i < 2 * n_; i++) {
    if (anticommute_words(xr(i), zr(i), p.xs(), p.zs(), w_)) return 0;
  }
  std::vector<uint64_t> sx(w_, 0), sz(w_, 0);
  uint8_t phase = 0;
  for (size_t i = 0; i < n_; i++) {
    if (anticommute_words(xr(i), zr(i), p.xs(), p.zs(), w_)) {
      uint8_t e = mul_words(sx.data(), sz.data(), xr(n_ + i), zr(n_ + i), w_);
      phase = (phase + r_[n_ + i] + e) & 3;
    }
  }
  // sx/sz now equal p up to phase.
  uint8_t rel = (p.phase() - phase + 4) & 3;
  if (rel & 1) throw std::logic_error("expectation of a non-Hermitian Pauli");
  return rel == 0 ? +1 : -1;
}

void StabilizerState::write_record(size_t r, bool v) {
  if (r >= bits_.size()) throw std::out_of_range("record index " + std::to_string(r));
  bits_[r] = v ? 1 : 0;
}

bool StabilizerState::read_record(size_t r) const {
  if (r >= bits_.size() || bits_[r] < 0) {
    throw SequencingError("record " + std::to_string(r) + " read before it was written");
  }
  return bits_[r] == 1;
}

std::vector<uint8_t> StabilizerState::records() const {
  std::vector<uint8_t> out(bits_.size());
  for (size_t i = 0; i < bits_.size(); i++) out[i] = bits_[i] > 0;
  return out;
}

bool StabilizerState::check_invariants() const {
  for (size_t i = 0; i < n_; i++) {
    if (r_[n_ + i] & 1) return false;
    for (size_t j = 0; j < n_; j++) {
      bool ss = anticommute_words(xr(n_ + i), zr(n_ + i), xr(n_ + j), zr(n_ + j), w_);
      bool ds = anticommute_words(xr(i), zr(i), xr(n_ + j), zr(n_ + j), w_);
      bool dd = anticommute_words(xr(i), zr(i), xr(j), zr(j), w_);
      if (ss || dd || ds != (i == j)) return false;
    }
  }
  return true;
}

}  // namespace dyncirc
