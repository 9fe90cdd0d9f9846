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

// Small independent dense-matrix helpers for tests. Nothing here calls
// into the library's dense module.

#ifndef DYNCIRC_TESTS_ORACLE_H
#define DYNCIRC_TESTS_ORACLE_H

#include <complex>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// Row-major square matrix.
struct M {
  size_t d = 0;
  std::vector<C> a;
  explicit M(size_t dim = 0) : d(dim), a(dim * dim, 0) {}
  C &operator()(size_t r, size_t c) { return a[r * d + c]; }
  C operator()(size_t r, size_t c) const { return a[r * d + c]; }
};

inline M eye(size_t d) {
  M m(d);
  for (size_t i = 0; i < d; i++) m(i, i) = 1;
  return m;
}

inline M mul(const M &x, const M &y) {
  M r(x.d);
  for (size_t i = 0; i < x.d; i++)
    for (size_t k = 0; k < x.d; k++)
      for (size_t j = 0; j < x.d; j++) r(i, j) += x(i, k) * y(k, j);
  return r;
}

inline M dagger(const M &x) {
  M r(x.d);
  for (size_t i = 0; i < x.d; i++)
    for (size_t j = 0; j < x.d; j++) r(i, j) = std::conj(x(j, i));
  return r;
}

inline M conj(const M &x) {
  M r = x;
  for (auto &v : r.a) v = std::conj(v);
  return r;
}

inline M scale(const M &x, C s) {
  M r = x;
  for (auto &v : r.a) v *= s;
  return r;
}

inline C trace(const M &x) {
  C t = 0;
  for (size_t i = 0; i < x.d; i++) t += x(i, i);
  return t;
}

inline double dist(const M &x, const M &y) {
  double m = 0;
  for (size_t i = 0; i < x.a.size(); i++) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

// Qubit 0 is the least significant bit of the basis index.
inline M kron_low_first(const std::vector<M> &factors) {
  M r = eye(1);
  for (size_t f = 0; f < factors.size(); f++) {
    const M &g = factors[f];
    M out(r.d * g.d);
    // new index = old + r.d * g_index
    for (size_t i = 0; i < r.d; i++)
      for (size_t j = 0; j < r.d; j++)
        for (size_t k = 0; k < g.d; k++)
          for (size_t l = 0; l < g.d; l++) out(i + r.d * k, j + r.d * l) = r(i, j) * g(k, l);
    r = out;
  }
  return r;
}

inline M pauli1(char c) {
  M m(2);
  const C i(0, 1);
  switch (c) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = -i; m(1, 0) = i; break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

// Letters in qubit order (letters[0] is qubit 0).
inline M pauli(const std::string &letters) {
  std::vector<M> f;
  for (char c : letters) f.push_back(pauli1(c));
  return kron_low_first(f);
}

inline M hadamard() {
  M m(2);
  const double s = 1 / std::sqrt(2.0);
  m(0, 0) = s; m(0, 1) = s; m(1, 0) = s; m(1, 1) = -s;
  return m;
}

inline M phase_s() {
  M m(2);
  m(0, 0) = 1;
  m(1, 1) = C(0, 1);
  return m;
}

// CNOT on an n-qubit register as a permutation matrix.
inline M cnot(size_t n, size_t c, size_t t) {
  M m(size_t{1} << n);
  for (size_t i = 0; i < m.d; i++) {
    size_t j = ((i >> c) & 1) ? i ^ (size_t{1} << t) : i;
    m(j, i) = 1;
  }
  return m;
}

// Single-qubit u on qubit q of n.
inline M on(size_t n, size_t q, const M &u) {
  std::vector<M> f;
  for (size_t k = 0; k < n; k++) f.push_back(k == q ? u : eye(2));
  return kron_low_first(f);
}

}  // namespace oracle

#endif
