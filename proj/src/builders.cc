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

#include "dyncirc/builders.h"

#include <stdexcept>
#include <string>

namespace dyncirc {

DynamicMode mode_from_name(std::string_view name) {
  if (name == "feed_forward") return DynamicMode::FeedForward;
  if (name == "post_process") return DynamicMode::PostProcess;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view mode_name(DynamicMode m) {
  return m == DynamicMode::FeedForward ? "feed_forward" : "post_process";
}

CnotVariant variant_from_name(std::string_view name) {
  if (name == "Ia") return CnotVariant::Ia;
  if (name == "Ib") return CnotVariant::Ib;
  if (name == "Ic") return CnotVariant::Ic;
  if (name == "II") return CnotVariant::II;
  throw std::invalid_argument("invalid variant '" + std::string(name) + "'");
}

std::string_view variant_name(CnotVariant v) {
  switch (v) {
    case CnotVariant::Ia: return "Ia";
    case CnotVariant::Ib: return "Ib";
    case CnotVariant::Ic: return "Ic";
    case CnotVariant::II: return "II";
  }
  return "?";
}

namespace {

struct ChainRecords {
  std::vector<uint32_t> z;  // decide the X correction on the target
  std::vector<uint32_t> x;  // decide the Z correction on the control
};

// Measures ancilla `a` in the X basis.
uint32_t measure_x(Circuit &c, uint32_t a) {
  c.h(a);
  return c.measure(a);
}

// Teleported CNOT along chain = [control, a_1..a_k, target]. Two CNOT
// layers, then all ancillas are measured. Corrections are left to the
// caller: X on target by parity(z), Z on control by parity(x).
//
// Even k: Bell pairs (a1,a2),(a3,a4).. in layer 1; c->a1, a2->a3, .., ak->t
// in layer 2. Odd k: c->a1 and Bell pairs (a2,a3).. in layer 1; a1->a2, ..,
// ak->t in layer 2.
ChainRecords teleport_chain(Circuit &c, const std::vector<uint32_t> &chain) {
  size_t k = chain.size() - 2;
  uint32_t ctl = chain.front(), tgt = chain.back();
  auto a = [&](size_t i) { return chain[i]; };  // a(1)..a(k)
  ChainRecords rec;
  if (k == 0) {
    c.cnot(ctl, tgt);
    return rec;
  }
  size_t first = k % 2 == 0 ? 1 : 2;
  if (k % 2 == 1) c.cnot(ctl, a(1));
  for (size_t i = first; i + 1 <= k; i += 2) {
    c.h(a(i));
    c.cnot(a(i), a(i + 1));
  }
  if (k % 2 == 0) c.cnot(ctl, a(1));
  for (size_t i = first == 1 ? 2 : 1; i + 1 <= k; i += 2) c.cnot(a(i), a(i + 1));
  c.cnot(a(k), tgt);
  // Qubits holding a parity that includes the control are measured in X.
  for (size_t i = 1; i <= k; i++) {
    bool z_measured = (k % 2 == 0) ? (i % 2 == 1) : (i % 2 == 0);
    if (z_measured) rec.z.push_back(c.measure(a(i)));
  }
  for (size_t i = 1; i <= k; i++) {
    bool z_measured = (k % 2 == 0) ? (i % 2 == 1) : (i % 2 == 0);
    if (!z_measured) rec.x.push_back(measure_x(c, a(i)));
  }
  return rec;
}

// Fan-out of `chain.front()` into a fresh |0> target `chain.back()`. Like
// teleport_chain, but for odd k the target itself closes the last Bell pair,
// so it always needs an X correction when k >= 1.
ChainRecords fanout_chain(Circuit &c, const std::vector<uint32_t> &chain) {
  size_t k = chain.size() - 2;
  if (k % 2 == 0) return teleport_chain(c, chain);
  uint32_t ctl = chain.front(), tgt = chain.back();
  auto a = [&](size_t i) { return i == k + 1 ? tgt : chain[i]; };
  ChainRecords rec;
  for (size_t i = 1; i <= k; i += 2) {
    c.h(a(i));
    c.cnot(a(i), a(i + 1));
  }
  c.cnot(ctl, a(1));
  for (size_t i = 2; i + 1 <= k; i += 2) c.cnot(a(i), a(i + 1));
  for (size_t i = 1; i <= k; i += 2) rec.z.push_back(c.measure(a(i)));
  for (size_t i = 2; i <= k; i += 2) rec.x.push_back(measure_x(c, a(i)));
  return rec;
}

std::vector<uint32_t> range(uint32_t lo, uint32_t hi) {
  std::vector<uint32_t> v;
  for (uint32_t i = lo; i <= hi; i++) v.push_back(i);
  return v;
}

void require(bool ok, const std::string &msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Circuit long_range_cnot_dynamic(uint32_t n, DynamicMode mode, double mu) {
  require(n >= 1, "long_range_cnot_dynamic needs n_ancillas >= 1");
  Circuit c(n + 2, "cnot_dynamic");
  c.mu = mu;
  c.feed_forward = mode == DynamicMode::FeedForward;
  c.inputs = c.outputs = {0, n + 1};
  auto rec = teleport_chain(c, range(0, n + 1));
  if (!rec.z.empty()) c.conditional('X', n + 1, rec.z);
  if (!rec.x.empty()) c.conditional('Z', 0, rec.x);
  c.schedule();
  return c;
}

namespace {

// Moves the state on `from` into the |0> qubit `to` and back to |0> on `from`.
void move_into_empty(Circuit &c, uint32_t from, uint32_t to) {
  c.cnot(from, to);
  c.cnot(to, from);
}

void swap3(Circuit &c, uint32_t a, uint32_t b) {
  c.cnot(a, b);
  c.cnot(b, a);
  c.cnot(a, b);
}

}  // namespace

Circuit long_range_cnot_unitary(CnotVariant v, uint32_t size) {
  require(size >= 1, "long_range_cnot_unitary needs size >= 1");
  const uint32_t n = size;
  const uint32_t hc = n - n / 2, ht = n / 2;
  Circuit c(n + 2, "cnot_" + std::string(variant_name(v)));
  c.inputs = {0, n + 1};
  c.outputs = {0, n + 1};
  switch (v) {
    case CnotVariant::Ia:
      for (uint32_t k = 1; k <= n; k++) c.cnot(k - 1, k);
      c.cnot(n, n + 1);
      for (uint32_t k = n; k >= 1; k--) c.cnot(k - 1, k);
      break;
    case CnotVariant::Ib: {
      // Target walks in by moves; the control fan-out is placed as late as
      // possible so the copies idle least.
      double span = std::max<double>(hc, 2.0 * ht);
      for (uint32_t j = 1; j <= ht; j++) move_into_empty(c, n + 2 - j, n + 1 - j);
      for (uint32_t k = 1; k <= hc; k++) c.cnot(k - 1, k, span - hc + (k - 1));
      c.cnot(hc, hc + 1);
      for (uint32_t k = hc; k >= 1; k--) c.cnot(k - 1, k);
      for (uint32_t j = ht; j >= 1; j--) move_into_empty(c, n + 1 - j, n + 2 - j);
      break;
    }
    case CnotVariant::Ic:
      for (uint32_t j = 1; j <= hc; j++) move_into_empty(c, j - 1, j);
      for (uint32_t j = 1; j <= ht; j++) move_into_empty(c, n + 2 - j, n + 1 - j);
      c.cnot(hc, hc + 1);
      for (uint32_t j = hc; j >= 1; j--) move_into_empty(c, j, j - 1);
      for (uint32_t j = ht; j >= 1; j--) move_into_empty(c, n + 1 - j, n + 2 - j);
      break;
    case CnotVariant::II:
      c.spectators = range(1, n);
      for (uint32_t j = 1; j <= hc; j++) swap3(c, j - 1, j);
      for (uint32_t j = 1; j <= ht; j++) swap3(c, n + 2 - j, n + 1 - j);
      c.cnot(hc, hc + 1);
      c.outputs = {hc, hc + 1};
      break;
  }
  c.schedule();
  return c;
}

Circuit ghz_unitary(uint32_t n) {
  require(n >= 2, "ghz_unitary needs n >= 2");
  Circuit c(n, "ghz_unitary");
  c.outputs = range(0, n - 1);
  c.inputs.clear();
  // Outputs without inputs: the state is prepared, not transformed.
  int64_t left = n / 2 - 1, right = left + 1;
  c.h(left);
  c.cnot(left, right);
  while (left > 0 || right < static_cast<int64_t>(n) - 1) {
    if (left > 0) {
      c.cnot(left, left - 1);
      left--;
    }
    if (right < static_cast<int64_t>(n) - 1) {
      c.cnot(right, right + 1);
      right++;
    }
  }
  c.schedule();
  return c;
}

Circuit ghz_dynamic(uint32_t n, DynamicMode mode, double mu) {
  require(n >= 2, "ghz_dynamic needs n >= 2");
  Circuit c(n, "ghz_dynamic");
  c.mu = mu;
  c.feed_forward = mode == DynamicMode::FeedForward;
  c.outputs = range(0, n - 1);
  // D = even positions carry |+>, M = odd positions between two D qubits are
  // measured; for even n the last qubit stays |0> until the final layer.
  const uint32_t last_d = (n % 2 == 0) ? n - 2 : n - 1;
  for (uint32_t d = 0; d < last_d; d += 2) c.h(d);
  c.h(last_d, last_d > 0 ? 1.0 : 0.0);
  for (uint32_t d = 0; d < last_d; d += 2) c.cnot(d, d + 1);
  for (uint32_t d = 0; d < last_d; d += 2) c.cnot(d + 2, d + 1);
  std::vector<uint32_t> recs;
  for (uint32_t m = 1; m < last_d; m += 2) recs.push_back(c.measure(m));
  std::vector<uint32_t> parity;
  for (uint32_t j = 1; 2 * j <= last_d; j++) {
    parity.push_back(recs[j - 1]);
    c.conditional('X', 2 * j, parity);
  }
  for (uint32_t m = 1; m < last_d; m += 2) c.reset(m);
  for (uint32_t d = 0; d < last_d; d += 2) c.cnot(d, d + 1);
  if (n % 2 == 0) c.cnot(n - 2, n - 1);
  c.schedule();
  return c;
}

Circuit ccz_dynamic(uint32_t n, double mu) {
  require(n >= 1, "ccz_dynamic needs n_ancillas >= 1");
  // A, x_1..x_p, m, B, y_1..y_q, C
  const uint32_t p = n - n / 2, q = n / 2;
  const uint32_t A = 0, m = p + 1, B = p + 2, C = p + q + 3;
  Circuit c(n + 4, "ccz_dynamic");
  c.mu = mu;
  c.inputs = c.outputs = {A, B, C};
  c.gate(Op::T, {A});
  c.gate(Op::T, {B});
  c.gate(Op::T, {C});

  // Step 1: copy A next to m and C next to B.
  const uint32_t a_copy = p;
  ChainRecords ra = fanout_chain(c, range(A, p));
  uint32_t c_copy = C;
  ChainRecords rc;
  if (q >= 1) {
    c_copy = p + 3;
    std::vector<uint32_t> chain;
    for (uint32_t i = C; i >= c_copy; i--) chain.push_back(i);
    rc = fanout_chain(c, chain);
  }
  if (!ra.z.empty()) c.conditional('X', a_copy, ra.z);
  if (!rc.z.empty()) c.conditional('X', c_copy, rc.z);

  // Phase polynomial on (a, m, b, c): T on singles above, T^dag on the
  // pairwise parities, T on a^b^c.
  c.cnot(a_copy, m);
  c.cnot(B, m);
  c.gate(Op::TDG, {m});
  c.cnot(c_copy, B);
  c.gate(Op::TDG, {B});
  c.cnot(B, m);
  c.gate(Op::TDG, {m});
  c.cnot(c_copy, B);
  c.cnot(B, m);
  c.gate(Op::T, {m});

  // Step 2: X-measure the copies and the parity qubit, fix phases on A, B, C.
  uint32_t r_a = measure_x(c, a_copy);
  uint32_t r_m = measure_x(c, m);
  std::vector<uint32_t> za = ra.x, zc = rc.x;
  za.push_back(r_a);
  za.push_back(r_m);
  if (q >= 1) zc.push_back(measure_x(c, c_copy));
  zc.push_back(r_m);
  c.conditional('Z', A, za);
  c.conditional('Z', B, {r_m});
  c.conditional('Z', C, zc);
  c.schedule();
  return c;
}

}  // namespace dyncirc
