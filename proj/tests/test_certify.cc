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

#include <gtest/gtest.h>

#include <set>

#include "dyncirc/builders.h"
#include "dyncirc/certify.h"
#include "dyncirc/dense.h"
#include "dyncirc/noise.h"
#include "oracle.h"

using namespace dyncirc;

namespace {

StateVector ghz_vector(size_t n) {
  StateVector t(n);
  t.amps()[0] = t.amps()[(size_t{1} << n) - 1] = 1 / std::sqrt(2.0);
  return t;
}

Circuit with_x_on_first(Circuit c, double rate) {
  if (std::isinf(rate)) {
    c.noise("X", {c.outputs[0]}, rate);
  } else {
    c.gate(Op::X, {c.outputs[0]});
  }
  c.schedule();
  return c;
}

}  // namespace

TEST(certify, group_small_cases) {
  GhzStabilizerGroup g(2);
  std::set<std::string> got;
  for (uint64_t m = 0; m < 4; m++) got.insert(g.at(m).str());
  // Brute force: products of XX and ZZ.
  std::set<std::string> want;
  PauliString xx = PauliString::from_str("XX"), zz = PauliString::from_str("ZZ");
  want = {PauliString(2).str(), xx.str(), zz.str(), multiply(xx, zz).str()};
  EXPECT_EQ(got, want);
  EXPECT_TRUE(got.count("-YY"));
  GhzStabilizerGroup g3(3);
  bool found = false;
  for (uint64_t m = 0; m < 8; m++) found |= g3.at(m).str() == "-YYX";
  EXPECT_TRUE(found);
  EXPECT_THROW(GhzStabilizerGroup(1), std::invalid_argument);
}

TEST(certify, every_stabilizer_fixes_dense_ghz) {
  for (size_t n = 2; n <= 8; n++) {
    GhzStabilizerGroup g(n);
    StateVector ghz = ghz_vector(n);
    for (uint64_t m = 0; m < (uint64_t{1} << n); m++) {
      StateVector s = ghz;
      PauliString p = g.at(m);
      ASSERT_TRUE(p.is_hermitian());
      s.apply_pauli(p);
      EXPECT_NEAR(state_fidelity(s, ghz), 1, 1e-12) << p.str();
      cplx ov = 0;
      for (size_t i = 0; i < s.amps().size(); i++) ov += std::conj(ghz.amps()[i]) * s.amps()[i];
      EXPECT_NEAR(ov.real(), 1, 1e-12) << p.str();
    }
  }
}

TEST(certify, support_matches_brute_force) {
  using namespace oracle;
  auto support = cnot_process_support();
  M u = cnot(2, 0, 1);
  std::set<std::string> want;
  const char *L = "IXYZ";
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      for (int c = 0; c < 4; c++)
        for (int d = 0; d < 4; d++) {
          M in = conj(pauli(std::string{L[a], L[b]}));
          M out = pauli(std::string{L[c], L[d]});
          double rho = (trace(mul(out, mul(mul(u, in), dagger(u)))) / 4.0).real();
          if (std::abs(rho) > 1e-9) {
            want.insert(std::string{L[a], L[b], L[c], L[d]} + (rho > 0 ? "+" : "-"));
          }
        }
  std::set<std::string> got;
  for (const auto &t : support) got.insert(std::string{t.pi, t.pj, t.pk, t.pl} + (t.rho > 0 ? "+" : "-"));
  EXPECT_EQ(got, want);
  EXPECT_TRUE(got.count("YYXZ-"));
  EXPECT_TRUE(got.count("XZYY-"));
  EXPECT_TRUE(got.count("IIII+"));
}

TEST(certify, noiseless_ghz_is_exactly_one) {
  CertifyOptions o;
  o.m_samples = 50;
  o.shots_per_sample = 5;
  for (const Circuit &c : {ghz_unitary(6), ghz_dynamic(6), ghz_dynamic(6, DynamicMode::PostProcess)}) {
    auto e = estimate_ghz_fidelity(c, 6, o);
    EXPECT_EQ(e.fidelity, 1.0);
    EXPECT_EQ(e.std_err, 0.0);
  }
  EXPECT_THROW(estimate_ghz_fidelity(ghz_unitary(6), 5, o), std::invalid_argument);
}

TEST(certify, ghz_with_bit_flip_matches_dense) {
  CertifyOptions o;
  o.m_samples = 400;
  o.shots_per_sample = 10;
  for (double rate : {std::numeric_limits<double>::infinity(), -1.0}) {
    // rate < 0 marks a deterministic X gate.
    Circuit c = with_x_on_first(ghz_unitary(6), rate);
    double exact = output_state_fidelity(c, ghz_vector(6));
    auto e = estimate_ghz_fidelity(c, 6, o);
    EXPECT_NEAR(e.fidelity, exact, 3 * e.std_err + 1e-12) << exact;
  }
}

TEST(certify, noisy_dynamic_ghz_matches_dense) {
  NoiseParams p{0.002, 0.01, 0.01, 2.0, {}, {}};
  Circuit c = attach_noise(ghz_dynamic(8, DynamicMode::FeedForward, 2.0), p);
  BranchOptions bo;
  bo.max_enumerated_noise = 64;
  bo.noise_samples = 20000;
  double exact = output_state_fidelity(c, ghz_vector(8), bo);
  CertifyOptions o;
  o.m_samples = 500;
  o.shots_per_sample = 10;
  auto e = estimate_ghz_fidelity(c, 8, o);
  EXPECT_NEAR(e.fidelity, exact, 3 * e.std_err);
}

TEST(certify, cnot_noiseless_and_dephased) {
  CertifyOptions o;
  o.m_samples = 200;
  o.shots_per_sample = 20;
  auto e = estimate_cnot_gate_fidelity(long_range_cnot_dynamic(3), o);
  EXPECT_EQ(e.gate_fidelity, 1.0);

  Circuit c(2, "zc");
  c.inputs = c.outputs = {0, 1};
  c.cnot(0, 1);
  c.noise("Z", {0}, 0.1);
  c.schedule();
  double exact = (4 * process_fidelity(c, cnot_matrix()) + 1) / 5;
  auto d = estimate_cnot_gate_fidelity(c, o);
  EXPECT_NEAR(d.gate_fidelity, exact, 3 * d.std_err);
}

TEST(certify, estimates_are_not_clipped) {
  // Flipped GHZ has fidelity 0; with few samples some estimates go negative.
  Circuit c = with_x_on_first(ghz_unitary(4), -1);
  bool negative = false;
  for (uint64_t s = 0; s < 50 && !negative; s++) {
    CertifyOptions o;
    o.m_samples = 3;
    o.shots_per_sample = 1;
    o.seed = s;
    negative = estimate_ghz_fidelity(c, 4, o).fidelity < 0;
  }
  EXPECT_TRUE(negative);

  Circuit x(2, "cnot_then_x");
  x.inputs = x.outputs = {0, 1};
  x.cnot(0, 1);
  x.gate(Op::Y, {0});
  x.gate(Op::Y, {1});
  x.schedule();
  bool below = false;
  for (uint64_t s = 0; s < 50 && !below; s++) {
    CertifyOptions o;
    o.m_samples = 2;
    o.shots_per_sample = 1;
    o.seed = s;
    below = estimate_cnot_gate_fidelity(x, o).gate_fidelity < 0.2;
  }
  EXPECT_TRUE(below);
}

TEST(certify, thread_count_does_not_change_results) {
  NoiseParams p{0.01, 0.02, 0.02, 1.0, {}, {}};
  Circuit c = attach_noise(long_range_cnot_dynamic(4, DynamicMode::FeedForward, 1.0), p);
  CertifyOptions o;
  o.m_samples = 40;
  o.shots_per_sample = 5;
  o.threads = 1;
  auto a = estimate_cnot_gate_fidelity(c, o);
  o.threads = 4;
  auto b = estimate_cnot_gate_fidelity(c, o);
  EXPECT_EQ(a.gate_fidelity, b.gate_fidelity);
  nlohmann::json ja = a.samples[3], jb = b.samples[3];
  EXPECT_EQ(ja, jb);
  EXPECT_TRUE(ja.contains("operators"));
  EXPECT_TRUE(ja.contains("ideal_value"));
}
