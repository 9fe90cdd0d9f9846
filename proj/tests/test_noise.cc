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

#include <cmath>

#include "dyncirc/builders.h"
#include "dyncirc/dense.h"
#include "dyncirc/noise.h"

using namespace dyncirc;

TEST(noise, omega) {
  EXPECT_DOUBLE_EQ(omega(0), 0);
  EXPECT_DOUBLE_EQ(omega(std::numeric_limits<double>::infinity()), 0.5);
  EXPECT_NEAR(omega(1e-12), 1e-12, 1e-20);
  EXPECT_THROW(omega(-1), std::invalid_argument);
}

TEST(noise, channel_terms_merge) {
  PauliLindbladChannel ch(2);
  ch.add(PauliString::from_str("XZ"), 0.1);
  ch.add(PauliString::from_str("-XZ"), 0.2);
  ch.add(PauliString::from_str("II"), 5);
  EXPECT_EQ(ch.terms().size(), 1u);
  EXPECT_NEAR(ch.total_rate(), 0.3, 1e-15);
  EXPECT_THROW(ch.add(PauliString::from_str("X"), 0.1), std::invalid_argument);
}

TEST(noise, channel_circuit_fidelity_matches_twirl_average) {
  PauliLindbladChannel ch(2);
  ch.add(PauliString::from_str("ZI"), 0.2);
  ch.add(PauliString::from_str("XX"), 0.05);
  ch.add(PauliString::from_str("YZ"), 0.3);
  double avg = 0;
  for (size_t code = 0; code < 16; code++) {
    PauliString q(2);
    for (size_t j = 0; j < 2; j++) q.set(j, "IXYZ"[(code >> (2 * j)) & 3]);
    avg += twirl_coefficient(ch, q) / 16;
  }
  double f = process_fidelity(channel_circuit(ch), Matrix::Identity(4, 4));
  EXPECT_NEAR(f, avg, 1e-12);
  EXPECT_GE(f, ch.fidelity_lower_bound());
}

TEST(noise, depolarizing) {
  double q = 0.9;
  auto ch = depolarizing_channel(1, q);
  // Every non-identity Pauli coefficient equals q.
  for (char c : {'X', 'Y', 'Z'}) EXPECT_NEAR(twirl_coefficient(ch, PauliString::single(1, 0, c)), q, 1e-12);
  EXPECT_THROW(depolarizing_rate(1, 0), std::invalid_argument);
}

TEST(noise, damping_conversion_matches_twirled_amplitude_damping) {
  // T2 -> infinity leaves the twirled amplitude damping alone.
  double t = 0.7, t1 = 2.0;
  auto ch = damping_to_pauli(t, t1, 1e300);
  auto full = damping_to_pauli(t, t1, 3.0);
  EXPECT_NEAR(full.terms().at(PauliString::from_str("Z")), t / 6.0, 1e-15);
  EXPECT_NEAR(full.terms().at(PauliString::from_str("X")), t / 8.0, 1e-15);
  Matrix s = Matrix::Identity(4, 4);
  for (const auto &[p, l] : ch.terms()) s = superop_lindblad_exp(p, l) * s;
  Matrix tw = pauli_twirl(amplitude_damping_superop(t / t1), 1);
  EXPECT_LT((s - tw).cwiseAbs().maxCoeff(), 1e-12);
  NoiseParams p;
  p.t1 = 1;
  p.t2 = 3;
  EXPECT_EQ(p.warnings().size(), 1u);
}

TEST(noise, propagation_agrees_with_dense_channel) {
  const double rate = 0.3;
  const double hit = (1 + std::exp(-2 * rate)) / 2;
  for (auto mode : {DynamicMode::FeedForward, DynamicMode::PostProcess}) {
    Circuit base = long_range_cnot_dynamic(3, mode);
    for (size_t k = 0; k <= base.instructions.size(); k++) {
      for (uint32_t q = 0; q < base.num_qubits; q++) {
        for (char c : {'X', 'Z', 'Y'}) {
          Circuit c2 = base;
          Instruction ins;
          ins.op = Op::NOISE;
          ins.qubits = {q};
          ins.noise = std::string(1, c);
          ins.rate = rate;
          c2.instructions.insert(c2.instructions.begin() + k, ins);
          c2.schedule();
          auto term = propagate(base, k, PauliString::single(base.num_qubits, q, c), rate);
          double expect = term.pauli.is_identity_up_to_sign() ? 1.0 : hit;
          ASSERT_NEAR(process_fidelity(c2, cnot_matrix()), expect, 1e-12)
              << "k=" << k << " q=" << q << " " << c << " -> " << term.pauli.str();
        }
      }
    }
  }
}

TEST(noise, propagation_through_non_clifford) {
  Circuit c = ccz_dynamic(2);
  size_t t_pos = 0;
  while (c.instructions[t_pos].op != Op::T) t_pos++;
  uint32_t q = c.instructions[t_pos].qubits[0];
  EXPECT_NO_THROW(propagate(c, t_pos, PauliString::single(c.num_qubits, q, 'Z'), 0.1));
  EXPECT_THROW(propagate(c, t_pos, PauliString::single(c.num_qubits, q, 'X'), 0.1), UnsupportedPropagation);
}

TEST(noise, closed_form_budgets) {
  NoiseParams p{0.01, 0.02, 0.03, 2.0, {}, {}};
  auto b = budget(Family::cnot_dynamic, 5, p);
  EXPECT_NEAR(b.lambda_tot, (2 * 2.0 + 2) * 0.01 + 6 * 0.02 + 5 * 0.03, 1e-12);
  EXPECT_NEAR(b.fidelity_lower_bound, std::exp(-b.lambda_tot), 1e-15);
  auto g = budget(Family::ghz_unitary, 8, p);
  EXPECT_NEAR(g.tally.t_idle, 16 - 12 + 2, 1e-12);
  EXPECT_THROW(budget(Family::ghz_dynamic, 5, p), std::invalid_argument);
  EXPECT_THROW(family_from_name("cnot_III"), std::invalid_argument);
  EXPECT_EQ(family_name(family_from_name("cnot_II_normed")), "cnot_II_normed");
}

TEST(noise, zero_noise_is_perfect) {
  NoiseParams p;
  for (Family f : {Family::cnot_dynamic, Family::cnot_Ia, Family::cnot_Ib, Family::cnot_Ic, Family::cnot_II}) {
    EXPECT_DOUBLE_EQ(budget(f, 6, p).fidelity_lower_bound, 1.0);
  }
}

TEST(noise, gate_fidelity_from_process) {
  EXPECT_DOUBLE_EQ(gate_fidelity_from_process(0.25, 4), 0.4);
  EXPECT_DOUBLE_EQ(gate_fidelity_from_process(1, 4), 1);
  EXPECT_THROW(gate_fidelity_from_process(1.1, 4), std::invalid_argument);
}

TEST(noise, ghz_crossover_without_measurement_cost) {
  // lambda_meas = 0 and mu = 0: scan the two closed forms directly.
  NoiseParams p{0.002, 0.01, 0, 0, {}, {}};
  int expect = -1;
  for (int n = 2; n < 10000; n += 2) {
    double dyn = 1 * p.lambda_idle + (1.5 * n - 2) * p.lambda_cnot;
    double uni = (n * n / 4.0 - 1.5 * n + 2) * p.lambda_idle + (n - 1) * p.lambda_cnot;
    if (dyn < uni) {
      expect = n;
      break;
    }
  }
  auto c = crossover_ghz(p);
  ASSERT_TRUE(c.n_cross.has_value());
  EXPECT_EQ(*c.n_cross, expect);
}

TEST(noise, crossover_grid_order) {
  NoiseParams p{0.001, 0, 0, 3.65, {}, {}};
  auto rows = crossover_grid(true, p, {0.001, 0.01}, {0.001, 0.002, 0.003}, 2);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_DOUBLE_EQ(rows[1].lambda_cnot, 0.001);
  EXPECT_DOUBLE_EQ(rows[1].lambda_meas, 0.002);
  EXPECT_DOUBLE_EQ(rows[3].lambda_cnot, 0.01);
  auto serial = crossover_grid(true, p, {0.001, 0.01}, {0.001, 0.002, 0.003}, 1);
  for (size_t i = 0; i < rows.size(); i++) EXPECT_EQ(rows[i].result.n_cross, serial[i].result.n_cross);
}

TEST(noise, params_json) {
  auto j = nlohmann::json::parse(R"({"lambda_idle":0.03,"lambda_cnot":0.02,"lambda_meas":0.03,"mu":3.65})");
  NoiseParams p = j.get<NoiseParams>();
  EXPECT_DOUBLE_EQ(p.mu, 3.65);
  nlohmann::json back = p;
  EXPECT_EQ(back, j);
  EXPECT_THROW(nlohmann::json::parse(R"({"lambda_idle":-1})").get<NoiseParams>(), std::invalid_argument);
  EXPECT_THROW(nlohmann::json::parse(R"({"t1":1})").get<NoiseParams>(), std::invalid_argument);
}
