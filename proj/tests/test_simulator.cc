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

#include <map>

#include "dyncirc/builders.h"
#include "dyncirc/dense.h"
#include "dyncirc/noise.h"
#include "dyncirc/rng.h"
#include "dyncirc/simulator.h"
#include "dyncirc/tableau.h"

using namespace dyncirc;

namespace {

using Dist = std::map<std::vector<uint8_t>, double>;

// Exact record distribution by branching a tableau on every random
// measurement (feed-forward circuits, Clifford only, noise ignored).
void branch(const Circuit &c, size_t k, StabilizerState st, double p, Dist &out) {
  for (; k < c.instructions.size(); k++) {
    const auto &ins = c.instructions[k];
    const auto &q = ins.qubits;
    switch (ins.op) {
      case Op::H: st.h(q[0]); break;
      case Op::S: st.s(q[0]); break;
      case Op::SDG: st.sdg(q[0]); break;
      case Op::X: st.x(q[0]); break;
      case Op::Y: st.y(q[0]); break;
      case Op::Z: st.z(q[0]); break;
      case Op::CNOT: st.cnot(q[0], q[1]); break;
      case Op::MEASURE: {
        auto det = st.peek_z(q[0]);
        if (det) {
          st.measure_forced(q[0], *det);
          st.write_record(ins.record, *det);
          break;
        }
        for (bool b : {false, true}) {
          StabilizerState s2 = st;
          s2.measure_forced(q[0], b);
          s2.write_record(ins.record, b);
          branch(c, k + 1, s2, p / 2, out);
        }
        return;
      }
      case Op::RESET: {
        std::mt19937_64 rng(0);
        st.reset(q[0], rng);
        break;
      }
      case Op::COND_PAULI: {
        bool par = false;
        for (uint32_t r : ins.parity) par ^= st.read_record(r);
        if (par) st.apply_pauli(PauliString::single(c.num_qubits, q[0], ins.pauli));
        break;
      }
      default: break;
    }
  }
  out[st.records()] += p;
}

Dist stabilizer_distribution(const Circuit &c) {
  Dist d;
  branch(c, 0, StabilizerState(c.num_qubits, c.num_records), 1, d);
  return d;
}

}  // namespace

TEST(simulator, dense_and_stabilizer_record_distributions_agree) {
  std::vector<Circuit> all;
  for (uint32_t n = 1; n <= 8; n++) {
    all.push_back(long_range_cnot_dynamic(n));
    all.push_back(long_range_cnot_unitary(CnotVariant::Ia, n));
    all.push_back(long_range_cnot_unitary(CnotVariant::Ib, n));
    all.push_back(long_range_cnot_unitary(CnotVariant::Ic, n));
  }
  for (uint32_t n = 2; n <= 8; n++) all.push_back(long_range_cnot_unitary(CnotVariant::II, n));
  for (uint32_t n = 2; n <= 10; n++) {
    all.push_back(ghz_dynamic(n));
    all.push_back(ghz_unitary(n));
  }
  for (const Circuit &c : all) {
    Dist a = stabilizer_distribution(c);
    auto b = record_distribution(c, {.noisy = false});
    ASSERT_EQ(a.size(), b.size()) << c.name;
    for (const auto &[rec, p] : b) EXPECT_NEAR(a[rec], p, 1e-12);
  }
}

TEST(simulator, frame_records_match_feed_forward_distribution) {
  for (uint32_t n = 1; n <= 12; n++) {
    std::vector<std::pair<Circuit, Circuit>> pairs;
    if (n <= 10) pairs.emplace_back(long_range_cnot_dynamic(n), long_range_cnot_dynamic(n, DynamicMode::PostProcess));
    if (n >= 2) pairs.emplace_back(ghz_dynamic(n), ghz_dynamic(n, DynamicMode::PostProcess));
    for (const auto &[f, g] : pairs) {
    auto ff = record_distribution(f, {.noisy = false});
    auto pp = record_distribution(g, {.noisy = false});
    Dist a(ff.begin(), ff.end()), b(pp.begin(), pp.end());
    EXPECT_EQ(a.size(), b.size());
    for (const auto &[rec, p] : a) EXPECT_NEAR(b[rec], p, 1e-12);
    }
  }
}

TEST(simulator, empirical_frequencies_match_exact) {
  Circuit c = long_range_cnot_dynamic(3);
  Dist exact = stabilizer_distribution(c);
  auto shots = run_shots(c, 8000, 77);
  Dist freq;
  for (const auto &s : shots) freq[s.classical_bits] += 1.0 / shots.size();
  for (const auto &[rec, p] : exact) EXPECT_NEAR(freq[rec], p, 0.03);
}

TEST(simulator, parallel_matches_serial) {
  NoiseParams p{0.02, 0.02, 0.02, 1.5, {}, {}};
  Circuit c = attach_noise(long_range_cnot_dynamic(6, DynamicMode::PostProcess, 0), p);
  auto a = run_shots_serial(c, 300, 123);
  for (int threads : {1, 3, 8}) {
    auto b = run_shots(c, 300, 123, {.noisy = true, .threads = threads});
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
      nlohmann::json ja = a[i], jb = b[i];
      EXPECT_EQ(ja, jb);
    }
  }
}

TEST(simulator, noiseless_means_no_errors) {
  NoiseParams p{0.5, 0.5, 0.5, 1, {}, {}};
  Circuit c = attach_noise(ghz_dynamic(8, DynamicMode::FeedForward, 1), p);
  for (const auto &s : run_shots(c, 50, 1, {.noisy = false})) EXPECT_TRUE(s.sampled_errors.empty());
  size_t fired = 0;
  for (const auto &s : run_shots(c, 50, 1)) fired += s.sampled_errors.size();
  EXPECT_GT(fired, 0u);
}

TEST(simulator, fire_probability) {
  EXPECT_DOUBLE_EQ(fire_probability(0), 0);
  EXPECT_DOUBLE_EQ(fire_probability(std::numeric_limits<double>::infinity()), 0.5);
  EXPECT_NEAR(fire_probability(0.1), (1 - std::exp(-0.2)) / 2, 1e-15);
}

TEST(simulator, shot_result_json) {
  auto rng = stream_rng(1, 1);
  auto r = run_shot(long_range_cnot_dynamic(2, DynamicMode::PostProcess), rng);
  nlohmann::json j = r;
  EXPECT_TRUE(j.contains("classical_bits"));
  EXPECT_TRUE(j.contains("pauli_frame"));
  EXPECT_EQ(j["classical_bits"].size(), 2u);
}

TEST(simulator, rejects_non_clifford) {
  auto rng = stream_rng(1, 1);
  EXPECT_THROW(run_shot(ccz_dynamic(2), rng), std::invalid_argument);
}

TEST(simulator, stream_seeds_independent_of_order) {
  auto a = stream_rng(5, 17), b = stream_rng(5, 17), c = stream_rng(5, 18);
  EXPECT_EQ(a(), b());
  EXPECT_NE(stream_rng(5, 17)(), c());
}

TEST(simulator, random_sequences_keep_tableau_invariants) {
  std::mt19937_64 rng(1234);
  for (int seq = 0; seq < 10000; seq++) {
    const size_t n = 1 + rng() % 16;
    StabilizerState st(n);
    for (int k = 0; k < 12; k++) {
      size_t q = rng() % n;
      switch (rng() % 6) {
        case 0: st.h(q); break;
        case 1: st.s(q); break;
        case 2: st.sdg(q); break;
        case 3:
          if (n > 1) st.cnot(q, (q + 1 + rng() % (n - 1)) % n);
          break;
        case 4: st.measure(q, rng); break;
        case 5:
          st.reset(q, rng);
          ASSERT_EQ(st.expectation(PauliString::single(n, q, 'Z')), 1);
          break;
      }
    }
    ASSERT_TRUE(st.check_invariants()) << "sequence " << seq;
  }
}

TEST(simulator, plus_state_statistics) {
  Circuit c(1);
  c.h(0);
  c.measure(0);
  c.schedule();
  const size_t shots = 100000;
  size_t ones = 0;
  for (const auto &s : run_shots(c, shots, 31)) ones += s.classical_bits[0];
  const double sigma = std::sqrt(0.25 / shots);
  EXPECT_NEAR(static_cast<double>(ones) / shots, 0.5, 5 * sigma);
}

TEST(simulator, small_identities) {
  StabilizerState st(2);
  st.h(0);
  st.cnot(0, 1);
  EXPECT_EQ(st.expectation(PauliString::from_str("XX")), 1);
  EXPECT_EQ(st.expectation(PauliString::from_str("ZZ")), 1);
  StabilizerState p(1);
  p.h(0);
  p.s(0);
  p.s(0);
  EXPECT_EQ(p.expectation(PauliString::from_str("X")), -1);
}

TEST(simulator, ghz_measures_all_equal) {
  Circuit c = ghz_dynamic(8);
  for (uint32_t q = 0; q < 8; q++) c.measure(q);
  c.schedule();
  size_t ones = 0;
  for (const auto &s : run_shots(c, 400, 2)) {
    std::vector<uint8_t> last(s.classical_bits.end() - 8, s.classical_bits.end());
    for (auto b : last) ASSERT_EQ(b, last[0]);
    ones += last[0];
  }
  EXPECT_NEAR(ones / 400.0, 0.5, 0.1);
}

TEST(simulator, inject_noise_rates) {
  StabilizerState st(1);
  std::mt19937_64 rng(0);
  EXPECT_THROW(inject_pauli_noise(st, PauliString::from_str("X"), -0.1, rng), std::invalid_argument);
  EXPECT_NEAR(fire_probability(0.5), 0.3161, 1e-4);
  size_t fired = 0;
  for (int i = 0; i < 20000; i++) fired += inject_pauli_noise(st, PauliString::from_str("X"), 0.5, rng);
  EXPECT_NEAR(fired / 20000.0, fire_probability(0.5), 0.015);
}

TEST(simulator, one_bell_pair_teleportation) {
  // q0 = |psi>, (q1, q2) Bell pair; Bell measurement of q0, q1; fix q2.
  Circuit c(3, "teleport");
  c.inputs = {0};
  c.outputs = {2};
  c.h(1);
  c.cnot(1, 2);
  c.cnot(0, 1);
  c.h(0);
  uint32_t rx = c.measure(0);
  uint32_t rz = c.measure(1);
  c.conditional('X', 2, {rz});
  c.conditional('Z', 2, {rx});
  c.schedule();
  for (int which = 0; which < 6; which++) {
    for (uint64_t s = 0; s < 8; s++) {
      auto rng = stream_rng(s, which);
      Shot shot(3, c);
      if (which & 1) shot.apply(Op::X, {0});
      if (which >= 2) shot.apply(Op::H, {0});
      if (which >= 4) shot.apply(Op::S, {0});
      shot.run(c, rng);
      PauliString p(3);
      p.set(2, "ZZXXYY"[which]);
      p.set_negative(which & 1);
      EXPECT_EQ(shot.expectation(p), 1) << which;
    }
  }
}

TEST(simulator, uncorrected_dynamic_cnot_reaches_the_asymptote) {
  // n = 1 has only the Z correction, so it stops at 0.6.
  for (uint32_t n : {1u, 2u, 5u}) {
    Circuit c = long_range_cnot_dynamic(n);
    std::erase_if(c.instructions, [](const Instruction &i) { return i.op == Op::COND_PAULI; });
    c.schedule();
    double f = process_fidelity(c, cnot_matrix(), {.noisy = false});
    EXPECT_NEAR((4 * f + 1) / 5, n == 1 ? 0.6 : 0.4, 1e-12);
  }
}

TEST(simulator, malformed_circuit_rejected_before_running) {
  Circuit c(2);
  c.conditional('X', 0, {0});
  c.num_records = 1;
  EXPECT_THROW(run_shots(c, 10, 1), SequencingError);
}

TEST(simulator, sampled_errors_explain_final_state) {
  // Choi setup: reference qubits Bell-paired with the inputs. Each sampled
  // error, pushed to the end, flips exactly the Choi stabilizers it
  // anticommutes with.
  NoiseParams p{0.05, 0.05, 0.05, 1.0, {}, {}};
  for (auto mode : {DynamicMode::FeedForward, DynamicMode::PostProcess}) {
    Circuit c = attach_noise(long_range_cnot_dynamic(4, mode, 1.0), p);
    const size_t n = c.num_qubits, total = n + 2;
    std::vector<PauliString> choi;
    for (int side = 0; side < 2; side++) {
      for (char l : {'X', 'Z'}) {
        PauliString in(2);
        in.set(side, l);
        in.conj_cnot(0, 1);
        PauliString full(total);
        for (int k = 0; k < 2; k++) full.set(c.outputs[k], in.get(k));
        full.set(n + side, l);
        full.set_phase(in.phase());
        choi.push_back(full);
      }
    }
    for (uint64_t s = 0; s < 300; s++) {
      auto rng = stream_rng(17, s);
      Shot shot(total, c);
      for (int k = 0; k < 2; k++) {
        shot.apply(Op::H, {static_cast<uint32_t>(n + k)});
        shot.apply(Op::CNOT, {static_cast<uint32_t>(n + k), c.inputs[k]});
      }
      shot.run(c, rng);
      std::vector<PauliString> pushed;
      for (const auto &e : shot.errors) {
        PauliString local(n);
        for (uint32_t q = 0; q < n; q++) local.set(q, e.pauli.get(q));
        PauliString end = propagate(c, e.instruction, local, 0).pauli;
        PauliString wide(total);
        for (uint32_t q = 0; q < n; q++) wide.set(q, end.get(q));
        pushed.push_back(wide);
      }
      for (const auto &g : choi) {
        int sign = 1;
        for (const auto &e : pushed) sign *= commutes(e, g) ? 1 : -1;
        ASSERT_EQ(shot.expectation(g), sign) << "shot " << s << " " << g.str();
      }
    }
  }
}
