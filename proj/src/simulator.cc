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

#include "dyncirc/simulator.h"

#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "dyncirc/rng.h"

namespace dyncirc {

double fire_probability(double lambda) {
  if (!(lambda >= 0)) throw std::invalid_argument("noise rate must be nonnegative");
  if (std::isinf(lambda)) return 0.5;
  return -std::expm1(-2 * lambda) / 2;
}

bool inject_pauli_noise(StabilizerState &state, const PauliString &p, double lambda,
                        std::mt19937_64 &rng) {
  double w = fire_probability(lambda);
  if (w == 0 || uniform01(rng) >= w) return false;
  state.apply_pauli(p);
  return true;
}

Shot::Shot(size_t total_qubits, const Circuit &c) : state(total_qubits, c.num_records) {
  if (total_qubits < c.num_qubits) throw std::invalid_argument("shot register smaller than circuit");
  if (!c.feed_forward) frame.emplace(total_qubits);
}

void Shot::apply(Op op, const std::vector<uint32_t> &qs) {
  switch (op) {
    case Op::H: state.h(qs[0]); break;
    case Op::S: state.s(qs[0]); break;
    case Op::SDG: state.sdg(qs[0]); break;
    case Op::X: state.x(qs[0]); break;
    case Op::Y: state.y(qs[0]); break;
    case Op::Z: state.z(qs[0]); break;
    case Op::CNOT: state.cnot(qs[0], qs[1]); break;
    default:
      throw std::invalid_argument("stabilizer simulation does not support " + std::string(op_name(op)));
  }
  if (!frame) return;
  switch (op) {
    case Op::H: frame->conj_h(qs[0]); break;
    case Op::S: frame->conj_s(qs[0]); break;
    case Op::SDG: frame->conj_sdg(qs[0]); break;
    case Op::CNOT: frame->conj_cnot(qs[0], qs[1]); break;
    default: break;  // Paulis only change the frame's sign, which is irrelevant.
  }
}

bool Shot::measure(uint32_t q, std::mt19937_64 &rng) {
  bool v = state.measure(q, rng);
  if (frame && frame->x(q)) v = !v;
  return v;
}

int Shot::expectation(const PauliString &p) const {
  int e = state.expectation(p);
  if (frame && !commutes(*frame, p)) e = -e;
  return e;
}

void Shot::run(const Circuit &c, std::mt19937_64 &rng, const RunOptions &opt) {
  const size_t n = state.num_qubits();
  for (size_t k = 0; k < c.instructions.size(); k++) {
    const auto &ins = c.instructions[k];
    switch (ins.op) {
      case Op::MEASURE:
        state.write_record(ins.record, measure(ins.qubits[0], rng));
        break;
      case Op::RESET:
        state.reset(ins.qubits[0], rng);
        if (frame) {
          frame->set_x(ins.qubits[0], false);
          frame->set_z(ins.qubits[0], false);
        }
        break;
      case Op::COND_PAULI: {
        bool parity = false;
        for (uint32_t r : ins.parity) parity ^= state.read_record(r);
        if (!parity) break;
        PauliString p = PauliString::single(n, ins.qubits[0], ins.pauli);
        if (frame) {
          frame->mul_inplace(p);
          frame->set_phase(0);
        } else {
          state.apply_pauli(p);
        }
        break;
      }
      case Op::NOISE: {
        if (!opt.noisy) break;
        PauliString p(n);
        for (size_t i = 0; i < ins.qubits.size(); i++) p.set(ins.qubits[i], ins.noise[i]);
        if (inject_pauli_noise(state, p, ins.rate, rng)) errors.push_back({k, ins.start, p});
        break;
      }
      case Op::BARRIER:
        break;
      default:
        apply(ins.op, ins.qubits);
    }
  }
}

ShotResult Shot::result() const {
  ShotResult r;
  r.classical_bits = state.records();
  r.pauli_frame = frame;
  r.sampled_errors = errors;
  return r;
}

ShotResult run_shot(const Circuit &c, std::mt19937_64 &rng, const RunOptions &opt) {
  Shot s(c.num_qubits, c);
  s.run(c, rng, opt);
  return s.result();
}

std::vector<ShotResult> run_shots(const Circuit &c, size_t shots, uint64_t master_seed,
                                  const RunOptions &opt) {
  c.validate();
  std::vector<ShotResult> out(shots);
  int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (int64_t i = 0; i < static_cast<int64_t>(shots); i++) {
    auto rng = stream_rng(master_seed, i);
    out[i] = run_shot(c, rng, opt);
  }
  return out;
}

std::vector<ShotResult> run_shots_serial(const Circuit &c, size_t shots, uint64_t master_seed,
                                         const RunOptions &opt) {
  c.validate();
  std::vector<ShotResult> out;
  out.reserve(shots);
  for (size_t i = 0; i < shots; i++) {
    auto rng = stream_rng(master_seed, i);
    out.push_back(run_shot(c, rng, opt));
  }
  return out;
}

void to_json(nlohmann::json &j, const ShotResult &r) {
  j["classical_bits"] = r.classical_bits;
  if (r.pauli_frame) j["pauli_frame"] = r.pauli_frame->str();
  auto errs = nlohmann::json::array();
  for (const auto &e : r.sampled_errors) errs.push_back({{"time", e.time}, {"pauli", e.pauli.str()}});
  j["sampled_errors"] = errs;
}

}  // namespace dyncirc
