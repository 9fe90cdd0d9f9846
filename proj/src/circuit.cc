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

#include "dyncirc/circuit.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "dyncirc/rng.h"
#include "dyncirc/tableau.h"

namespace dyncirc {

namespace {

Instruction make_instruction(Op op, std::vector<uint32_t> qubits) {
  Instruction ins;
  ins.op = op;
  ins.qubits = std::move(qubits);
  return ins;
}

}  // namespace

namespace {

struct OpInfo {
  Op op;
  const char *name;
  size_t arity;  // 0 = variable
};

constexpr OpInfo kOps[] = {
    {Op::H, "H", 1},         {Op::S, "S", 1},         {Op::SDG, "S_DAG", 1},
    {Op::X, "X", 1},         {Op::Y, "Y", 1},         {Op::Z, "Z", 1},
    {Op::T, "T", 1},         {Op::TDG, "T_DAG", 1},   {Op::CNOT, "CNOT", 2},
    {Op::CCZ, "CCZ", 3},     {Op::MEASURE, "M", 1},   {Op::RESET, "R", 1},
    {Op::COND_PAULI, "IF_PARITY", 1}, {Op::NOISE, "NOISE", 0}, {Op::BARRIER, "BARRIER", 0},
};

const OpInfo &info(Op op) { return kOps[static_cast<size_t>(op)]; }

}  // namespace

std::string_view op_name(Op op) { return info(op).name; }

Op op_from_name(std::string_view name) {
  for (const auto &o : kOps) {
    if (name == o.name) return o.op;
  }
  throw std::invalid_argument("unknown instruction '" + std::string(name) + "'");
}

bool is_unitary_gate(Op op) { return op <= Op::CCZ; }
bool is_clifford_gate(Op op) { return is_unitary_gate(op) && op != Op::T && op != Op::TDG && op != Op::CCZ; }
size_t gate_arity(Op op) { return info(op).arity; }

Circuit::Circuit(uint32_t n, std::string circuit_name) : num_qubits(n), name(std::move(circuit_name)) {}

void Circuit::gate(Op op, std::vector<uint32_t> qubits, double not_before) {
  if (!is_unitary_gate(op)) throw std::invalid_argument("not a gate: " + std::string(op_name(op)));
  Instruction ins = make_instruction(op, std::move(qubits));
  ins.not_before = not_before;
  instructions.push_back(std::move(ins));
}

uint32_t Circuit::measure(uint32_t q) {
  uint32_t r = num_records++;
  Instruction ins = make_instruction(Op::MEASURE, {q});
  ins.record = r;
  instructions.push_back(std::move(ins));
  return r;
}

void Circuit::reset(uint32_t q) { instructions.push_back(make_instruction(Op::RESET, {q})); }

void Circuit::conditional(char pauli, uint32_t q, std::vector<uint32_t> parity) {
  Instruction ins = make_instruction(Op::COND_PAULI, {q});
  ins.pauli = pauli;
  ins.parity = std::move(parity);
  instructions.push_back(std::move(ins));
}

void Circuit::noise(std::string paulis, std::vector<uint32_t> qubits, double rate) {
  Instruction ins = make_instruction(Op::NOISE, std::move(qubits));
  ins.noise = std::move(paulis);
  ins.rate = rate;
  instructions.push_back(std::move(ins));
}

void Circuit::barrier(std::vector<uint32_t> qubits) {
  instructions.push_back(make_instruction(Op::BARRIER, std::move(qubits)));
}

void Circuit::validate() const {
  auto where = [](size_t k) { return " (instruction " + std::to_string(k) + ")"; };
  std::vector<bool> written(num_records, false);
  for (size_t k = 0; k < instructions.size(); k++) {
    const auto &ins = instructions[k];
    size_t arity = gate_arity(ins.op);
    if (arity != 0 && ins.qubits.size() != arity) {
      throw std::invalid_argument(std::string(op_name(ins.op)) + " expects " + std::to_string(arity) +
                                  " qubits" + where(k));
    }
    std::set<uint32_t> seen;
    for (uint32_t q : ins.qubits) {
      if (q >= num_qubits) throw std::out_of_range("qubit " + std::to_string(q) + " out of range" + where(k));
      if (!seen.insert(q).second) throw std::invalid_argument("repeated qubit" + where(k));
    }
    switch (ins.op) {
      case Op::MEASURE:
        if (ins.record >= num_records) throw std::out_of_range("record out of range" + where(k));
        if (written[ins.record]) throw std::invalid_argument("record written twice" + where(k));
        written[ins.record] = true;
        break;
      case Op::COND_PAULI:
        if (ins.pauli != 'X' && ins.pauli != 'Y' && ins.pauli != 'Z') {
          throw std::invalid_argument("conditional Pauli must be X, Y or Z" + where(k));
        }
        for (uint32_t r : ins.parity) {
          if (r >= num_records || !written[r]) {
            throw SequencingError("record " + std::to_string(r) + " read before written" + where(k));
          }
        }
        break;
      case Op::NOISE:
        if (ins.qubits.empty() || ins.noise.size() != ins.qubits.size()) {
          throw std::invalid_argument("noise term size mismatch" + where(k));
        }
        if (!(ins.rate >= 0)) throw std::invalid_argument("negative noise rate" + where(k));
        for (char p : ins.noise) {
          if (p != 'I' && p != 'X' && p != 'Y' && p != 'Z') throw std::invalid_argument("bad noise Pauli" + where(k));
        }
        break;
      default:
        break;
    }
  }
  if (!inputs.empty() && inputs.size() != outputs.size()) {
    throw std::invalid_argument("inputs and outputs differ in size");
  }
  for (uint32_t q : inputs) if (q >= num_qubits) throw std::out_of_range("input qubit out of range");
  for (uint32_t q : outputs) if (q >= num_qubits) throw std::out_of_range("output qubit out of range");
  for (uint32_t q : spectators) if (q >= num_qubits) throw std::out_of_range("spectator qubit out of range");
  if (mu < 0) throw std::invalid_argument("mu must be nonnegative");
}

void Circuit::schedule() {
  validate();
  std::vector<double> free(num_qubits, 0.0);
  std::vector<double> ready(num_records, 0.0);
  for (auto &ins : instructions) {
    double t = ins.not_before;
    if (ins.op == Op::BARRIER) {
      if (ins.qubits.empty()) {
        for (double f : free) t = std::max(t, f);
        std::fill(free.begin(), free.end(), t);
      } else {
        for (uint32_t q : ins.qubits) t = std::max(t, free[q]);
        for (uint32_t q : ins.qubits) free[q] = t;
      }
      ins.start = t;
      ins.duration = 0;
      continue;
    }
    for (uint32_t q : ins.qubits) t = std::max(t, free[q]);
    switch (ins.op) {
      case Op::CNOT:
      case Op::CCZ:
        ins.duration = 1;
        break;
      case Op::MEASURE:
        ins.duration = mu;
        break;
      case Op::COND_PAULI:
        if (feed_forward) {
          for (uint32_t r : ins.parity) t = std::max(t, ready[r]);
        }
        ins.duration = 0;
        break;
      default:
        ins.duration = 0;
    }
    ins.start = t;
    if (ins.op == Op::NOISE) continue;
    if (ins.op == Op::COND_PAULI && !feed_forward) continue;
    for (uint32_t q : ins.qubits) free[q] = t + ins.duration;
    if (ins.op == Op::MEASURE) ready[ins.record] = t + ins.duration;
  }
}

bool Circuit::scheduled() const {
  for (const auto &ins : instructions) {
    if (ins.start < 0) return false;
  }
  return true;
}

double Circuit::makespan() const {
  double m = 0;
  for (const auto &ins : instructions) m = std::max(m, ins.start + ins.duration);
  return m;
}

nlohmann::json Circuit::to_json() const {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto &ins : instructions) {
    nlohmann::json j;
    j["op"] = op_name(ins.op);
    j["qubits"] = ins.qubits;
    if (ins.op == Op::MEASURE) j["record"] = ins.record;
    if (ins.op == Op::COND_PAULI) {
      j["pauli"] = std::string(1, ins.pauli);
      j["parity"] = ins.parity;
    }
    if (ins.op == Op::NOISE) {
      j["pauli"] = ins.noise;
      j["rate"] = ins.rate;
    }
    if (ins.not_before != 0) j["not_before"] = ins.not_before;
    if (ins.start >= 0) {
      j["start"] = ins.start;
      j["duration"] = ins.duration;
    }
    ops.push_back(std::move(j));
  }
  return {{"name", name},         {"num_qubits", num_qubits}, {"num_records", num_records},
          {"mu", mu},             {"feed_forward", feed_forward}, {"inputs", inputs},
          {"outputs", outputs},   {"spectators", spectators},     {"instructions", ops}};
}

Circuit Circuit::from_json(const nlohmann::json &j) {
  Circuit c(j.at("num_qubits").get<uint32_t>(), j.value("name", ""));
  c.num_records = j.value("num_records", 0u);
  c.mu = j.value("mu", 0.0);
  c.feed_forward = j.value("feed_forward", true);
  c.inputs = j.value("inputs", std::vector<uint32_t>{});
  c.outputs = j.value("outputs", std::vector<uint32_t>{});
  c.spectators = j.value("spectators", std::vector<uint32_t>{});
  for (const auto &o : j.at("instructions")) {
    Instruction ins = make_instruction(op_from_name(o.at("op").get<std::string>()), o.at("qubits").get<std::vector<uint32_t>>());
    ins.record = o.value("record", 0u);
    if (ins.op == Op::COND_PAULI) {
      ins.pauli = o.at("pauli").get<std::string>().at(0);
      ins.parity = o.at("parity").get<std::vector<uint32_t>>();
    }
    if (ins.op == Op::NOISE) {
      ins.noise = o.at("pauli").get<std::string>();
      ins.rate = o.at("rate").get<double>();
    }
    ins.not_before = o.value("not_before", 0.0);
    ins.start = o.value("start", -1.0);
    ins.duration = o.value("duration", 0.0);
    c.instructions.push_back(std::move(ins));
  }
  c.validate();
  return c;
}

namespace {

// zero_after[k] = qubits of instruction k that are provably |0> right after it.
// Input and spectator qubits are Bell-paired with reference qubits, so a
// qubit counts as zero only if it is |0> for every input state.
std::vector<std::vector<bool>> known_zero_after(const Circuit &c) {
  std::vector<uint32_t> carried = c.inputs;
  carried.insert(carried.end(), c.spectators.begin(), c.spectators.end());
  StabilizerState st(c.num_qubits + carried.size(), c.num_records);
  for (size_t k = 0; k < carried.size(); k++) {
    uint32_t ref = c.num_qubits + k;
    st.h(ref);
    st.cnot(ref, carried[k]);
  }
  // Qubits whose state the tableau no longer tracks faithfully.
  std::vector<bool> taint(c.num_qubits, false);
  auto rng = stream_rng(0, 0);
  std::vector<std::vector<bool>> out(c.instructions.size());
  for (size_t k = 0; k < c.instructions.size(); k++) {
    const auto &ins = c.instructions[k];
    const auto &qs = ins.qubits;
    switch (ins.op) {
      case Op::H: st.h(qs[0]); break;
      case Op::S: st.s(qs[0]); break;
      case Op::SDG: st.sdg(qs[0]); break;
      case Op::X: st.x(qs[0]); break;
      case Op::Y: st.y(qs[0]); break;
      case Op::Z: st.z(qs[0]); break;
      case Op::T:
      case Op::TDG:
        taint[qs[0]] = true;
        break;
      case Op::CCZ:
        for (uint32_t q : qs) taint[q] = true;
        break;
      case Op::CNOT:
        st.cnot(qs[0], qs[1]);
        if (taint[qs[0]] || taint[qs[1]]) taint[qs[0]] = taint[qs[1]] = true;
        break;
      case Op::MEASURE:
        st.measure(qs[0], ins.record, rng);
        break;
      case Op::RESET:
        st.reset(qs[0], rng);
        taint[qs[0]] = false;
        break;
      case Op::COND_PAULI:
        if (!ins.parity.empty() && ins.pauli != 'Z' && c.feed_forward) taint[qs[0]] = true;
        break;
      case Op::NOISE:
      case Op::BARRIER:
        break;
    }
    out[k].resize(qs.size());
    for (size_t i = 0; i < qs.size(); i++) {
      auto z = st.peek_z(qs[i]);
      out[k][i] = !taint[qs[i]] && z.has_value() && !*z;
    }
  }
  return out;
}

bool counts_as_operation(const Circuit &c, const Instruction &ins) {
  if (ins.op == Op::NOISE || ins.op == Op::BARRIER) return false;
  if (ins.op == Op::COND_PAULI && !c.feed_forward) return false;
  return true;
}

}  // namespace

std::vector<IdleInterval> idle_intervals(const Circuit &c) {
  if (!c.scheduled()) throw std::logic_error("idle analysis needs a scheduled circuit");
  auto zero_after = known_zero_after(c);
  std::vector<bool> zero(c.num_qubits, true);
  for (uint32_t q : c.inputs) zero[q] = false;
  for (uint32_t q : c.spectators) zero[q] = false;
  std::vector<bool> is_output(c.num_qubits, false);
  for (uint32_t q : c.outputs) is_output[q] = true;

  // Per-qubit operation lists in time order.
  std::vector<std::vector<std::pair<size_t, size_t>>> ops(c.num_qubits);  // (instr, slot)
  for (size_t k = 0; k < c.instructions.size(); k++) {
    const auto &ins = c.instructions[k];
    if (!counts_as_operation(c, ins)) continue;
    for (size_t i = 0; i < ins.qubits.size(); i++) ops[ins.qubits[i]].push_back({k, i});
  }
  const double end = c.makespan();
  const double eps = 1e-12;
  std::vector<IdleInterval> out;
  for (uint32_t q = 0; q < c.num_qubits; q++) {
    auto &list = ops[q];
    std::stable_sort(list.begin(), list.end(), [&](auto a, auto b) {
      return c.instructions[a.first].start < c.instructions[b.first].start;
    });
    double t = 0;
    bool z = zero[q];
    for (auto [k, slot] : list) {
      const auto &ins = c.instructions[k];
      if (!z && ins.start > t + eps) out.push_back({q, t, ins.start - t, k});
      t = std::max(t, ins.start + ins.duration);
      z = zero_after[k][slot];
    }
    if (!z && is_output[q] && end > t + eps) {
      out.push_back({q, t, end - t, std::numeric_limits<size_t>::max()});
    }
  }
  return out;
}

InstructionTally tally(const Circuit &c) {
  InstructionTally t;
  if (c.instructions.empty()) return t;
  for (const auto &iv : idle_intervals(c)) t.t_idle += iv.duration;
  std::set<double> ff_times;
  for (const auto &ins : c.instructions) {
    if (ins.op == Op::CNOT) t.n_cnot++;
    if (ins.op == Op::MEASURE) t.n_meas++;
    // In post-processing mode the corrections are classical.
    if (ins.op == Op::COND_PAULI && c.feed_forward) {
      t.n_feed_forward++;
      ff_times.insert(ins.start);
    }
  }
  t.feed_forward_steps = ff_times.size();
  t.depth = c.makespan();
  return t;
}

void to_json(nlohmann::json &j, const InstructionTally &t) {
  j = {{"t_idle", t.t_idle},
       {"n_cnot", t.n_cnot},
       {"n_meas", t.n_meas},
       {"depth", t.depth},
       {"n_feed_forward", t.n_feed_forward},
       {"feed_forward_steps", t.feed_forward_steps}};
}

}  // namespace dyncirc
