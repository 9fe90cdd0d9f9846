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

#include "dyncirc/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <omp.h>

namespace dyncirc {

double omega(double lambda) {
  if (!(lambda >= 0)) throw std::invalid_argument("omega needs lambda >= 0");
  if (std::isinf(lambda)) return 0.5;
  return -std::expm1(-2 * lambda) / 2;
}

void PauliLindbladChannel::add(const PauliString &p, double lambda) {
  if (p.num_qubits() != n_) throw std::invalid_argument("channel term has the wrong size");
  if (!(lambda >= 0)) throw std::invalid_argument("channel rates must be nonnegative");
  if (p.is_identity_up_to_sign() || lambda == 0) return;
  PauliString key = p;
  key.set_phase(0);
  terms_[key] += lambda;
}

void PauliLindbladChannel::compose(const PauliLindbladChannel &other) {
  for (const auto &[p, l] : other.terms_) add(p, l);
}

double PauliLindbladChannel::total_rate() const {
  double s = 0;
  for (const auto &[p, l] : terms_) s += l;
  return s;
}

double PauliLindbladChannel::fidelity_lower_bound() const { return std::exp(-total_rate()); }

double PauliLindbladChannel::no_cancellation_fidelity() const {
  double f = 1;
  for (const auto &[p, l] : terms_) f *= 1 - omega(l);
  return f;
}

PauliLindbladChannel damping_to_pauli(double t, double t1, double t2) {
  if (!(t1 > 0) || !(t2 > 0)) throw std::invalid_argument("T1 and T2 must be positive");
  if (!(t >= 0)) throw std::invalid_argument("time must be nonnegative");
  PauliLindbladChannel ch(1);
  ch.add(PauliString::from_str("X"), t / (4 * t1));
  ch.add(PauliString::from_str("Y"), t / (4 * t1));
  ch.add(PauliString::from_str("Z"), t / (2 * t2));
  return ch;
}

double depolarizing_rate(size_t n, double q) {
  if (!(q > 0 && q <= 1)) throw std::invalid_argument("depolarizing q must lie in (0, 1]");
  if (n == 0 || n > 15) throw std::invalid_argument("depolarizing n out of range");
  return -std::log(q) / std::ldexp(1.0, 2 * static_cast<int>(n));
}

PauliLindbladChannel depolarizing_channel(size_t n, double q) {
  double l = depolarizing_rate(n, q);
  PauliLindbladChannel ch(n);
  for (size_t code = 1; code < (size_t{1} << (2 * n)); code++) {
    PauliString p(n);
    for (size_t j = 0; j < n; j++) p.set(j, "IXYZ"[(code >> (2 * j)) & 3]);
    ch.add(p, l);
  }
  return ch;
}

double twirl_coefficient(const PauliLindbladChannel &ch, const PauliString &q) {
  if (q.num_qubits() != ch.num_qubits()) throw std::invalid_argument("twirl coefficient dimension mismatch");
  double s = 0;
  for (const auto &[p, l] : ch.terms()) {
    if (!commutes(p, q)) s += l;
  }
  return std::exp(-2 * s);
}

Circuit channel_circuit(const PauliLindbladChannel &ch) {
  const uint32_t n = static_cast<uint32_t>(ch.num_qubits());
  Circuit c(n, "channel");
  for (uint32_t q = 0; q < n; q++) {
    c.inputs.push_back(q);
    c.outputs.push_back(q);
  }
  for (const auto &[p, l] : ch.terms()) {
    std::vector<uint32_t> qs;
    std::string letters;
    for (uint32_t q = 0; q < n; q++) {
      if (p.get(q) != 'I') {
        qs.push_back(q);
        letters.push_back(p.get(q));
      }
    }
    c.noise(letters, qs, l);
  }
  c.schedule();
  return c;
}

PropagatedTerm propagate(const Circuit &c, size_t position, const PauliString &p, double rate) {
  if (p.num_qubits() != c.num_qubits) throw std::invalid_argument("Pauli size does not match circuit");
  if (!(rate >= 0)) throw std::invalid_argument("negative rate");
  PauliString e = p;
  std::vector<bool> flipped(c.num_records, false);
  for (size_t k = position; k < c.instructions.size(); k++) {
    const auto &ins = c.instructions[k];
    const auto &qs = ins.qubits;
    switch (ins.op) {
      case Op::H: e.conj_h(qs[0]); break;
      case Op::S: e.conj_s(qs[0]); break;
      case Op::SDG: e.conj_sdg(qs[0]); break;
      case Op::X: case Op::Y: case Op::Z: break;
      case Op::CNOT: e.conj_cnot(qs[0], qs[1]); break;
      case Op::T:
      case Op::TDG:
      case Op::CCZ:
        for (uint32_t q : qs) {
          if (e.x(q)) {
            throw UnsupportedPropagation("cannot propagate " + e.str() + " through " +
                                         std::string(op_name(ins.op)));
          }
        }
        break;
      case Op::MEASURE:
        if (e.x(qs[0])) flipped[ins.record] = true;
        e.set_z(qs[0], false);
        break;
      case Op::RESET:
        e.set_x(qs[0], false);
        e.set_z(qs[0], false);
        break;
      case Op::COND_PAULI: {
        bool odd = false;
        for (uint32_t r : ins.parity) odd ^= flipped[r];
        if (odd) e.mul_inplace(PauliString::single(c.num_qubits, qs[0], ins.pauli));
        break;
      }
      case Op::NOISE:
      case Op::BARRIER:
        break;
    }
  }
  std::vector<bool> keep(c.num_qubits, false);
  for (uint32_t q : c.outputs) keep[q] = true;
  for (uint32_t q = 0; q < c.num_qubits; q++) {
    if (!keep[q]) {
      e.set_x(q, false);
      e.set_z(q, false);
    }
  }
  e.set_phase(0);
  return {e, rate};
}

void NoiseParams::validate() const {
  for (double v : {lambda_idle, lambda_cnot, lambda_meas, mu}) {
    if (!(v >= 0)) throw std::invalid_argument("noise parameters must be nonnegative");
  }
  if (t1.has_value() != t2.has_value()) throw std::invalid_argument("t1 and t2 must be given together");
  if (t1 && (!(*t1 > 0) || !(*t2 > 0))) throw std::invalid_argument("t1 and t2 must be positive");
}

std::vector<std::string> NoiseParams::warnings() const {
  std::vector<std::string> w;
  if (t1 && t2 && *t2 > 2 * *t1) w.push_back("t2 > 2*t1 is unphysical");
  return w;
}

void to_json(nlohmann::json &j, const NoiseParams &p) {
  j = {{"lambda_idle", p.lambda_idle},
       {"lambda_cnot", p.lambda_cnot},
       {"lambda_meas", p.lambda_meas},
       {"mu", p.mu}};
  if (p.t1) j["t1"] = *p.t1;
  if (p.t2) j["t2"] = *p.t2;
}

void from_json(const nlohmann::json &j, NoiseParams &p) {
  p.lambda_idle = j.value("lambda_idle", 0.0);
  p.lambda_cnot = j.value("lambda_cnot", 0.0);
  p.lambda_meas = j.value("lambda_meas", 0.0);
  p.mu = j.value("mu", 0.0);
  p.t1.reset();
  p.t2.reset();
  if (j.contains("t1") && !j["t1"].is_null()) p.t1 = j["t1"].get<double>();
  if (j.contains("t2") && !j["t2"].is_null()) p.t2 = j["t2"].get<double>();
  p.validate();
}

Circuit attach_noise(const Circuit &c, const NoiseParams &p, const NoiseAttachOptions &o) {
  p.validate();
  if (o.cnot_pauli.size() != 2) throw std::invalid_argument("cnot_pauli needs two letters");
  auto idle = idle_intervals(c);
  std::vector<std::vector<IdleInterval>> before(c.instructions.size() + 1);
  for (const auto &iv : idle) {
    size_t slot = iv.before == std::numeric_limits<size_t>::max() ? c.instructions.size() : iv.before;
    before[slot].push_back(iv);
  }
  Circuit out = c;
  out.instructions.clear();
  auto add_idle = [&](const IdleInterval &iv) {
    if (p.t1) {
      auto ch = damping_to_pauli(iv.duration, *p.t1, *p.t2);
      for (const auto &[pauli, l] : ch.terms()) out.noise(std::string(1, pauli.get(0)), {iv.qubit}, l);
    } else if (p.lambda_idle > 0) {
      out.noise("Z", {iv.qubit}, p.lambda_idle * iv.duration);
    }
  };
  for (size_t k = 0; k < c.instructions.size(); k++) {
    for (const auto &iv : before[k]) add_idle(iv);
    const auto &ins = c.instructions[k];
    if (ins.op == Op::MEASURE && p.lambda_meas > 0) {
      out.noise(std::string(1, o.meas_pauli), ins.qubits, p.lambda_meas);
    }
    out.instructions.push_back(ins);
    if (ins.op == Op::CNOT && p.lambda_cnot > 0) {
      std::string letters;
      std::vector<uint32_t> qs;
      for (size_t i = 0; i < 2; i++) {
        if (o.cnot_pauli[i] != 'I') {
          letters.push_back(o.cnot_pauli[i]);
          qs.push_back(ins.qubits[i]);
        }
      }
      if (!qs.empty()) out.noise(letters, qs, p.lambda_cnot);
    }
  }
  for (const auto &iv : before[c.instructions.size()]) add_idle(iv);
  out.schedule();
  return out;
}

namespace {

constexpr std::pair<Family, const char *> kFamilies[] = {
    {Family::cnot_dynamic, "cnot_dynamic"}, {Family::cnot_Ia, "cnot_Ia"},
    {Family::cnot_Ib, "cnot_Ib"},           {Family::cnot_Ic, "cnot_Ic"},
    {Family::cnot_II, "cnot_II"},           {Family::cnot_II_normed, "cnot_II_normed"},
    {Family::ghz_unitary, "ghz_unitary"},   {Family::ghz_dynamic, "ghz_dynamic"},
};

}  // namespace

Family family_from_name(std::string_view name) {
  for (const auto &[f, s] : kFamilies) {
    if (name == s) return f;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  for (const auto &[g, s] : kFamilies) {
    if (f == g) return s;
  }
  return "?";
}

ModelTally closed_form_tally(Family f, int size, double mu) {
  const double n = size;
  switch (f) {
    case Family::cnot_dynamic:
    case Family::cnot_Ia:
    case Family::cnot_Ib:
    case Family::cnot_Ic:
    case Family::cnot_II:
    case Family::cnot_II_normed:
      if (size < 1) throw std::invalid_argument("CNOT families need size >= 1");
      break;
    case Family::ghz_unitary:
    case Family::ghz_dynamic:
      if (size < 2 || size % 2 != 0) throw std::invalid_argument("GHZ budgets need even n >= 2");
      break;
  }
  switch (f) {
    case Family::cnot_dynamic: return {2 * mu + 2, n + 1, n, 2 + mu};
    case Family::cnot_Ia: return {n * n + 2 * n, 2 * n + 1, 0, 2 * n + 1};
    case Family::cnot_Ib: return {n * n / 4 + n, 3 * n + 1, 0, 2 * n + 1};
    case Family::cnot_Ic: return {0, 4 * n + 1, 0, 2 * n + 1};
    case Family::cnot_II: return {0.75 * n * n - 1.5 * n, 3 * n + 1, 0, 1.5 * n + 1};
    case Family::cnot_II_normed:
      // Printed closed form, not the tally.
      return {3.0 / 16 * n * n - 15.0 / 8 * n + 45.0 / 16, 1.5 * n - 2, 0, 0.75 * n - 1.25};
    case Family::ghz_unitary: return {n * n / 4 - 1.5 * n + 2, n - 1, 0, n - 1};
    case Family::ghz_dynamic: return {1 + mu * n / 2, 1.5 * n - 2, n / 2 - 1, 3 + mu};
  }
  throw std::invalid_argument("unknown family");
}

ErrorBudget budget_from_tally(const ModelTally &t, const NoiseParams &p) {
  ErrorBudget b;
  b.tally = t;
  b.lambda_tot = t.t_idle * p.lambda_idle + t.n_cnot * p.lambda_cnot + t.n_meas * p.lambda_meas;
  b.fidelity_lower_bound = std::exp(-b.lambda_tot);
  return b;
}

ErrorBudget budget(Family f, int size, const NoiseParams &p) {
  p.validate();
  return budget_from_tally(closed_form_tally(f, size, p.mu), p);
}

void to_json(nlohmann::json &j, const ErrorBudget &b) {
  j = {{"t_idle", b.tally.t_idle},   {"n_cnot", b.tally.n_cnot},       {"n_meas", b.tally.n_meas},
       {"depth", b.tally.depth},     {"lambda_tot", b.lambda_tot},     {"fidelity_lower_bound", b.fidelity_lower_bound}};
}

double gate_fidelity_from_process(double f_proc, int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(f_proc >= 0 && f_proc <= 1)) throw std::invalid_argument("process fidelity must lie in [0, 1]");
  return (d * f_proc + 1) / (d + 1);
}

Crossover crossover(Family dynamic, const std::vector<Family> &unitary, const NoiseParams &p, int n_min,
                    int step, int n_max) {
  for (int n = n_min; n <= n_max; n += step) {
    double fd = budget(dynamic, n, p).fidelity_lower_bound;
    double best = 0;
    for (Family u : unitary) best = std::max(best, budget(u, n, p).fidelity_lower_bound);
    if (fd > best) return {n, fd};
  }
  return {};
}

Crossover crossover_ghz(const NoiseParams &p, int n_max) {
  return crossover(Family::ghz_dynamic, {Family::ghz_unitary}, p, 2, 2, n_max);
}

Crossover crossover_cnot(const NoiseParams &p, int n_max) {
  return crossover(Family::cnot_dynamic, {Family::cnot_Ia, Family::cnot_Ib, Family::cnot_Ic}, p, 1, 1, n_max);
}

std::vector<CrossoverRow> crossover_grid(bool ghz, const NoiseParams &base, const std::vector<double> &lc,
                                         const std::vector<double> &lm, int threads) {
  std::vector<CrossoverRow> rows(lc.size() * lm.size());
  int t = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(t)
  for (int64_t k = 0; k < static_cast<int64_t>(rows.size()); k++) {
    NoiseParams p = base;
    p.lambda_cnot = lc[k / lm.size()];
    p.lambda_meas = lm[k % lm.size()];
    rows[k] = {p.lambda_cnot, p.lambda_meas, ghz ? crossover_ghz(p) : crossover_cnot(p)};
  }
  return rows;
}

double ghz_meas_boundary(const NoiseParams &base, double threshold, double resolution, double upper) {
  double last_ok = -1;
  const int steps = static_cast<int>(std::lround(upper / resolution));
  for (int i = 0; i <= steps; i++) {
    NoiseParams p = base;
    p.lambda_meas = i * resolution;
    Crossover c = crossover_ghz(p);
    if (c.n_cross && c.f_cross > threshold) {
      last_ok = p.lambda_meas;
    } else if (last_ok >= 0) {
      break;
    }
  }
  return last_ok;
}

}  // namespace dyncirc
