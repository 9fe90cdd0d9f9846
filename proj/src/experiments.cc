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

#include "dyncirc/experiments.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "dyncirc/builders.h"
#include "dyncirc/certify.h"
#include "dyncirc/dense.h"
#include "dyncirc/rng.h"
#include "dyncirc/simulator.h"

namespace dyncirc {

void ExperimentConfig::validate() const {
  if (family != "cnot" && family != "ghz") throw std::invalid_argument("family must be cnot or ghz");
  for (const auto &v : variants) {
    if (family == "cnot" && v != "dynamic" && v != "Ia" && v != "Ib" && v != "Ic" && v != "II") {
      throw std::invalid_argument("unknown cnot variant '" + v + "'");
    }
    if (family == "ghz" && v != "dynamic" && v != "unitary") {
      throw std::invalid_argument("unknown ghz method '" + v + "'");
    }
  }
  if (step < 1 || n_min < 1 || n_max < n_min) throw std::invalid_argument("empty size range");
  if (shots < 1 || m_samples < 1) throw std::invalid_argument("shots and m_samples must be >= 1");
  if (mode != "feed_forward" && mode != "post_process" && mode != "noiseless") {
    throw std::invalid_argument("mode must be feed_forward, post_process or noiseless");
  }
  if (cnot_pauli.size() != 2) throw std::invalid_argument("cnot_pauli needs two letters");
  noise.validate();
}

std::vector<int> ExperimentConfig::sizes() const {
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += step) out.push_back(n);
  return out;
}

void to_json(nlohmann::json &j, const ExperimentConfig &c) {
  j = {{"family", c.family},
       {"variants", c.variants},
       {"n_min", c.n_min},
       {"n_max", c.n_max},
       {"step", c.step},
       {"noise", c.noise},
       {"cnot_pauli", c.cnot_pauli},
       {"meas_pauli", std::string(1, c.meas_pauli)},
       {"shots", c.shots},
       {"m_samples", c.m_samples},
       {"seed", c.seed},
       {"out", c.out},
       {"mode", c.mode},
       {"lambda_cnots", c.lambda_cnots},
       {"lambda_meas_grid", c.lambda_meas}};
}

void from_json(const nlohmann::json &j, ExperimentConfig &c) {
  c = ExperimentConfig{};
  c.family = j.value("family", c.family);
  c.variants = j.value("variants", c.variants);
  c.n_min = j.value("n_min", c.n_min);
  c.n_max = j.value("n_max", c.n_max);
  c.step = j.value("step", c.step);
  // Noise fields may sit at top level or under "noise".
  c.noise = j.contains("noise") ? j["noise"].get<NoiseParams>() : j.get<NoiseParams>();
  c.cnot_pauli = j.value("cnot_pauli", c.cnot_pauli);
  std::string mp = j.value("meas_pauli", std::string("X"));
  if (mp.size() != 1 || (mp[0] != 'X' && mp[0] != 'Y' && mp[0] != 'Z')) {
    throw std::invalid_argument("meas_pauli must be X, Y or Z");
  }
  c.meas_pauli = mp[0];
  c.shots = j.value("shots", c.shots);
  c.m_samples = j.value("m_samples", c.m_samples);
  c.seed = j.value("seed", c.seed);
  c.out = j.value("out", c.out);
  c.mode = j.value("mode", c.mode);
  c.lambda_cnots = j.value("lambda_cnots", c.lambda_cnots);
  c.lambda_meas = j.value("lambda_meas_grid", c.lambda_meas);
  if (c.variants.empty()) {
    c.variants = c.family == "ghz" ? std::vector<std::string>{"unitary", "dynamic"}
                                   : std::vector<std::string>{"dynamic", "Ia", "Ib", "Ic", "II"};
  }
  c.validate();
}

PauliString embed(const PauliString &p, const std::vector<uint32_t> &where, size_t n) {
  if (where.size() != p.num_qubits()) throw std::invalid_argument("embed size mismatch");
  PauliString out(n);
  for (size_t k = 0; k < where.size(); k++) out.set(where[k], p.get(k));
  out.set_phase(p.phase());
  return out;
}

namespace {

// Eigenstates: which / 2 picks X, Y, Z; odd which is the -1 eigenstate.
void prepare(Shot &shot, uint32_t q, int which) {
  char c = "XYZ"[which / 2];
  if (which & 1) shot.apply(Op::X, {q});
  if (c == 'X' || c == 'Y') shot.apply(Op::H, {q});
  if (c == 'Y') shot.apply(Op::S, {q});
}

PauliString eigen_pauli(int which) {
  PauliString p(1);
  p.set(0, "XYZ"[which / 2]);
  p.set_negative(which & 1);
  return p;
}

int workers(int t) { return t > 0 ? t : omp_get_max_threads(); }

}  // namespace

bool cnot_stabilizer_io_check(const Circuit &c, uint64_t seed, std::string *why, size_t shots_per_pair) {
  if (c.inputs.size() != 2 || c.outputs.size() != 2) throw std::invalid_argument("need two inputs and outputs");
  RunOptions ro;
  ro.noisy = false;
  for (int a = 0; a < 6; a++) {
    for (int b = 0; b < 6; b++) {
      // Input stabilizers, pushed through an ideal CNOT.
      std::vector<PauliString> expect;
      for (int side = 0; side < 2; side++) {
        PauliString p(2);
        PauliString e = eigen_pauli(side == 0 ? a : b);
        p.set(side, e.get(0));
        p.set_negative(e.negative());
        p.conj_cnot(0, 1);
        expect.push_back(embed(p, c.outputs, c.num_qubits));
      }
      for (size_t k = 0; k < shots_per_pair; k++) {
        auto rng = stream_rng(seed, static_cast<uint64_t>((a * 6 + b) * shots_per_pair + k));
        Shot shot(c.num_qubits, c);
        prepare(shot, c.inputs[0], a);
        prepare(shot, c.inputs[1], b);
        shot.run(c, rng, ro);
        for (const auto &s : expect) {
          int v = shot.expectation(s);
          if (v != 1) {
            if (why) {
              *why = "input " + eigen_pauli(a).str() + "," + eigen_pauli(b).str() + ": <" + s.str() +
                     "> = " + std::to_string(v) + " in shot " + std::to_string(k);
            }
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool ghz_stabilizer_check(const Circuit &c, uint64_t seed, std::string *why, size_t shots) {
  const size_t n = c.outputs.size();
  GhzStabilizerGroup g(n);
  RunOptions ro;
  ro.noisy = false;
  for (size_t k = 0; k < shots; k++) {
    auto rng = stream_rng(seed, k);
    Shot shot(c.num_qubits, c);
    shot.run(c, rng, ro);
    for (size_t i = 0; i < n; i++) {
      PauliString s = embed(g.generator(i), c.outputs, c.num_qubits);
      int v = shot.expectation(s);
      if (v != 1) {
        if (why) *why = "<" + g.generator(i).str() + "> = " + std::to_string(v) + " in shot " + std::to_string(k);
        return false;
      }
    }
  }
  return true;
}

std::vector<VerifyRow> run_verify_suite(int threads) {
  (void)threads;
  std::vector<VerifyRow> rows;
  auto dense_row = [&](const std::string &fam, int size, const Circuit &c, const Matrix &target) {
    double f = process_fidelity(c, target, {.noisy = false});
    bool ok = std::abs(f - 1) < 1e-10;
    rows.push_back({fam, size, "dense_choi", ok, "F_proc=" + fmt(f)});
  };
  auto stab_row = [&](const std::string &fam, int size, const Circuit &c) {
    std::string why;
    bool ok = cnot_stabilizer_io_check(c, 7, &why);
    rows.push_back({fam, size, "stabilizer_io_36", ok, why});
  };
  for (auto mode : {DynamicMode::FeedForward, DynamicMode::PostProcess}) {
    std::string fam = "cnot_dynamic_" + std::string(mode_name(mode));
    for (uint32_t n = 1; n <= 8; n++) dense_row(fam, n, long_range_cnot_dynamic(n, mode), cnot_matrix());
    for (uint32_t n : {16u, 32u, 99u}) stab_row(fam, n, long_range_cnot_dynamic(n, mode));
  }
  for (auto v : {CnotVariant::Ia, CnotVariant::Ib, CnotVariant::Ic, CnotVariant::II}) {
    std::string fam = "cnot_" + std::string(variant_name(v));
    for (uint32_t n = (v == CnotVariant::II ? 2 : 1); n <= 6; n++) {
      dense_row(fam, n, long_range_cnot_unitary(v, n), cnot_matrix());
    }
    for (uint32_t n : {16u, 32u}) stab_row(fam, n, long_range_cnot_unitary(v, n));
  }
  for (std::string method : {"unitary", "dynamic"}) {
    for (uint32_t n : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 10u, 12u, 16u, 32u, 64u, 100u, 101u}) {
      Circuit c = method == "unitary" ? ghz_unitary(n) : ghz_dynamic(n);
      std::string why;
      bool ok = ghz_stabilizer_check(c, 11, &why);
      rows.push_back({"ghz_" + method, static_cast<int>(n), "stabilizer_generators", ok, why});
      if (n <= 12) {
        StateVector target(n);
        target.amps()[0] = 1 / std::sqrt(2.0);
        target.amps()[(size_t{1} << n) - 1] = 1 / std::sqrt(2.0);
        double f = output_state_fidelity(c, target, {.noisy = false});
        rows.push_back({"ghz_" + method, static_cast<int>(n), "dense_state", std::abs(f - 1) < 1e-10,
                        "F=" + fmt(f)});
      }
    }
  }
  for (uint32_t n = 1; n <= 4; n++) {
    Circuit c = ccz_dynamic(n);
    dense_row("ccz_dynamic", n, c, ccz_matrix());
    auto t = tally(c);
    bool ok = t.n_meas == n + 1 && t.n_cnot == n + 6;
    rows.push_back({"ccz_dynamic", static_cast<int>(n), "counts", ok,
                    "meas=" + std::to_string(t.n_meas) + " cnot=" + std::to_string(t.n_cnot)});
  }
  return rows;
}

namespace {

bool post_process(const ExperimentConfig &cfg) { return cfg.mode == "post_process"; }
bool noiseless(const ExperimentConfig &cfg) { return cfg.mode == "noiseless"; }

NoiseParams effective_noise(const ExperimentConfig &cfg) {
  NoiseParams p = cfg.noise;
  if (noiseless(cfg)) p = NoiseParams{};
  if (post_process(cfg)) p.mu = 0;
  return p;
}

uint64_t point_seed(uint64_t master, int n, const std::string &variant) {
  // FNV-1a over the variant name keeps the stream independent of ordering.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : variant) h = (h ^ static_cast<uint8_t>(ch)) * 0x100000001b3ULL;
  return derive_seed(derive_seed(master, static_cast<uint64_t>(n)), h);
}

}  // namespace

namespace {

Circuit bare_circuit(const ExperimentConfig &cfg, const std::string &variant, int n) {
  const NoiseParams p = effective_noise(cfg);
  const DynamicMode mode = post_process(cfg) ? DynamicMode::PostProcess : DynamicMode::FeedForward;
  const uint32_t un = static_cast<uint32_t>(n);
  if (cfg.family == "ghz") return variant == "dynamic" ? ghz_dynamic(un, mode, p.mu) : ghz_unitary(un);
  if (variant == "dynamic") return long_range_cnot_dynamic(un, mode, p.mu);
  return long_range_cnot_unitary(variant_from_name(variant), un);
}

}  // namespace

Circuit sweep_circuit(const ExperimentConfig &cfg, const std::string &variant, int n) {
  NoiseAttachOptions o;
  o.cnot_pauli = cfg.cnot_pauli;
  o.meas_pauli = cfg.meas_pauli;
  return attach_noise(bare_circuit(cfg, variant, n), effective_noise(cfg), o);
}

ErrorBudget sweep_budget(const ExperimentConfig &cfg, const std::string &variant, int n) {
  // Counts of the circuit actually simulated. They equal the closed forms
  // wherever those apply (odd sizes of Ib, Ic and II are built differently).
  auto t = tally(bare_circuit(cfg, variant, n));
  ModelTally m{t.t_idle, static_cast<double>(t.n_cnot), static_cast<double>(t.n_meas), t.depth};
  return budget_from_tally(m, effective_noise(cfg));
}

std::vector<CnotSweepRow> cnot_sweep(const ExperimentConfig &cfg) {
  cfg.validate();
  if (cfg.family != "cnot") throw std::invalid_argument("cnot-sweep needs family cnot");
  std::vector<std::pair<int, std::string>> points;
  for (int n : cfg.sizes()) {
    for (const auto &v : cfg.variants) points.emplace_back(n, v);
  }
  std::vector<CnotSweepRow> rows(points.size());
  const long np = static_cast<long>(points.size());
  std::string error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers(cfg.threads))
  for (long i = 0; i < np; i++) {
    try {
      const auto &[n, v] = points[i];
      ErrorBudget b = sweep_budget(cfg, v, n);
      Circuit c = sweep_circuit(cfg, v, n);
      CertifyOptions co;
      co.m_samples = cfg.m_samples;
      co.shots_per_sample = cfg.shots;
      co.seed = point_seed(cfg.seed, n, v);
      co.threads = 1;
      co.noisy = !noiseless(cfg);
      CnotEstimate e = estimate_cnot_gate_fidelity(c, co);
      rows[i] = {n, v, b.fidelity_lower_bound, (4 * b.fidelity_lower_bound + 1) / 5, e.gate_fidelity, e.std_err};
    } catch (const std::exception &ex) {
#pragma omp critical
      if (error.empty()) error = ex.what();
    }
  }
  if (!error.empty()) throw std::runtime_error(error);
  return rows;
}

std::vector<GhzSweepRow> ghz_sweep(const ExperimentConfig &cfg) {
  cfg.validate();
  if (cfg.family != "ghz") throw std::invalid_argument("ghz-sweep needs family ghz");
  std::vector<std::pair<int, std::string>> points;
  for (int n : cfg.sizes()) {
    if (n % 2 != 0 || n < 2) throw std::invalid_argument("GHZ sweep sizes must be even");
    for (const auto &v : cfg.variants) points.emplace_back(n, v);
  }
  std::vector<GhzSweepRow> rows(points.size());
  const long np = static_cast<long>(points.size());
  std::string error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers(cfg.threads))
  for (long i = 0; i < np; i++) {
    try {
      const auto &[n, v] = points[i];
      ErrorBudget b = sweep_budget(cfg, v, n);
      Circuit c = sweep_circuit(cfg, v, n);
      CertifyOptions co;
      co.m_samples = cfg.m_samples;
      co.shots_per_sample = cfg.shots;
      co.seed = point_seed(cfg.seed, n, v);
      co.threads = 1;
      co.noisy = !noiseless(cfg);
      GhzEstimate e = estimate_ghz_fidelity(c, static_cast<size_t>(n), co);
      rows[i] = {n, v, b.fidelity_lower_bound, e.fidelity, e.std_err, e.fidelity - 2 * e.std_err > 0.5};
    } catch (const std::exception &ex) {
#pragma omp critical
      if (error.empty()) error = ex.what();
    }
  }
  if (!error.empty()) throw std::runtime_error(error);
  return rows;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string to_csv(const std::vector<CnotSweepRow> &rows) {
  std::ostringstream os;
  os << "n,variant,model_bound_Fproc,model_Fgate,simulated_Fgate,std_err\r\n";
  for (const auto &r : rows) {
    os << r.n << ',' << r.variant << ',' << fmt(r.model_bound_fproc) << ',' << fmt(r.model_fgate) << ','
       << fmt(r.simulated_fgate) << ',' << fmt(r.std_err) << "\r\n";
  }
  return os.str();
}

std::string to_csv(const std::vector<GhzSweepRow> &rows) {
  std::ostringstream os;
  os << "n,method,model_bound,simulated_F,std_err,entangled_flag\r\n";
  for (const auto &r : rows) {
    os << r.n << ',' << r.method << ',' << fmt(r.model_bound) << ',' << fmt(r.simulated_f) << ','
       << fmt(r.std_err) << ',' << (r.entangled ? "true" : "false") << "\r\n";
  }
  return os.str();
}

std::string to_csv(const std::vector<CrossoverRow> &rows) {
  std::ostringstream os;
  os << "lambda_cnot,lambda_meas,n_cross,F_cross\r\n";
  for (const auto &r : rows) {
    os << fmt(r.lambda_cnot) << ',' << fmt(r.lambda_meas) << ',';
    if (r.result.n_cross) {
      os << *r.result.n_cross << ',' << fmt(r.result.f_cross);
    } else {
      os << ',';
    }
    os << "\r\n";
  }
  return os.str();
}

nlohmann::json sidecar(const ExperimentConfig &cfg, const std::string &command, bool reproducible) {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = cfg;
  j["reproducible"] = reproducible;
  if (!reproducible) {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    j["generated_at"] = buf;
  }
  return j;
}

}  // namespace dyncirc
