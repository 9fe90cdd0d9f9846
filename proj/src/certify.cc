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

#include "dyncirc/certify.h"

#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "dyncirc/rng.h"
#include "dyncirc/simulator.h"

namespace dyncirc {

GhzStabilizerGroup::GhzStabilizerGroup(size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("GHZ stabilizer group needs n >= 2");
  PauliString g0(n);
  for (size_t q = 0; q < n; q++) g0.set(q, 'X');
  gens_.push_back(g0);
  for (size_t i = 1; i < n; i++) {
    PauliString g(n);
    g.set(i - 1, 'Z');
    g.set(i, 'Z');
    gens_.push_back(g);
  }
}

PauliString GhzStabilizerGroup::at(const std::vector<bool> &mask) const {
  if (mask.size() != n_) throw std::invalid_argument("mask size must equal n");
  PauliString p(n_);
  for (size_t i = 0; i < n_; i++) {
    if (mask[i]) p.mul_inplace(gens_[i]);
  }
  return p;
}

PauliString GhzStabilizerGroup::at(uint64_t mask) const {
  if (n_ > 64) throw std::invalid_argument("integer masks need n <= 64");
  std::vector<bool> m(n_);
  for (size_t i = 0; i < n_; i++) m[i] = (mask >> i) & 1;
  return at(m);
}

GhzStabilizerGroup ghz_stabilizer_group(size_t n) { return GhzStabilizerGroup(n); }

namespace {

// Measures the observable p (on qubits `where`) by rotating to Z. Returns +-1.
int measure_pauli(Shot &shot, PauliString p, const std::vector<uint32_t> &where,
                  std::mt19937_64 &rng) {
  for (size_t k = 0; k < where.size(); k++) {
    char c = p.get(k);
    if (c == 'X') {
      shot.apply(Op::H, {where[k]});
      p.conj_h(k);
    } else if (c == 'Y') {
      shot.apply(Op::SDG, {where[k]});
      p.conj_sdg(k);
      shot.apply(Op::H, {where[k]});
      p.conj_h(k);
    }
  }
  int v = p.sign();
  for (size_t k = 0; k < where.size(); k++) {
    if (p.get(k) == 'I') continue;
    if (shot.measure(where[k], rng)) v = -v;
  }
  return v;
}

// Eigenstate of single-qubit Pauli c with eigenvalue e, from |0>.
void prepare_eigenstate(Shot &shot, uint32_t q, char c, int e) {
  if (e < 0) shot.apply(Op::X, {q});
  if (c == 'X' || c == 'Y') shot.apply(Op::H, {q});
  if (c == 'Y') shot.apply(Op::S, {q});
}

struct MeanErr {
  double mean;
  double err;
};

MeanErr mean_and_error(const std::vector<double> &v, size_t shots) {
  const double m = static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += x;
  double mean = s / m;
  if (v.size() < 2) {
    double var = std::max(0.0, 1 - mean * mean) / static_cast<double>(shots);
    return {mean, std::sqrt(var)};
  }
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (m - 1) / m)};
}

int resolve_threads(int t) { return t > 0 ? t : omp_get_max_threads(); }

}  // namespace

GhzEstimate estimate_ghz_fidelity(const Circuit &source, size_t n, const CertifyOptions &opt) {
  if (source.outputs.size() != n) throw std::invalid_argument("source outputs do not match n");
  if (opt.m_samples == 0 || opt.shots_per_sample == 0) throw std::invalid_argument("need m >= 1 and shots >= 1");
  source.validate();
  GhzStabilizerGroup group(n);
  std::vector<StabilizerSample> samples(opt.m_samples, {0, PauliString(n), 0, 0});
  RunOptions ro;
  ro.noisy = opt.noisy;
  const long m = static_cast<long>(opt.m_samples);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(opt.threads))
  for (long i = 0; i < m; i++) {
    auto rng = stream_rng(opt.seed, static_cast<uint64_t>(i));
    std::vector<bool> mask(n);
    for (size_t b = 0; b < n; b++) mask[b] = coin(rng);
    PauliString s = group.at(mask);
    long total = 0;
    for (size_t k = 0; k < opt.shots_per_sample; k++) {
      Shot shot(source.num_qubits, source);
      shot.run(source, rng, ro);
      total += measure_pauli(shot, s, source.outputs, rng);
    }
    samples[i] = {static_cast<size_t>(i), s,
                  static_cast<double>(total) / static_cast<double>(opt.shots_per_sample),
                  opt.shots_per_sample};
  }
  std::vector<double> v;
  for (const auto &s : samples) v.push_back(s.measured_expectation);
  auto me = mean_and_error(v, opt.shots_per_sample);
  return {me.mean, me.err, std::move(samples)};
}

std::array<SupportTuple, 16> cnot_process_support() {
  std::array<SupportTuple, 16> out{};
  const char *letters = "IXYZ";
  size_t k = 0;
  for (int a = 0; a < 4; a++) {
    for (int b = 0; b < 4; b++) {
      PauliString p(2);
      p.set(0, letters[a]);
      p.set(1, letters[b]);
      int sign = 1;
      if (letters[a] == 'Y') sign = -sign;
      if (letters[b] == 'Y') sign = -sign;
      p.conj_cnot(0, 1);
      sign *= p.sign();
      out[k++] = {letters[a], letters[b], p.get(0), p.get(1), sign};
    }
  }
  return out;
}

CnotEstimate estimate_cnot_gate_fidelity(const Circuit &channel, const CertifyOptions &opt) {
  if (channel.inputs.size() != 2 || channel.outputs.size() != 2) {
    throw std::invalid_argument("CNOT certification needs 2 inputs and 2 outputs");
  }
  if (opt.m_samples == 0 || opt.shots_per_sample == 0) throw std::invalid_argument("need m >= 1 and shots >= 1");
  channel.validate();
  const auto support = cnot_process_support();
  std::vector<ProcessSample> samples(opt.m_samples);
  RunOptions ro;
  ro.noisy = opt.noisy;
  const long m = static_cast<long>(opt.m_samples);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(opt.threads))
  for (long i = 0; i < m; i++) {
    auto rng = stream_rng(opt.seed, static_cast<uint64_t>(i));
    const SupportTuple t = support[rng() % 16];
    PauliString obs(2);
    obs.set(0, t.pk);
    obs.set(1, t.pl);
    long total = 0;
    for (size_t k = 0; k < opt.shots_per_sample; k++) {
      Shot shot(channel.num_qubits, channel);
      int weight = 1;
      const char in[2] = {t.pi, t.pj};
      for (int j = 0; j < 2; j++) {
        int s = coin(rng) ? -1 : 1;
        if (in[j] == 'I') {
          prepare_eigenstate(shot, channel.inputs[j], 'Z', s);
        } else {
          weight *= s;
          // Eigenstate of the complex conjugate: Y* = -Y.
          prepare_eigenstate(shot, channel.inputs[j], in[j], in[j] == 'Y' ? -s : s);
        }
      }
      shot.run(channel, rng, ro);
      total += weight * measure_pauli(shot, obs, channel.outputs, rng);
    }
    samples[i] = {static_cast<size_t>(i), t,
                  static_cast<double>(total) / static_cast<double>(opt.shots_per_sample) / t.rho,
                  opt.shots_per_sample};
  }
  std::vector<double> v;
  for (const auto &s : samples) v.push_back(s.measured_value);
  auto me = mean_and_error(v, opt.shots_per_sample);
  CnotEstimate e;
  e.process_fidelity = me.mean;
  e.gate_fidelity = (4 * me.mean + 1) / 5;
  e.std_err = 0.8 * me.err;
  e.samples = std::move(samples);
  return e;
}

void to_json(nlohmann::json &j, const StabilizerSample &s) {
  j = {{"sample_index", s.sample_index},
       {"operators", s.stabilizer.str()},
       {"ideal_value", 1},
       {"measured_value", s.measured_expectation},
       {"shots", s.shots_used}};
}

void to_json(nlohmann::json &j, const ProcessSample &s) {
  std::string in{s.tuple.pi, s.tuple.pj}, out{s.tuple.pk, s.tuple.pl};
  j = {{"sample_index", s.sample_index},
       {"operators", {in, out}},
       {"ideal_value", s.tuple.rho},
       {"measured_value", s.measured_value * s.tuple.rho},
       {"shots", s.shots_used}};
}

}  // namespace dyncirc
