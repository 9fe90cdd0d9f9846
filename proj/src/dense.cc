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

#include "dyncirc/dense.h"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dyncirc/rng.h"

namespace dyncirc {

namespace {

constexpr size_t kParallelThreshold = 12;

inline size_t insert_zero(size_t k, size_t q) {
  size_t low = k & ((size_t{1} << q) - 1);
  return ((k >> q) << (q + 1)) | low;
}

void check_capacity(size_t n) {
  if (n > kDenseMaxQubits) {
    throw CapacityError("dense simulation of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kDenseMaxQubits));
  }
}

const cplx kI(0, 1);

}  // namespace

StateVector::StateVector(size_t num_qubits) : n_(num_qubits) {
  check_capacity(num_qubits);
  amps_.assign(size_t{1} << num_qubits, 0);
  amps_[0] = 1;
}

void StateVector::apply_1q(const Matrix &u, size_t q) {
  if (q >= n_) throw std::out_of_range("qubit out of range");
  const cplx a = u(0, 0), b = u(0, 1), c = u(1, 0), d = u(1, 1);
  const int64_t half = static_cast<int64_t>(amps_.size() >> 1);
  const size_t bit = size_t{1} << q;
  cplx *v = amps_.data();
#pragma omp parallel for if (n_ >= kParallelThreshold)
  for (int64_t k = 0; k < half; k++) {
    size_t i0 = insert_zero(k, q), i1 = i0 | bit;
    cplx x0 = v[i0], x1 = v[i1];
    v[i0] = a * x0 + b * x1;
    v[i1] = c * x0 + d * x1;
  }
}

void StateVector::apply_2q(const Matrix &u, size_t q0, size_t q1) {
  if (q0 >= n_ || q1 >= n_ || q0 == q1) throw std::out_of_range("bad qubit pair");
  const size_t lo = std::min(q0, q1), hi = std::max(q0, q1);
  const size_t b0 = size_t{1} << q0, b1 = size_t{1} << q1;
  const int64_t quarter = static_cast<int64_t>(amps_.size() >> 2);
  cplx *v = amps_.data();
  Eigen::Matrix4cd m = u;
#pragma omp parallel for if (n_ >= kParallelThreshold)
  for (int64_t k = 0; k < quarter; k++) {
    size_t base = insert_zero(insert_zero(k, lo), hi);
    size_t idx[4] = {base, base | b0, base | b1, base | b0 | b1};
    cplx in[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
    for (int r = 0; r < 4; r++) {
      v[idx[r]] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
    }
  }
}

void StateVector::apply(Op op, const std::vector<uint32_t> &qs) {
  switch (op) {
    case Op::CNOT: {
      if (qs[0] >= n_ || qs[1] >= n_ || qs[0] == qs[1]) throw std::out_of_range("bad CNOT qubits");
      const size_t cb = size_t{1} << qs[0], tb = size_t{1} << qs[1];
      const int64_t size = static_cast<int64_t>(amps_.size());
#pragma omp parallel for if (n_ >= kParallelThreshold)
      for (int64_t i = 0; i < size; i++) {
        if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
      }
      return;
    }
    case Op::CCZ: {
      size_t mask = 0;
      for (uint32_t q : qs) {
        if (q >= n_) throw std::out_of_range("bad CCZ qubit");
        mask |= size_t{1} << q;
      }
      const int64_t size = static_cast<int64_t>(amps_.size());
#pragma omp parallel for if (n_ >= kParallelThreshold)
      for (int64_t i = 0; i < size; i++) {
        if ((static_cast<size_t>(i) & mask) == mask) amps_[i] = -amps_[i];
      }
      return;
    }
    default:
      apply_1q(gate_matrix(op), qs.at(0));
  }
}

void StateVector::apply_pauli(const PauliString &p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
  const uint64_t xm = p.xs()[0], zm = p.zs()[0];
  const cplx global = std::pow(kI, static_cast<int>((p.phase() + std::popcount(xm & zm)) & 3));
  std::vector<cplx> out(amps_.size());
  for (size_t i = 0; i < amps_.size(); i++) {
    double s = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
    out[i ^ xm] = global * s * amps_[i];
  }
  amps_.swap(out);
}

double StateVector::prob_one(size_t q) const {
  if (q >= n_) throw std::out_of_range("qubit out of range");
  const size_t bit = size_t{1} << q;
  const int64_t size = static_cast<int64_t>(amps_.size());
  double p = 0;
#pragma omp parallel for reduction(+ : p) if (n_ >= kParallelThreshold)
  for (int64_t i = 0; i < size; i++) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

double StateVector::project(size_t q, bool outcome) {
  const size_t bit = size_t{1} << q;
  double p = outcome ? prob_one(q) : 1 - prob_one(q);
  if (p <= 0) throw std::domain_error("projection onto a zero-probability outcome");
  const double scale = 1 / std::sqrt(p);
  for (size_t i = 0; i < amps_.size(); i++) {
    amps_[i] = (((i & bit) != 0) == outcome) ? amps_[i] * scale : cplx(0);
  }
  return p;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto &a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

namespace serial {

void apply_1q(StateVector &s, const Matrix &u, size_t q) {
  auto &v = s.amps();
  const size_t bit = size_t{1} << q;
  for (size_t i = 0; i < v.size(); i++) {
    if (i & bit) continue;
    cplx x0 = v[i], x1 = v[i | bit];
    v[i] = u(0, 0) * x0 + u(0, 1) * x1;
    v[i | bit] = u(1, 0) * x0 + u(1, 1) * x1;
  }
}

void apply_2q(StateVector &s, const Matrix &u, size_t q0, size_t q1) {
  auto &v = s.amps();
  const size_t b0 = size_t{1} << q0, b1 = size_t{1} << q1;
  for (size_t i = 0; i < v.size(); i++) {
    if (i & (b0 | b1)) continue;
    size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    cplx in[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
    for (int r = 0; r < 4; r++) {
      cplx acc = 0;
      for (int c = 0; c < 4; c++) acc += u(r, c) * in[c];
      v[idx[r]] = acc;
    }
  }
}

double prob_one(const StateVector &s, size_t q) {
  double p = 0;
  for (size_t i = 0; i < s.amps().size(); i++) {
    if ((i >> q) & 1) p += std::norm(s.amps()[i]);
  }
  return p;
}

}  // namespace serial

double state_fidelity(const StateVector &a, const StateVector &b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("state dimension mismatch");
  cplx ip = 0;
  for (size_t i = 0; i < a.amps().size(); i++) ip += std::conj(a.amps()[i]) * b.amps()[i];
  return std::norm(ip);
}

Matrix gate_matrix(Op op) {
  const double r = 1 / std::sqrt(2.0);
  Matrix m(2, 2);
  switch (op) {
    case Op::H: m << r, r, r, -r; break;
    case Op::S: m << 1, 0, 0, kI; break;
    case Op::SDG: m << 1, 0, 0, -kI; break;
    case Op::X: m << 0, 1, 1, 0; break;
    case Op::Y: m << 0, -kI, kI, 0; break;
    case Op::Z: m << 1, 0, 0, -1; break;
    case Op::T: m << 1, 0, 0, std::polar(1.0, M_PI / 4); break;
    case Op::TDG: m << 1, 0, 0, std::polar(1.0, -M_PI / 4); break;
    case Op::CNOT: return cnot_matrix();
    case Op::CCZ: return ccz_matrix();
    default: throw std::invalid_argument("no matrix for " + std::string(op_name(op)));
  }
  return m;
}

Matrix cnot_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(2, 2) = 1;
  m(3, 1) = m(1, 3) = 1;
  return m;
}

Matrix ccz_matrix() {
  Matrix m = Matrix::Identity(8, 8);
  m(7, 7) = -1;
  return m;
}

bool is_unitary(const Matrix &u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace {

struct BranchWalker {
  const Circuit &c;
  const BranchOptions &opt;
  const std::function<void(const Branch &)> &fn;
  // When set, noise decisions are fixed in advance (sampling mode).
  const std::vector<uint8_t> *fired = nullptr;
  double weight = 1;

  void walk(size_t k, double prob, StateVector s, std::vector<int8_t> recs,
            std::optional<PauliString> frame, size_t noise_idx) {
    const size_t n = s.num_qubits();
    for (; k < c.instructions.size(); k++) {
      const auto &ins = c.instructions[k];
      switch (ins.op) {
        case Op::MEASURE: {
          uint32_t q = ins.qubits[0];
          double p1 = s.prob_one(q);
          bool flip = frame && frame->x(q);
          for (int o = 0; o < 2; o++) {
            double p = o ? p1 : 1 - p1;
            if (p < 1e-14) continue;
            StateVector t = s;
            t.project(q, o);
            auto r = recs;
            r[ins.record] = static_cast<int8_t>(o ^ flip);
            walk(k + 1, prob * p, std::move(t), std::move(r), frame, noise_idx);
          }
          return;
        }
        case Op::RESET: {
          uint32_t q = ins.qubits[0];
          double p1 = s.prob_one(q);
          if (frame) {
            frame->set_x(q, false);
            frame->set_z(q, false);
          }
          for (int o = 0; o < 2; o++) {
            double p = o ? p1 : 1 - p1;
            if (p < 1e-14) continue;
            StateVector t = s;
            t.project(q, o);
            if (o) t.apply(Op::X, {q});
            walk(k + 1, prob * p, std::move(t), recs, frame, noise_idx);
          }
          return;
        }
        case Op::COND_PAULI: {
          bool parity = false;
          for (uint32_t r : ins.parity) {
            if (recs[r] < 0) throw std::logic_error("record read before written");
            parity ^= recs[r] != 0;
          }
          if (!parity) break;
          PauliString p = PauliString::single(n, ins.qubits[0], ins.pauli);
          if (frame) {
            frame->mul_inplace(p);
            frame->set_phase(0);
          } else {
            s.apply_pauli(p);
          }
          break;
        }
        case Op::NOISE: {
          if (!opt.noisy) break;
          PauliString p(n);
          for (size_t i = 0; i < ins.qubits.size(); i++) p.set(ins.qubits[i], ins.noise[i]);
          double w = -std::expm1(-2 * ins.rate) / 2;
          if (std::isinf(ins.rate)) w = 0.5;
          if (fired) {
            if ((*fired)[noise_idx]) s.apply_pauli(p);
            noise_idx++;
            break;
          }
          if (w <= 0) break;
          StateVector t = s;
          t.apply_pauli(p);
          walk(k + 1, prob * w, std::move(t), recs, frame, noise_idx + 1);
          prob *= 1 - w;
          noise_idx++;
          break;
        }
        case Op::BARRIER:
          break;
        default:
          if (frame && !is_clifford_gate(ins.op)) {
            for (uint32_t q : ins.qubits) {
              if (frame->x(q)) throw std::logic_error("Pauli frame cannot pass a non-Clifford gate");
            }
          }
          s.apply(ins.op, ins.qubits);
          if (frame) {
            const auto &qs = ins.qubits;
            if (ins.op == Op::H) frame->conj_h(qs[0]);
            if (ins.op == Op::S) frame->conj_s(qs[0]);
            if (ins.op == Op::SDG) frame->conj_sdg(qs[0]);
            if (ins.op == Op::CNOT) frame->conj_cnot(qs[0], qs[1]);
          }
      }
    }
    if (frame) s.apply_pauli(*frame);
    Branch b{prob * weight, std::move(s), {}};
    b.records.resize(recs.size());
    for (size_t i = 0; i < recs.size(); i++) b.records[i] = recs[i] > 0;
    fn(b);
  }
};

}  // namespace

void for_each_branch(const Circuit &c, const StateVector &init, const BranchOptions &opt,
                     const std::function<void(const Branch &)> &fn) {
  c.validate();
  if (init.num_qubits() < c.num_qubits) throw std::invalid_argument("initial state too small");
  std::optional<PauliString> frame;
  if (!c.feed_forward) frame.emplace(init.num_qubits());
  std::vector<int8_t> recs(c.num_records, -1);
  size_t sites = 0;
  std::vector<double> probs;
  for (const auto &ins : c.instructions) {
    if (ins.op == Op::NOISE) {
      sites++;
      probs.push_back(std::isinf(ins.rate) ? 0.5 : -std::expm1(-2 * ins.rate) / 2);
    }
  }
  BranchWalker w{c, opt, fn};
  if (!opt.noisy || sites <= opt.max_enumerated_noise) {
    w.walk(0, 1.0, init, recs, frame, 0);
    return;
  }
  auto rng = stream_rng(opt.seed, 0);
  std::vector<uint8_t> fired(sites);
  w.fired = &fired;
  w.weight = 1.0 / opt.noise_samples;
  for (size_t s = 0; s < opt.noise_samples; s++) {
    for (size_t i = 0; i < sites; i++) fired[i] = uniform01(rng) < probs[i];
    w.walk(0, 1.0, init, recs, frame, 0);
  }
}

std::vector<std::pair<std::vector<uint8_t>, double>> record_distribution(const Circuit &c,
                                                                          const BranchOptions &opt) {
  std::map<std::vector<uint8_t>, double> acc;
  for_each_branch(c, StateVector(c.num_qubits), opt, [&](const Branch &b) { acc[b.records] += b.prob; });
  return {acc.begin(), acc.end()};
}

namespace {

// sum over the other qubits of |<small| (restricted to `qubits`) big>|^2.
double projected_overlap(const StateVector &big, const std::vector<uint32_t> &qubits,
                         const StateVector &small) {
  const size_t k = qubits.size();
  const size_t n = big.num_qubits();
  std::vector<uint32_t> rest;
  std::vector<bool> used(n, false);
  for (uint32_t q : qubits) used[q] = true;
  for (uint32_t q = 0; q < n; q++) {
    if (!used[q]) rest.push_back(q);
  }
  std::vector<cplx> acc(size_t{1} << rest.size(), 0);
  const auto &a = big.amps();
  const auto &s = small.amps();
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == cplx(0)) continue;
    size_t si = 0, ri = 0;
    for (size_t j = 0; j < k; j++) si |= ((i >> qubits[j]) & 1) << j;
    for (size_t j = 0; j < rest.size(); j++) ri |= ((i >> rest[j]) & 1) << j;
    acc[ri] += std::conj(s[si]) * a[i];
  }
  double f = 0;
  for (const auto &v : acc) f += std::norm(v);
  return f;
}

// Applies a 2^k x 2^k matrix to the low k qubits of s.
void apply_low(StateVector &s, const Matrix &u, size_t k) {
  const size_t dim = size_t{1} << k;
  auto &v = s.amps();
  std::vector<cplx> out(v.size(), 0);
  for (size_t hi = 0; hi < v.size(); hi += dim) {
    for (size_t r = 0; r < dim; r++) {
      cplx acc = 0;
      for (size_t c = 0; c < dim; c++) acc += u(r, c) * v[hi + c];
      out[hi + r] = acc;
    }
  }
  v.swap(out);
}

void prepare_eigenstate(StateVector &s, size_t q, int which) {
  // which: 0 +Z, 1 -Z, 2 +X, 3 -X, 4 +Y, 5 -Y
  if (which % 2 == 1) s.apply(Op::X, {static_cast<uint32_t>(q)});
  if (which >= 2) s.apply(Op::H, {static_cast<uint32_t>(q)});
  if (which >= 4) s.apply(Op::S, {static_cast<uint32_t>(q)});
}

}  // namespace

Matrix circuit_unitary(const Circuit &c) {
  c.validate();
  const size_t k = c.inputs.size();
  const size_t dim = size_t{1} << k;
  Matrix u(dim, dim);
  for (const auto &ins : c.instructions) {
    if (!is_unitary_gate(ins.op) && ins.op != Op::BARRIER) {
      throw std::invalid_argument("circuit_unitary needs a gate-only circuit");
    }
  }
  for (size_t col = 0; col < dim; col++) {
    StateVector s(c.num_qubits);
    size_t idx = 0;
    for (size_t j = 0; j < k; j++) {
      if ((col >> j) & 1) idx |= size_t{1} << c.inputs[j];
    }
    s.amps()[0] = 0;
    s.amps()[idx] = 1;
    for (const auto &ins : c.instructions) {
      if (ins.op != Op::BARRIER) s.apply(ins.op, ins.qubits);
    }
    double norm = 0;
    for (size_t row = 0; row < dim; row++) {
      size_t out = 0;
      for (size_t j = 0; j < k; j++) {
        if ((row >> j) & 1) out |= size_t{1} << c.outputs[j];
      }
      u(row, col) = s.amps()[out];
      norm += std::norm(u(row, col));
    }
    if (std::abs(norm - 1) > 1e-9) {
      throw std::invalid_argument("circuit leaves non-data qubits outside |0>");
    }
  }
  return u;
}

double process_fidelity(const Circuit &c, const Matrix &target, const BranchOptions &opt) {
  const size_t k = c.inputs.size();
  if (target.rows() != (1 << k)) throw std::invalid_argument("target size does not match inputs");
  check_capacity(c.num_qubits + k);
  StateVector init(c.num_qubits + k);
  std::vector<uint32_t> probe;
  for (size_t j = 0; j < k; j++) {
    uint32_t ref = c.num_qubits + j;
    init.apply(Op::H, {ref});
    init.apply(Op::CNOT, {ref, c.inputs[j]});
  }
  for (size_t j = 0; j < k; j++) probe.push_back(c.outputs[j]);
  for (size_t j = 0; j < k; j++) probe.push_back(c.num_qubits + j);

  StateVector ideal(2 * k);
  for (size_t j = 0; j < k; j++) {
    ideal.apply(Op::H, {static_cast<uint32_t>(k + j)});
    ideal.apply(Op::CNOT, {static_cast<uint32_t>(k + j), static_cast<uint32_t>(j)});
  }
  apply_low(ideal, target, k);

  double f = 0;
  for_each_branch(c, init, opt, [&](const Branch &b) { f += b.prob * projected_overlap(b.state, probe, ideal); });
  return f;
}

double channel_process_fidelity(const Circuit &ideal, const Circuit &noisy, const BranchOptions &opt) {
  return process_fidelity(noisy, circuit_unitary(ideal), opt);
}

double pauli_eigenstate_average_fidelity(const Circuit &c, const Matrix &target, const BranchOptions &opt) {
  const size_t k = c.inputs.size();
  size_t total = 1;
  for (size_t j = 0; j < k; j++) total *= 6;
  double sum = 0;
  for (size_t combo = 0; combo < total; combo++) {
    StateVector init(c.num_qubits), ideal(k);
    size_t rem = combo;
    for (size_t j = 0; j < k; j++) {
      int which = rem % 6;
      rem /= 6;
      prepare_eigenstate(init, c.inputs[j], which);
      prepare_eigenstate(ideal, j, which);
    }
    apply_low(ideal, target, k);
    for_each_branch(c, init, opt, [&](const Branch &b) {
      sum += b.prob * projected_overlap(b.state, c.outputs, ideal);
    });
  }
  return sum / total;
}

double output_state_fidelity(const Circuit &c, const StateVector &target, const BranchOptions &opt) {
  if (target.num_qubits() != c.outputs.size()) throw std::invalid_argument("target size does not match outputs");
  double f = 0;
  for_each_branch(c, StateVector(c.num_qubits), opt,
                  [&](const Branch &b) { f += b.prob * projected_overlap(b.state, c.outputs, target); });
  return f;
}

Matrix pauli_matrix(const PauliString &p) {
  const size_t n = p.num_qubits();
  check_capacity(n);
  const size_t dim = size_t{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  const uint64_t xm = p.xs()[0], zm = p.zs()[0];
  const cplx global = std::pow(kI, static_cast<int>((p.phase() + std::popcount(xm & zm)) & 3));
  for (size_t i = 0; i < dim; i++) {
    double s = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
    m(i ^ xm, i) = global * s;
  }
  return m;
}

Matrix superop_from_kraus(const std::vector<Matrix> &kraus) {
  const auto d = kraus.at(0).rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto &k : kraus) s += Eigen::kroneckerProduct(k.conjugate(), k).eval();
  return s;
}

Matrix superop_unitary(const Matrix &u) { return superop_from_kraus({u}); }

Matrix superop_lindblad_exp(const PauliString &p, double lambda) {
  Matrix pm = pauli_matrix(p);
  const auto d = pm.rows();
  Matrix l = Eigen::kroneckerProduct(pm.conjugate(), pm).eval() - Matrix::Identity(d * d, d * d);
  Matrix scaled = lambda * l;
  return scaled.exp();
}

Matrix pauli_twirl(const Matrix &superop, size_t nq) {
  const size_t count = size_t{1} << (2 * nq);
  Matrix acc = Matrix::Zero(superop.rows(), superop.cols());
  for (size_t code = 0; code < count; code++) {
    PauliString q(nq);
    for (size_t j = 0; j < nq; j++) q.set(j, "IXYZ"[(code >> (2 * j)) & 3]);
    Matrix sq = superop_unitary(pauli_matrix(q));
    acc += sq * superop * sq;
  }
  return acc / static_cast<double>(count);
}

double superop_process_fidelity(const Matrix &superop, const Matrix &u) {
  const double d = static_cast<double>(u.rows());
  return (superop_unitary(u).adjoint() * superop).trace().real() / (d * d);
}

Matrix amplitude_damping_superop(double lambda) {
  Matrix l(2, 2);
  l << 0, 1, 0, 0;  // |0><1|
  Matrix ldl = l.adjoint() * l;
  Matrix id = Matrix::Identity(2, 2);
  Matrix gen = Eigen::kroneckerProduct(l.conjugate(), l).eval() -
               0.5 * (Eigen::kroneckerProduct(id, ldl).eval() + Eigen::kroneckerProduct(ldl.transpose(), id).eval());
  Matrix scaled = lambda * gen;
  return scaled.exp();
}

}  // namespace dyncirc
