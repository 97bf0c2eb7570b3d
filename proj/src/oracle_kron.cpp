// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/oracle_kron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tqc {

KronMatrix kron(const CMat& a, const CMat& b) {
  CMat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cplx v = a.at(ia, ja);
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          m.at(ia * b.rows() + ib, ja * b.cols() + jb) = v * b.at(ib, jb);
    }
  return m;
}

KronState kron_vec(const KronState& a, const KronState& b) {
  KronState v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  return v;
}

CMat gate_to_matrix(const SingleQubitGate& g) {
  CMat m(2, 2);
  m.at(0, 0) = g.g00;
  m.at(0, 1) = g.g01;
  m.at(1, 0) = g.g10;
  m.at(1, 1) = g.g11;
  return m;
}

namespace {

void check_width(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n > kOracleMaxQubits)
    throw std::invalid_argument("oracle supports at most 12 qubits");
}

KronMatrix chain(const std::vector<SingleQubitGate>& factors) {
  CMat m = gate_to_matrix(factors[0]);
  for (std::size_t k = 1; k < factors.size(); ++k) m = kron(m, gate_to_matrix(factors[k]));
  return m;
}

}  // namespace

KronMatrix embed_single(int n, int qubit, const SingleQubitGate& g) {
  check_width(n);
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit out of range");
  std::vector<SingleQubitGate> factors(n, gate::i());
  factors[qubit - 1] = g;
  return chain(factors);
}

KronMatrix build_gate_matrix(const GateOp& op, int n) {
  check_width(n);
  if (const auto* a = std::get_if<AppliedGate>(&op)) return embed_single(n, a->qubit, a->gate);

  const int d = 1 << n;
  if (const auto* g = std::get_if<MultilinearGate>(&op)) {
    if (g->terms.empty()) throw std::invalid_argument("term sum must be nonempty");
    CMat m(d, d);
    for (const GateTerm& t : g->terms) {
      if (static_cast<int>(t.factors.size()) != n)
        throw std::invalid_argument("term length does not match qubit count");
      m = m + chain(t.factors);
    }
    return m;
  }

  // Controlled gate: one chain per control bit pattern, ascending, built
  // here from the projector-sum identity rather than via controlled_to_terms
  // so the two routes stay independent cross-checks.
  const auto& q = std::get<QuasiMultilinearGate>(op);
  q.validate();
  if (q.n != n) throw std::invalid_argument("gate width does not match n");
  std::vector<ControlBit> controls = q.controls;
  std::sort(controls.begin(), controls.end(),
            [](const ControlBit& a, const ControlBit& b) { return a.qubit < b.qubit; });
  const int c = static_cast<int>(controls.size());
  CMat m(d, d);
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << c); ++pattern) {
    std::vector<SingleQubitGate> factors(n, gate::i());
    bool satisfied = true;
    for (int j = 0; j < c; ++j) {
      const int bit = static_cast<int>((pattern >> (c - 1 - j)) & 1u);
      factors[controls[j].qubit - 1] = bit ? gate::proj1() : gate::proj0();
      if (bit != controls[j].bit) satisfied = false;
    }
    if (satisfied) factors[q.target - 1] = q.gate;
    m = m + chain(factors);
  }
  return m;
}

KronState apply_oracle(const KronState& v, const KronMatrix& m, OpCounter* ops) {
  const std::size_t d = v.size();
  if (m.rows() != static_cast<int>(d) || m.cols() != static_cast<int>(d))
    throw std::invalid_argument("matrix/vector dimension mismatch");
  KronState out(d);
  for (std::size_t r = 0; r < d; ++r) {
    cplx acc = m.at(r, 0) * v[0];
    for (std::size_t c = 1; c < d; ++c) acc += m.at(r, c) * v[c];
    out[r] = acc;
  }
  if (ops) ops->count(d * d, d * (d - 1));
  return out;
}

bool gate_op_is_unitary(const GateOp& op, int n, double tol) {
  return build_gate_matrix(op, n).is_unitary(tol);
}

double kron_probability(const KronState& v, int n, int qubit, int bit) {
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit out of range");
  double p = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (qubit_bit(i, n, qubit) == bit) p += std::norm(v[i]);
  return p;
}

KronState kron_collapse(const KronState& v, int n, int qubit, int bit) {
  const double p = kron_probability(v, n, qubit, bit);
  if (p < kMinBranchProb) throw std::invalid_argument("zero-probability branch");
  KronState out(v.size());
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (qubit_bit(i, n, qubit) == bit) out[i] = v[i] * scale;
  return out;
}

}  // namespace tqc
