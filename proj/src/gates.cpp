// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace tqc {

namespace {
constexpr cplx kI{0.0, 1.0};
}

bool SingleQubitGate::is_unitary(double tol) const {
  // G^dagger G == identity, entrywise.
  const cplx c00 = std::conj(g00) * g00 + std::conj(g10) * g10;
  const cplx c01 = std::conj(g00) * g01 + std::conj(g10) * g11;
  const cplx c10 = std::conj(g01) * g00 + std::conj(g11) * g10;
  const cplx c11 = std::conj(g01) * g01 + std::conj(g11) * g11;
  return std::abs(c00 - 1.0) <= tol && std::abs(c01) <= tol &&
         std::abs(c10) <= tol && std::abs(c11 - 1.0) <= tol;
}

SingleQubitGate SingleQubitGate::adjoint() const {
  return {std::conj(g00), std::conj(g10), std::conj(g01), std::conj(g11), physical};
}

SingleQubitGate SingleQubitGate::scaled(cplx k) const {
  return {k * g00, k * g01, k * g10, k * g11, false};
}

SingleQubitGate operator*(const SingleQubitGate& a, const SingleQubitGate& b) {
  return {a.g00 * b.g00 + a.g01 * b.g10, a.g00 * b.g01 + a.g01 * b.g11,
          a.g10 * b.g00 + a.g11 * b.g10, a.g10 * b.g01 + a.g11 * b.g11,
          a.physical && b.physical};
}

namespace gate {
SingleQubitGate i() { return {1.0, 0.0, 0.0, 1.0}; }
SingleQubitGate x() { return {0.0, 1.0, 1.0, 0.0}; }
SingleQubitGate y() { return {0.0, -kI, kI, 0.0}; }
SingleQubitGate z() { return {1.0, 0.0, 0.0, -1.0}; }
SingleQubitGate h() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, r, r, -r};
}
SingleQubitGate s() { return {1.0, 0.0, 0.0, kI}; }
SingleQubitGate t() { return {1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4.0)}; }
SingleQubitGate rx(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {c, -kI * s, -kI * s, c};
}
SingleQubitGate ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}
SingleQubitGate rz(double theta) {
  return {std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0)};
}
SingleQubitGate proj0() { return {1.0, 0.0, 0.0, 0.0, false}; }
SingleQubitGate proj1() { return {0.0, 0.0, 0.0, 1.0, false}; }
}  // namespace gate

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

int gate_param_count(const std::string& name) {
  const std::string n = lower(name);
  if (n == "i" || n == "id" || n == "x" || n == "y" || n == "z" || n == "h" ||
      n == "s" || n == "t" || n == "m0" || n == "m1")
    return 0;
  if (n == "rx" || n == "ry" || n == "rz") return 1;
  return -1;
}

bool is_known_gate_name(const std::string& name) { return gate_param_count(name) >= 0; }

SingleQubitGate resolve_gate(const std::string& name, const std::vector<double>& params) {
  const std::string n = lower(name);
  const int arity = gate_param_count(n);
  if (arity < 0) throw std::invalid_argument("unknown gate '" + name + "'");
  if (static_cast<int>(params.size()) != arity)
    throw std::invalid_argument("gate '" + name + "' expects " + std::to_string(arity) +
                                " parameter(s)");
  if (n == "i" || n == "id") return gate::i();
  if (n == "x") return gate::x();
  if (n == "y") return gate::y();
  if (n == "z") return gate::z();
  if (n == "h") return gate::h();
  if (n == "s") return gate::s();
  if (n == "t") return gate::t();
  if (n == "m0") return gate::proj0();
  if (n == "m1") return gate::proj1();
  if (n == "rx") return gate::rx(params[0]);
  if (n == "ry") return gate::ry(params[0]);
  return gate::rz(params[0]);
}

SingleQubitGate gate_library(const std::string& name) {
  // Accepts "x" as well as the call form "rx(0.5)".
  const auto open = name.find('(');
  if (open == std::string::npos) return resolve_gate(name, {});
  if (name.back() != ')') throw std::invalid_argument("unbalanced '(' in gate '" + name + "'");
  const std::string base = name.substr(0, open);
  const std::string arg = name.substr(open + 1, name.size() - open - 2);
  char* end = nullptr;
  const double theta = std::strtod(arg.c_str(), &end);
  if (end == arg.c_str() || *end != '\0')
    throw std::invalid_argument("bad gate parameter '" + arg + "'");
  return resolve_gate(base, {theta});
}

void QuasiMultilinearGate::validate() const {
  if (n < 1) throw std::invalid_argument("gate width must be >= 1");
  if (target < 1 || target > n) throw std::invalid_argument("target out of range");
  std::set<int> seen{target};
  for (const auto& c : controls) {
    if (c.qubit < 1 || c.qubit > n) throw std::invalid_argument("control qubit out of range");
    if (c.bit != 0 && c.bit != 1) throw std::invalid_argument("control bit must be 0 or 1");
    if (!seen.insert(c.qubit).second)
      throw std::invalid_argument("control/target qubits must be pairwise distinct");
  }
}

void apply_single_inplace(TensorState& s, int qubit, const SingleQubitGate& g,
                          OpCounter* ops) {
  const int n = s.num_qubits();
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit out of range");
  auto& amps = s.amps();
  const std::size_t stride = std::size_t{1} << (n - qubit);
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = amps[i0], a1 = amps[i1];  // two-amplitude scratch
      amps[i0] = g.g00 * a0 + g.g01 * a1;
      amps[i1] = g.g10 * a0 + g.g11 * a1;
    }
  }
  if (ops) ops->count(4 * (dim / 2), 2 * (dim / 2));
}

TensorState apply_single(TensorState s, int qubit, const SingleQubitGate& g, OpCounter* ops) {
  apply_single_inplace(s, qubit, g, ops);
  return s;
}

TensorState apply_term(const TensorState& s, const GateTerm& t, OpCounter* ops) {
  const int n = s.num_qubits();
  if (static_cast<int>(t.factors.size()) != n)
    throw std::invalid_argument("term length does not match qubit count");
  TensorState out = s;
  for (int k = 1; k <= n; ++k) apply_single_inplace(out, k, t.factors[k - 1], ops);
  return out;
}

TensorState apply_multilinear(const TensorState& s, const MultilinearGate& g, OpCounter* ops) {
  if (g.terms.empty()) throw std::invalid_argument("term sum must be nonempty");
  TensorState acc = apply_term(s, g.terms[0], ops);
  for (std::size_t i = 1; i < g.terms.size(); ++i) {
    const TensorState part = apply_term(s, g.terms[i], ops);
    auto& a = acc.amps();
    const auto& p = part.amps();
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += p[j];
    if (ops) ops->count(0, a.size());
  }
  return acc;
}

void apply_controlled_inplace(TensorState& s, const QuasiMultilinearGate& g, OpCounter* ops) {
  g.validate();
  const int n = s.num_qubits();
  if (g.n != n) throw std::invalid_argument("gate width does not match state");
  auto& amps = s.amps();
  const std::size_t stride = std::size_t{1} << (n - g.target);
  const std::size_t dim = amps.size();
  std::uint64_t pairs = 0;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      bool satisfied = true;
      for (const auto& c : g.controls)
        if (qubit_bit(i0, n, c.qubit) != c.bit) {
          satisfied = false;
          break;
        }
      if (!satisfied) continue;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = amps[i0], a1 = amps[i1];
      amps[i0] = g.gate.g00 * a0 + g.gate.g01 * a1;
      amps[i1] = g.gate.g10 * a0 + g.gate.g11 * a1;
      ++pairs;
    }
  }
  if (ops) ops->count(4 * pairs, 2 * pairs);
}

TensorState apply_controlled(TensorState s, const QuasiMultilinearGate& g, OpCounter* ops) {
  apply_controlled_inplace(s, g, ops);
  return s;
}

TensorState apply_gate_op(TensorState s, const GateOp& op, OpCounter* ops) {
  if (const auto* a = std::get_if<AppliedGate>(&op))
    return apply_single(std::move(s), a->qubit, a->gate, ops);
  if (const auto* q = std::get_if<QuasiMultilinearGate>(&op))
    return apply_controlled(std::move(s), *q, ops);
  return apply_multilinear(s, std::get<MultilinearGate>(op), ops);
}

MultilinearGate controlled_to_terms(const QuasiMultilinearGate& g) {
  g.validate();
  std::vector<ControlBit> controls = g.controls;
  std::sort(controls.begin(), controls.end(),
            [](const ControlBit& a, const ControlBit& b) { return a.qubit < b.qubit; });
  const int c = static_cast<int>(controls.size());

  MultilinearGate out;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << c); ++pattern) {
    GateTerm term;
    term.factors.assign(g.n, gate::i());
    bool satisfied = true;
    for (int j = 0; j < c; ++j) {
      const int bit = static_cast<int>((pattern >> (c - 1 - j)) & 1u);
      term.factors[controls[j].qubit - 1] = bit ? gate::proj1() : gate::proj0();
      if (bit != controls[j].bit) satisfied = false;
    }
    if (satisfied) term.factors[g.target - 1] = g.gate;
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace tqc
