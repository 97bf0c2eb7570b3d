// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tensorqc/opcount.hpp"
#include "tensorqc/tensor_state.hpp"

namespace tqc {

/// 2x2 complex matrix acting on one qubit. `physical` marks gates expected
/// to be unitary; projector factors (m0/m1) are flagged non-physical so rank
/// checks can tell the two apart.
struct SingleQubitGate {
  cplx g00{}, g01{}, g10{}, g11{};
  bool physical = true;

  bool is_unitary(double tol = 1e-10) const;
  SingleQubitGate adjoint() const;
  SingleQubitGate scaled(cplx k) const;
  friend SingleQubitGate operator*(const SingleQubitGate& a, const SingleQubitGate& b);
};

namespace gate {
SingleQubitGate i();
SingleQubitGate x();
SingleQubitGate y();
SingleQubitGate z();
SingleQubitGate h();
SingleQubitGate s();
SingleQubitGate t();
SingleQubitGate rx(double theta);
SingleQubitGate ry(double theta);
SingleQubitGate rz(double theta);
SingleQubitGate proj0();  // |0><0|, non-physical
SingleQubitGate proj1();  // |1><1|, non-physical
}  // namespace gate

/// Looks up a gate by name: i, x, y, z, h, s, t, m0, m1 and rx(theta),
/// ry(theta), rz(theta) with a decimal radian argument. Case-insensitive.
/// Throws std::invalid_argument for unknown names.
SingleQubitGate gate_library(const std::string& name);

/// True for names the library accepts; rotation names require `params` of
/// the right arity when resolved through resolve_gate below.
bool is_known_gate_name(const std::string& name);
int gate_param_count(const std::string& name);  // -1 if unknown
SingleQubitGate resolve_gate(const std::string& name, const std::vector<double>& params);

/// One multilinear map (M1,...,Mn): factor k acts along the axis of qubit k.
struct GateTerm {
  std::vector<SingleQubitGate> factors;
};

/// Sum of r multilinear maps. Terms are summed in listed order and the
/// floating-point sums are not re-associated, so traces are reproducible.
struct MultilinearGate {
  std::vector<GateTerm> terms;
};

struct ControlBit {
  int qubit = 0;
  int bit = 0;
};

/// Controlled gate in quasi-multilinear form: control conditions select the
/// sub-tensor, `gate` acts along the target axis of that sub-tensor only.
struct QuasiMultilinearGate {
  int n = 0;
  std::vector<ControlBit> controls;
  int target = 0;
  SingleQubitGate gate;

  void validate() const;  // throws std::invalid_argument
};

/// Single-qubit gate placed on one axis; the 1-slot special case of a term.
struct AppliedGate {
  int qubit = 0;
  SingleQubitGate gate;
};

/// Gate-level operation, the unit both engines consume.
using GateOp = std::variant<AppliedGate, QuasiMultilinearGate, MultilinearGate>;

// Applications. Each contracts the state along gate axes in place with a
// two-amplitude scratch; op counts are exact:
//   apply_single      4*2^(n-1) mults, 2*2^(n-1) adds
//   apply_term        n times the above (every factor applied, identity too)
//   apply_multilinear r terms plus (r-1)*2^n accumulation adds
//   apply_controlled  4*2^(n-1-c) mults, 2*2^(n-1-c) adds
void apply_single_inplace(TensorState& s, int qubit, const SingleQubitGate& g,
                          OpCounter* ops = nullptr);
TensorState apply_single(TensorState s, int qubit, const SingleQubitGate& g,
                         OpCounter* ops = nullptr);
TensorState apply_term(const TensorState& s, const GateTerm& t, OpCounter* ops = nullptr);
TensorState apply_multilinear(const TensorState& s, const MultilinearGate& g,
                              OpCounter* ops = nullptr);
void apply_controlled_inplace(TensorState& s, const QuasiMultilinearGate& g,
                              OpCounter* ops = nullptr);
TensorState apply_controlled(TensorState s, const QuasiMultilinearGate& g,
                             OpCounter* ops = nullptr);
TensorState apply_gate_op(TensorState s, const GateOp& op, OpCounter* ops = nullptr);

/// Expands a controlled gate into a sum of pure product terms, one per
/// control bit pattern in ascending order: the satisfied pattern carries the
/// gate on the target slot, every other pattern carries the identity. One
/// control gives the minimal two-term form (M0,1) + (M1,G); c controls give
/// 2^c terms since the complementary projector is not itself a product.
MultilinearGate controlled_to_terms(const QuasiMultilinearGate& g);

}  // namespace tqc
