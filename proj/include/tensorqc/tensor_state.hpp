// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tensorqc/common.hpp"

namespace tqc {

/// Multi-index (q1,...,qn), one bit per qubit, qubit 1 first.
using MultiIndex = std::vector<int>;

/// n-qubit state stored as an order-n tensor of shape 2x2x...x2.
///
/// Amplitudes are kept in the row-major flattening with qubit 1 most
/// significant: L = q1*2^(n-1) + q2*2^(n-2) + ... + qn*2^0 (0-based). Under
/// this convention the flat buffer of a product of basis kets coincides,
/// entry for entry, with the Kronecker product of the single-qubit vectors.
///
/// Note on the index convention: the usual decimal basis labeling weights
/// q1 with 2^0, but the standard worked Kronecker product puts q1 leftmost
/// (|01> -> (0,1,0,0)); we follow the Kronecker layout since it is the one
/// every cross-check against matrix notation exercises.
///
/// Values are immutable in ordinary use; the gate kernels mutate an
/// exclusively owned buffer in place via amps(). A TensorState may be freely
/// read from multiple threads; in-place application requires exclusivity.
class TensorState {
 public:
  /// All-zeros register |0...0> of n qubits.
  explicit TensorState(int n);

  /// Takes ownership of a 2^n amplitude buffer (row-major). Rejects n < 1,
  /// size mismatches and non-finite entries.
  TensorState(int n, std::vector<cplx> amps);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }

  const std::vector<cplx>& amps() const { return amps_; }
  std::vector<cplx>& amps() { return amps_; }

  cplx amp(std::size_t linear) const { return amps_[linear]; }
  cplx amp(const MultiIndex& idx) const;

  double norm() const;
  bool is_normalized(double tol = kNormTol) const;
  /// Scales to unit norm. Throws std::domain_error on (near-)zero states.
  void normalize();

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// L = q1*2^(n-1) + ... + qn*2^0 for idx = (q1,...,qn).
std::size_t multi_to_linear(const MultiIndex& idx);
MultiIndex linear_to_multi(std::size_t linear, int n);

/// Basis ket |q1...qn|>. Throws std::invalid_argument for n < 1, a length
/// mismatch, or bits outside {0,1}.
TensorState basis_state(int n, const MultiIndex& idx);

/// Row-major flattening to the standard 2^n computational-basis vector.
/// from_kron_vector(to_kron_vector(s)) reproduces s bit-exactly.
std::vector<cplx> to_kron_vector(const TensorState& s);
TensorState from_kron_vector(std::vector<cplx> v);

/// Order n_a + n_b state with amplitude a[i]*b[j] at the concatenated
/// multi-index (i, j).
TensorState tensor_product(const TensorState& a, const TensorState& b);

/// Sub-tensor with axis `qubit` (1-based) fixed to `bit`; order n-1 and
/// deliberately left unnormalized: its squared norm is the outcome
/// probability. Requires n >= 2.
TensorState slice(const TensorState& s, int qubit, int bit);

/// With up_to_global_phase, true iff min over theta of ||a - e^{i theta} b||
/// is <= tol (the minimizing phase comes from the inner product); otherwise
/// plain elementwise comparison within tol.
bool approx_equal(const TensorState& a, const TensorState& b, double tol,
                  bool up_to_global_phase);

/// |<a|b>| for unit vectors; the fidelity used by the teleportation checks.
double fidelity(const TensorState& a, const TensorState& b);

/// JSON form {"n": 3, "amps": [[re, im], ...]} in row-major order.
std::string state_to_json(const TensorState& s);
TensorState state_from_json(const std::string& text);

}  // namespace tqc
