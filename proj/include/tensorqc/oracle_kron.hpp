// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tensorqc/gates.hpp"
#include "tensorqc/matrix.hpp"
#include "tensorqc/opcount.hpp"

namespace tqc {

// Standard-notation reference engine: flat 2^n vectors and dense 2^n x 2^n
// matrices built by Kronecker products. Deliberately naive (no permutation
// shortcuts, no zero skipping) so its operation counts realize the dense
// matrix-vector closed forms exactly.

using KronState = std::vector<cplx>;
using KronMatrix = CMat;

/// Dense matrices stay <= 16M entries.
inline constexpr int kOracleMaxQubits = 12;

/// Block Kronecker product: block (i,j) of the result is a[i][j] * b.
KronMatrix kron(const CMat& a, const CMat& b);
KronState kron_vec(const KronState& a, const KronState& b);

CMat gate_to_matrix(const SingleQubitGate& g);

/// Kronecker chain with `g` on the given qubit slot and identities elsewhere.
KronMatrix embed_single(int n, int qubit, const SingleQubitGate& g);

/// Full 2^n x 2^n matrix of a gate-level operation. Local gates become one
/// Kronecker chain, term sums a sum of chains, and controlled gates the
/// projector sum over control bit patterns (the satisfied pattern carries the
/// target gate, the rest the identity). Refuses n > 12.
KronMatrix build_gate_matrix(const GateOp& op, int n);

/// Dense matrix-vector product; counts exactly 4^n multiplications and
/// 2^n (2^n - 1) additions.
KronState apply_oracle(const KronState& v, const KronMatrix& m, OpCounter* ops = nullptr);

/// Whether the full matrix of the operation is unitary. Individual factors
/// of a term sum may be projectors or scaled; this checks the whole.
bool gate_op_is_unitary(const GateOp& op, int n, double tol = 1e-10);

/// Probability of reading `bit` on `qubit`, and the projected renormalized
/// vector. Used to force identical measurement outcomes on both engines.
double kron_probability(const KronState& v, int n, int qubit, int bit);
KronState kron_collapse(const KronState& v, int n, int qubit, int bit);

}  // namespace tqc
