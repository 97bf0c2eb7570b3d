// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tensorqc/matrix.hpp"
#include "tensorqc/svd.hpp"
#include "tensorqc/tensor_state.hpp"

namespace tqc {

/// Split of {1..n} into a nonempty proper `left` subset and its complement.
struct Bipartition {
  int n = 0;
  std::vector<int> left;  // sorted ascending

  static Bipartition of(int n, std::vector<int> left);  // validates
  std::vector<int> right() const;
};

/// Every bipartition up to side swap: the subsets containing qubit 1.
std::vector<Bipartition> all_bipartitions(int n);

/// 2^|left| x 2^|right| matrix whose (row, col) entry is the amplitude at
/// the merged multi-index; both sides flatten most-significant-first in
/// ascending qubit order.
CMat mode_unfolding(const TensorState& s, const Bipartition& p);

/// Singular values of the unfolding above rel_tol * sigma_max. 1 iff the
/// state is separable across the split.
int schmidt_rank(const TensorState& s, const Bipartition& p, double rel_tol = kRankRelTol);

/// Largest Schmidt rank over all bipartitions: a certified lower bound on
/// the CP rank (which itself is not computed; finding it is intractable for
/// order >= 4).
int max_unfolding_rank(const TensorState& s, double rel_tol = kRankRelTol);

struct SchmidtDecomposition {
  std::vector<double> coefficients;               // descending, > cutoff
  std::vector<std::vector<cplx>> left_vectors;    // orthonormal, dim 2^|left|
  std::vector<std::vector<cplx>> right_vectors;   // orthonormal, dim 2^|right|
};

SchmidtDecomposition schmidt_decompose(const TensorState& s, const Bipartition& p);

enum class StateClassKind { Product, Biproduct, W, GHZ };

struct ThreeQubitClass {
  StateClassKind kind;
  int separable_qubit = 0;  // set for Biproduct
  double hyperdet_abs = 0.0;
  std::string label() const;  // "PRODUCT", "BIPRODUCT(3)", "W", "GHZ"
};

/// Degree-4 Cayley polynomial of the 2x2x2 amplitudes; nonzero exactly on
/// the GHZ orbit.
cplx cayley_hyperdet(const TensorState& s);

/// SLOCC class of a normalized 3-qubit state: PRODUCT if all three
/// single-qubit unfoldings have rank 1, BIPRODUCT(k) if exactly the (k|rest)
/// unfolding does, otherwise GHZ when |hyperdet| > tol and W when not.
ThreeQubitClass three_qubit_class(const TensorState& s, double tol = kHyperdetTol);

/// Rearranges a two-qubit gate matrix so that a product gate A (x) B becomes
/// the rank-1 outer product vec(A) vec(B)^T (row-major vec). 4x4 input only.
CMat gate_realignment(const CMat& m);

/// General realignment of a 2^n x 2^n matrix across a bipartition:
/// row (vec of the left factor), column (vec of the right factor).
CMat realign(const CMat& m, const Bipartition& p);

int realignment_rank(const CMat& m, double rel_tol = kRankRelTol);

struct OperatorSchmidt {
  std::vector<double> coefficients;                // descending, > cutoff
  std::vector<std::pair<CMat, CMat>> factor_pairs;  // 2^|L| and 2^|R| square
};

/// SVD of the realignment: m = sum_i c_i A_i (x) B_i with the minimal number
/// of terms for the split.
OperatorSchmidt operator_schmidt(const CMat& m, const Bipartition& p);

/// Rebuilds the matrix from an operator-Schmidt decomposition (inverse of
/// the realignment route), for reconstruction checks.
CMat operator_schmidt_reconstruct(const OperatorSchmidt& os, const Bipartition& p);

/// Analysis report used by the CLI:
/// {"bipartitions":[{"left":[...],"rank":k,"coeffs":[...]}], "class":...,
///  "hyperdet":..., "max_unfolding_rank":...}.
std::string state_report_json(const TensorState& s);
std::string gate_report_json(const CMat& m);

}  // namespace tqc
