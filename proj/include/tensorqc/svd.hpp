// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tensorqc/matrix.hpp"

namespace tqc {

/// a = u * diag(sigma) * v^dagger with sigma descending, u and v having
/// orthonormal columns (min(rows, cols) of them).
struct SvdResult {
  CMat u;
  std::vector<double> sigma;
  CMat v;
};

/// One-sided Jacobi SVD for small dense complex matrices (the shapes here
/// top out around 64x64). Columns are orthogonalized by plane rotations;
/// a sweep ends the iteration once every off-diagonal Gram entry satisfies
/// |<a_p, a_q>| <= 1e-14 * ||a_p|| * ||a_q||.
SvdResult jacobi_svd(const CMat& a);

/// Descending singular values only.
std::vector<double> singular_values(const CMat& a);

/// Count of singular values above rel_tol * sigma_max (0 for a zero matrix).
int rank_of_singular_values(const std::vector<double>& sigma, double rel_tol);

}  // namespace tqc
