// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace tqc {

/// Tally of complex multiplications and additions. One complex multiply or
/// add counts as one, the granularity the closed-form cost formulas use.
struct OpCounter {
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;

  void count(std::uint64_t m, std::uint64_t a) {
    mults += m;
    adds += a;
  }
  OpCounter& operator+=(const OpCounter& o) {
    mults += o.mults;
    adds += o.adds;
    return *this;
  }
  friend bool operator==(const OpCounter& a, const OpCounter& b) {
    return a.mults == b.mults && a.adds == b.adds;
  }
};

struct OpCost {
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;
};

struct LocalCost {
  OpCost standard;  // dense 2^n x 2^n matrix-vector product
  OpCost tensor;    // n axis-wise 2x2 contractions
};

/// Cost of a local gate with all n factors applied.
/// standard: (4^n, 2^n(2^n-1)); tensor: (n*2^(n+1), n*2^n).
LocalCost predict_local(int n);

/// Tensor-engine cost of a controlled gate with c control conditions: the
/// conditions leave 2^(n-1-c) target-axis edges, 4 mults and 2 adds each.
OpCost predict_controlled(int n, int c);

struct TermSumCost {
  std::uint64_t mults = 0;        // r*n*2^(n+1)
  std::uint64_t adds_formula = 0;   // r*n*2^n, intra-term only
  std::uint64_t adds_measured = 0;  // + (r-1)*2^n accumulation adds
};

/// Tensor-engine cost of a sum of r multilinear terms. The reference count
/// omits the (r-1)*2^n accumulation adds; we tally them too and report both.
/// Requires 1 <= r <= 2^n.
TermSumCost predict_term_sum(int n, int r);

/// CSV table `engine,gate,n,c,r,mults_pred,mults_meas,adds_pred,adds_meas`
/// comparing the closed forms against instrumented engine runs for
/// n = 1..n_max. Predicted and measured columns must agree exactly except
/// for the documented term-sum accumulation adds.
std::string opcount_csv(int n_max);

}  // namespace tqc
