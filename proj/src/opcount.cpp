// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/opcount.hpp"

#include <sstream>
#include <stdexcept>

#include "tensorqc/gates.hpp"
#include "tensorqc/oracle_kron.hpp"

namespace tqc {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > 30) throw std::invalid_argument("n too large");
}

}  // namespace

LocalCost predict_local(int n) {
  check_n(n);
  LocalCost c;
  c.standard.mults = pow2(2 * n);               // 4^n
  c.standard.adds = pow2(n) * (pow2(n) - 1);    // 2^n (2^n - 1)
  c.tensor.mults = static_cast<std::uint64_t>(n) * pow2(n + 1);
  c.tensor.adds = static_cast<std::uint64_t>(n) * pow2(n);
  return c;
}

OpCost predict_controlled(int n, int c) {
  check_n(n);
  if (c < 0 || c > n - 1) throw std::invalid_argument("control count must be in 0..n-1");
  return {4 * pow2(n - 1 - c), 2 * pow2(n - 1 - c)};
}

TermSumCost predict_term_sum(int n, int r) {
  check_n(n);
  if (r < 1 || static_cast<std::uint64_t>(r) > pow2(n))
    throw std::invalid_argument("rank must be in 1..2^n");
  TermSumCost c;
  c.mults = static_cast<std::uint64_t>(r) * n * pow2(n + 1);
  c.adds_formula = static_cast<std::uint64_t>(r) * n * pow2(n);
  c.adds_measured = c.adds_formula + static_cast<std::uint64_t>(r - 1) * pow2(n);
  return c;
}

namespace {

struct Row {
  const char* engine;
  const char* gate;
  int n;
  int c = -1;
  int r = -1;
  std::uint64_t mp, mm, ap, am;
};

void emit(std::ostringstream& os, const Row& row) {
  os << row.engine << ',' << row.gate << ',' << row.n << ',';
  if (row.c >= 0) os << row.c;
  os << ',';
  if (row.r >= 0) os << row.r;
  os << ',' << row.mp << ',' << row.mm << ',' << row.ap << ',' << row.am << '\n';
}

GateTerm hadamard_term(int n) {
  GateTerm t;
  t.factors.assign(n, gate::h());
  return t;
}

}  // namespace

std::string opcount_csv(int n_max) {
  check_n(n_max);
  std::ostringstream os;
  os << "engine,gate,n,c,r,mults_pred,mults_meas,adds_pred,adds_meas\n";

  for (int n = 1; n <= n_max; ++n) {
    const TensorState zeros(n);
    const LocalCost local = predict_local(n);

    // Standard engine: dense matrix applied to the full register.
    if (n <= kOracleMaxQubits) {
      OpCounter ops;
      const GateOp op = MultilinearGate{{hadamard_term(n)}};
      apply_oracle(to_kron_vector(zeros), build_gate_matrix(op, n), &ops);
      emit(os, {"standard", "local", n, -1, -1, local.standard.mults, ops.mults,
                local.standard.adds, ops.adds});
    }

    // Tensor engine: n sequential axis contractions.
    {
      OpCounter ops;
      apply_term(zeros, hadamard_term(n), &ops);
      emit(os, {"tensor", "local", n, -1, -1, local.tensor.mults, ops.mults,
                local.tensor.adds, ops.adds});
    }

    // Controlled gates, every control count.
    for (int c = 0; c <= n - 1; ++c) {
      QuasiMultilinearGate g;
      g.n = n;
      g.target = 1;
      for (int q = 2; q <= c + 1; ++q) g.controls.push_back({q, 0});
      g.gate = gate::x();
      OpCounter ops;
      apply_controlled(zeros, g, &ops);
      const OpCost pred = predict_controlled(n, c);
      emit(os, {"tensor", "controlled", n, c, -1, pred.mults, ops.mults, pred.adds, ops.adds});
    }

    // Term sums of a few ranks.
    for (int r = 1; r <= 3 && static_cast<std::uint64_t>(r) <= pow2(n); ++r) {
      MultilinearGate g;
      for (int i = 0; i < r; ++i) g.terms.push_back(hadamard_term(n));
      OpCounter ops;
      apply_multilinear(zeros, g, &ops);
      const TermSumCost pred = predict_term_sum(n, r);
      emit(os, {"tensor", "termsum", n, -1, r, pred.mults, ops.mults, pred.adds_formula,
                ops.adds});
    }
  }
  return os.str();
}

}  // namespace tqc
