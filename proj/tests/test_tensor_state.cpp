// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/tensor_state.hpp"

#include <cmath>

#include "doctest.h"
#include "tensorqc/oracle_kron.hpp"
#include "test_helpers.hpp"

using namespace tqc;

namespace {

double max_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_SUITE_BEGIN("tensor_state");

TEST_CASE("basis states and the flattening convention") {
  CHECK(to_kron_vector(basis_state(1, {0})) == std::vector<cplx>{1.0, 0.0});
  // |01> flattens to the second basis vector, matching the Kronecker product.
  CHECK(to_kron_vector(basis_state(2, {0, 1})) == std::vector<cplx>{0.0, 1.0, 0.0, 0.0});
  CHECK(basis_state(3, {1, 0, 0}).amp(std::size_t{4}) == cplx{1.0});
  CHECK(basis_state(3, {1, 0, 0}).is_normalized());
}

TEST_CASE("basis states agree with Kronecker products of unit vectors") {
  const std::vector<cplx> e0{1.0, 0.0}, e1{0.0, 1.0};
  for (std::size_t i = 0; i < 8; ++i) {
    const MultiIndex idx = linear_to_multi(i, 3);
    KronState expect = kron_vec(idx[0] ? e1 : e0, idx[1] ? e1 : e0);
    expect = kron_vec(expect, idx[2] ? e1 : e0);
    CHECK(to_kron_vector(basis_state(3, idx)) == expect);
  }
}

TEST_CASE("kron vector round trip is exact") {
  SplitMix64 rng(11);
  for (int n = 1; n <= 10; ++n) {
    const TensorState s = test::rnd_state(n, rng);
    const TensorState back = from_kron_vector(to_kron_vector(s));
    CHECK(back.num_qubits() == n);
    CHECK(back.amps() == s.amps());
  }
}

TEST_CASE("single qubit states flatten to themselves") {
  const TensorState s(1, {cplx{0.6}, cplx{0.0, 0.8}});
  CHECK(to_kron_vector(s) == s.amps());
}

TEST_CASE("tensor product") {
  const TensorState a = basis_state(1, {0});
  const TensorState b = basis_state(1, {1});
  CHECK(to_kron_vector(tensor_product(a, b)) == to_kron_vector(basis_state(2, {0, 1})));

  // (a|0> + b|1>) (x) |0> (x) |0> lands the two amplitudes at 000 and 100.
  const cplx alpha{0.6}, beta{0.8};
  const TensorState phi(1, {alpha, beta});
  const TensorState psi0 = tensor_product(tensor_product(phi, a), a);
  CHECK(to_kron_vector(psi0) ==
        std::vector<cplx>{alpha, 0.0, 0.0, 0.0, beta, 0.0, 0.0, 0.0});

  const TensorState plus(1, {kInvSqrt2, kInvSqrt2});
  const TensorState pp = tensor_product(plus, plus);
  const KronState expect = kron_vec(to_kron_vector(plus), to_kron_vector(plus));
  CHECK(max_dev(to_kron_vector(pp), expect) == 0.0);
  for (const cplx& v : pp.amps()) CHECK(std::abs(v - 0.5) < 1e-15);
}

TEST_CASE("flattening is consistent with the Kronecker product") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const TensorState a = test::rnd_state(1 + static_cast<int>(rng.next() % 3), rng);
    const TensorState b = test::rnd_state(1 + static_cast<int>(rng.next() % 3), rng);
    const auto lhs = to_kron_vector(tensor_product(a, b));
    const auto rhs = kron_vec(to_kron_vector(a), to_kron_vector(b));
    CHECK(max_dev(lhs, rhs) < 1e-14);
  }
}

TEST_CASE("slice") {
  const TensorState s01 = basis_state(2, {0, 1});
  const TensorState sl = slice(s01, 1, 0);
  CHECK(sl.num_qubits() == 1);
  CHECK(to_kron_vector(sl) == std::vector<cplx>{0.0, 1.0});
  CHECK(sl.norm() == doctest::Approx(1.0));

  const TensorState bell(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  const TensorState half = slice(bell, 1, 0);
  CHECK(std::abs(half.amp(std::size_t{0}) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(half.amp(std::size_t{1})) == 0.0);
  CHECK(half.norm() * half.norm() == doctest::Approx(0.5));

  // psi0 has the second qubit in |0>, so its |1> half is empty.
  const TensorState psi0(3, {cplx{0.6}, 0.0, 0.0, 0.0, cplx{0.8}, 0.0, 0.0, 0.0});
  const TensorState empty = slice(psi0, 2, 1);
  for (const cplx& v : empty.amps()) CHECK(v == cplx{});
}

TEST_CASE("slice squared norms add to one") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 4);
    const TensorState s = test::rnd_state(n, rng);
    for (int k = 1; k <= n; ++k) {
      const double p0 = std::pow(slice(s, k, 0).norm(), 2);
      const double p1 = std::pow(slice(s, k, 1).norm(), 2);
      CHECK(std::abs(p0 + p1 - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("approx_equal and global phase") {
  const TensorState zero = basis_state(1, {0});
  TensorState minus_zero = zero;
  minus_zero.amps()[0] = -1.0;
  CHECK(approx_equal(zero, minus_zero, 1e-12, true));
  CHECK_FALSE(approx_equal(zero, minus_zero, 1e-12, false));

  // |+> equals H|0> computed in matrix notation.
  const TensorState plus(1, {kInvSqrt2, kInvSqrt2});
  const KronState h0 = apply_oracle(to_kron_vector(zero), gate_to_matrix(gate::h()));
  CHECK(approx_equal(plus, from_kron_vector(h0), 1e-12, false));
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(basis_state(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(basis_state(2, {0}), std::invalid_argument);
  CHECK_THROWS_AS(basis_state(2, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TensorState(1, {cplx{1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TensorState(1, {cplx{std::nan("")}, cplx{}}), std::invalid_argument);
  const TensorState bell(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  CHECK_THROWS_AS(slice(bell, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(slice(basis_state(1, {0}), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(approx_equal(bell, basis_state(1, {0}), 1e-9, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_kron_vector({cplx{1.0}, cplx{}, cplx{}}), std::invalid_argument);
  CHECK_THROWS_AS(from_kron_vector({cplx{1.0}}), std::invalid_argument);
}

TEST_CASE("json round trip") {
  SplitMix64 rng(14);
  const TensorState s = test::rnd_state(3, rng);
  const TensorState back = state_from_json(state_to_json(s));
  CHECK(back.num_qubits() == 3);
  CHECK(back.amps() == s.amps());
  CHECK(state_to_json(s).find("\"n\":3") != std::string::npos);
}

TEST_SUITE_END();
