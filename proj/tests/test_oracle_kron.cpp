// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/oracle_kron.hpp"

#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace tqc;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_SUITE_BEGIN("oracle_kron");

TEST_CASE("kron block structure") {
  const CMat eye4 = kron(CMat::identity(2), CMat::identity(2));
  CHECK(max_abs_diff(eye4, CMat::identity(4)) == 0.0);

  // first row of X (x) Z from the block formula: a0 = 0, a1 = 1
  const CMat xz = kron(gate_to_matrix(gate::x()), gate_to_matrix(gate::z()));
  CHECK(xz.at(0, 0) == cplx{0.0});
  CHECK(xz.at(0, 1) == cplx{0.0});
  CHECK(xz.at(0, 2) == cplx{1.0});
  CHECK(xz.at(0, 3) == cplx{0.0});

  CHECK(kron_vec({1.0, 0.0}, {0.0, 1.0}) == KronState{0.0, 1.0, 0.0, 0.0});
}

TEST_CASE("kron chains associate") {
  // bit-exact for the library entries (0, +-1, +-i, +-1/sqrt2)
  const SingleQubitGate lib[] = {gate::i(), gate::x(), gate::y(),
                                 gate::z(), gate::h(), gate::s()};
  SplitMix64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat a = gate_to_matrix(lib[rng.next() % 6]);
    const CMat b = gate_to_matrix(lib[rng.next() % 6]);
    const CMat c = gate_to_matrix(lib[rng.next() % 6]);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
  }
  // and within rounding for arbitrary entries
  const CMat a = test::rnd_unitary(2, rng), b = test::rnd_unitary(2, rng),
             c = test::rnd_unitary(2, rng);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-15);
}

TEST_CASE("build_gate_matrix") {
  // H on qubit 2 of 3 is the 8x8 chain 1 (x) H (x) 1
  const CMat h2 = build_gate_matrix(GateOp{AppliedGate{2, gate::h()}}, 3);
  const CMat chain = kron(kron(CMat::identity(2), gate_to_matrix(gate::h())), CMat::identity(2));
  CHECK(max_abs_diff(h2, chain) == 0.0);

  // CNOT(1 -> 2) permutes rows 3 and 4
  const CMat cnot = build_gate_matrix(GateOp{QuasiMultilinearGate{2, {{1, 1}}, 2, gate::x()}}, 2);
  CMat want(4, 4);
  want.at(0, 0) = want.at(1, 1) = want.at(2, 3) = want.at(3, 2) = 1.0;
  CHECK(max_abs_diff(cnot, want) == 0.0);

  // no controls: a plain local chain
  const CMat bare = build_gate_matrix(GateOp{QuasiMultilinearGate{2, {}, 1, gate::h()}}, 2);
  CHECK(max_abs_diff(bare, kron(gate_to_matrix(gate::h()), CMat::identity(2))) == 0.0);

  CHECK_THROWS_AS(build_gate_matrix(GateOp{AppliedGate{1, gate::h()}}, 13),
                  std::invalid_argument);
}

TEST_CASE("controlled matrices match their term expansion") {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    QuasiMultilinearGate g;
    g.n = n;
    std::vector<int> qubits(n);
    for (int q = 0; q < n; ++q) qubits[q] = q + 1;
    for (int q = n - 1; q > 0; --q) std::swap(qubits[q], qubits[rng.next() % (q + 1)]);
    g.target = qubits[0];
    const int c = 1 + static_cast<int>(rng.next() % (n - 1));
    for (int k = 1; k <= c; ++k)
      g.controls.push_back({qubits[k], static_cast<int>(rng.next() % 2)});
    g.gate = test::rnd_unitary2(rng);
    const CMat direct = build_gate_matrix(GateOp{g}, n);
    const CMat expanded = build_gate_matrix(GateOp{controlled_to_terms(g)}, n);
    CHECK(max_abs_diff(direct, expanded) < 1e-14);
  }
}

TEST_CASE("apply_oracle") {
  SplitMix64 rng(63);
  const TensorState s = test::rnd_state(3, rng);
  const KronState same = apply_oracle(to_kron_vector(s), CMat::identity(8));
  CHECK(to_kron_vector(s) == same);

  // (1 (x) H (x) 1) psi0 = flattened psi1
  const cplx alpha{0.6}, beta{0.8};
  const KronState psi0{alpha, 0.0, 0.0, 0.0, beta, 0.0, 0.0, 0.0};
  const KronState psi1 = apply_oracle(psi0, build_gate_matrix(GateOp{AppliedGate{2, gate::h()}}, 3));
  const KronState want{alpha * kInvSqrt2, 0.0, alpha * kInvSqrt2, 0.0,
                       beta * kInvSqrt2,  0.0, beta * kInvSqrt2,  0.0};
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(psi1[i] - want[i]) < 1e-15);

  // random unitary preserves the norm
  const CMat u = test::rnd_unitary(8, rng);
  const KronState rotated = apply_oracle(to_kron_vector(s), u);
  double nrm = 0.0;
  for (const cplx& v : rotated) nrm += std::norm(v);
  CHECK(std::abs(std::sqrt(nrm) - 1.0) < 1e-12);

  CHECK_THROWS_AS(apply_oracle(psi0, CMat::identity(4)), std::invalid_argument);
}

TEST_CASE("oracle op counts are the dense closed forms") {
  for (int n = 1; n <= 6; ++n) {
    OpCounter ops;
    const TensorState s(n);
    apply_oracle(to_kron_vector(s), CMat::identity(1 << n), &ops);
    CHECK(ops.mults == (std::uint64_t{1} << (2 * n)));
    CHECK(ops.adds == (std::uint64_t{1} << n) * ((std::uint64_t{1} << n) - 1));
  }
}

TEST_CASE("collapse projects and renormalizes") {
  const KronState bell{kInvSqrt2, 0.0, 0.0, kInvSqrt2};
  CHECK(kron_probability(bell, 2, 1, 1) == doctest::Approx(0.5));
  const KronState post = kron_collapse(bell, 2, 1, 1);
  CHECK(std::abs(post[3] - 1.0) < 1e-12);
  CHECK(std::abs(post[0]) == 0.0);
  CHECK_THROWS_AS(kron_collapse(KronState{1.0, 0.0, 0.0, 0.0}, 2, 1, 1),
                  std::invalid_argument);
}

TEST_SUITE_END();
