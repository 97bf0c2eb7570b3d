// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "tensorqc/tensor_state.hpp"

namespace tqc {

/// Result of a projective measurement of one qubit. Collapsing an n-qubit
/// state yields an order n-1 post state; measuring the last qubit leaves a
/// terminal record with no post state.
struct MeasureOutcome {
  int bit = 0;
  double probability = 0.0;
  std::optional<TensorState> post_state;
};

/// Squared norm of the (qubit, bit) slice. probability(...,0) and
/// probability(...,1) add to the squared norm of the state.
double probability(const TensorState& s, int qubit, int bit);

/// Projective measurement driven by a caller-supplied draw u in [0,1):
/// outcome 0 when u < probability(s, qubit, 0). The post state is the
/// normalized slice.
MeasureOutcome measure(const TensorState& s, int qubit, double u);

/// Forces a specific outcome; branches below probability 1e-15 are
/// unreachable by sampling and rejected with std::invalid_argument.
MeasureOutcome measure_forced(const TensorState& s, int qubit, int bit);

/// Histogram of `shots` full measurements (qubit 1 first), keyed by
/// bitstring q1...qn. Deterministic for a fixed seed.
std::map<std::string, std::uint64_t> sample_counts(const TensorState& s,
                                                   std::uint64_t shots,
                                                   std::uint64_t seed);

/// {"shots": N, "counts": {"010": k, ...}}
std::string histogram_json(std::uint64_t shots,
                           const std::map<std::string, std::uint64_t>& counts);

}  // namespace tqc
