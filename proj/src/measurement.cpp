// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace tqc {

double probability(const TensorState& s, int qubit, int bit) {
  const int n = s.num_qubits();
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit out of range");
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  double p = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (qubit_bit(i, n, qubit) == bit) p += std::norm(s.amp(i));
  return p;
}

namespace {

MeasureOutcome collapse(const TensorState& s, int qubit, int bit, double p) {
  MeasureOutcome out;
  out.bit = bit;
  out.probability = p;
  if (s.num_qubits() >= 2) {
    TensorState post = slice(s, qubit, bit);
    const double scale = 1.0 / std::sqrt(p);
    for (cplx& a : post.amps()) a *= scale;
    out.post_state = std::move(post);
  }
  return out;
}

}  // namespace

MeasureOutcome measure(const TensorState& s, int qubit, double u) {
  const double p0 = probability(s, qubit, 0);
  const int bit = (u < p0) ? 0 : 1;
  return collapse(s, qubit, bit, bit == 0 ? p0 : 1.0 - p0);
}

MeasureOutcome measure_forced(const TensorState& s, int qubit, int bit) {
  const double p = probability(s, qubit, bit);
  if (p < kMinBranchProb) throw std::invalid_argument("zero-probability branch");
  return collapse(s, qubit, bit, p);
}

std::map<std::string, std::uint64_t> sample_counts(const TensorState& s,
                                                   std::uint64_t shots,
                                                   std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int n = s.num_qubits();
  SplitMix64 rng(seed);
  std::map<std::string, std::uint64_t> counts;
  std::string bits(n, '0');
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    TensorState cur = s;
    for (int q = 0; q < n - 1; ++q) {
      MeasureOutcome o = measure(cur, 1, rng.next_double());
      bits[q] = o.bit ? '1' : '0';
      cur = std::move(*o.post_state);
    }
    bits[n - 1] = measure(cur, 1, rng.next_double()).bit ? '1' : '0';
    ++counts[bits];
  }
  return counts;
}

std::string histogram_json(std::uint64_t shots,
                           const std::map<std::string, std::uint64_t>& counts) {
  nlohmann::ordered_json j;
  j["shots"] = shots;
  auto& c = j["counts"];
  c = nlohmann::ordered_json::object();
  for (const auto& [bits, k] : counts) c[bits] = k;
  return j.dump();
}

}  // namespace tqc
