// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace tqc {

using cplx = std::complex<double>;

// Shared tolerances. Rank and vertex-emphasis thresholds are relative to the
// largest singular value / amplitude; the others are absolute.
inline constexpr double kNormTol = 1e-10;       // normalization check
inline constexpr double kCompareTol = 1e-12;    // default state comparison
inline constexpr double kRankRelTol = 1e-9;     // singular-value rank cutoff
inline constexpr double kHyperdetTol = 1e-10;   // GHZ/W discrimination
inline constexpr double kSvdGramTol = 1e-14;    // Jacobi sweep convergence
inline constexpr double kVizAmpTol = 1e-9;      // nonzero-vertex emphasis
inline constexpr double kMinBranchProb = 1e-15; // forced-measurement floor

// Bit of qubit k (1-based, qubit 1 most significant) inside the linear index
// L = q1*2^(n-1) + q2*2^(n-2) + ... + qn*2^0 of an n-qubit register.
inline int qubit_bit(std::size_t linear, int n, int qubit) {
  return static_cast<int>((linear >> (n - qubit)) & std::size_t{1});
}

// splitmix64. The only generator used on sampling paths, so any run is
// reproducible from a single 64-bit seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace tqc
