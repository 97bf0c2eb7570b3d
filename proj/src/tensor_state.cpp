// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/tensor_state.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace tqc {

namespace {

void check_finite(const std::vector<cplx>& amps) {
  for (const cplx& a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("non-finite amplitude");
}

}  // namespace

TensorState::TensorState(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n > 30) throw std::invalid_argument("qubit count too large for dense storage");
  amps_.assign(std::size_t{1} << n, cplx{});
  amps_[0] = 1.0;
}

TensorState::TensorState(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (amps_.size() != (std::size_t{1} << n))
    throw std::invalid_argument("amplitude count does not match 2^n");
  check_finite(amps_);
}

cplx TensorState::amp(const MultiIndex& idx) const {
  if (static_cast<int>(idx.size()) != n_)
    throw std::invalid_argument("multi-index length does not match qubit count");
  return amps_[multi_to_linear(idx)];
}

double TensorState::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

bool TensorState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

void TensorState::normalize() {
  const double nrm = norm();
  if (nrm < kMinBranchProb) throw std::domain_error("cannot normalize a zero state");
  for (cplx& a : amps_) a /= nrm;
}

std::size_t multi_to_linear(const MultiIndex& idx) {
  std::size_t linear = 0;
  for (int b : idx) {
    if (b != 0 && b != 1) throw std::invalid_argument("multi-index bits must be 0 or 1");
    linear = (linear << 1) | static_cast<std::size_t>(b);
  }
  return linear;
}

MultiIndex linear_to_multi(std::size_t linear, int n) {
  MultiIndex idx(n);
  for (int k = 1; k <= n; ++k) idx[k - 1] = qubit_bit(linear, n, k);
  return idx;
}

TensorState basis_state(int n, const MultiIndex& idx) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (static_cast<int>(idx.size()) != n)
    throw std::invalid_argument("multi-index length does not match qubit count");
  TensorState s(n);
  s.amps()[0] = 0.0;
  s.amps()[multi_to_linear(idx)] = 1.0;
  return s;
}

std::vector<cplx> to_kron_vector(const TensorState& s) { return s.amps(); }

TensorState from_kron_vector(std::vector<cplx> v) {
  std::size_t d = v.size();
  if (d < 2 || (d & (d - 1)) != 0)
    throw std::invalid_argument("vector length is not a power of two >= 2");
  int n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return TensorState(n, std::move(v));
}

TensorState tensor_product(const TensorState& a, const TensorState& b) {
  TensorState out(a.num_qubits() + b.num_qubits());
  auto& amps = out.amps();
  const std::size_t db = b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < db; ++j) amps[i * db + j] = a.amp(i) * b.amp(j);
  return out;
}

TensorState slice(const TensorState& s, int qubit, int bit) {
  const int n = s.num_qubits();
  if (n < 2) throw std::invalid_argument("slice requires at least 2 qubits");
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit out of range");
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");

  const int shift = n - qubit;                    // weight of the sliced axis
  const std::size_t low_mask = (std::size_t{1} << shift) - 1;
  std::vector<cplx> out(std::size_t{1} << (n - 1));
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::size_t high = o >> shift;
    const std::size_t low = o & low_mask;
    out[o] = s.amp((high << (shift + 1)) | (static_cast<std::size_t>(bit) << shift) | low);
  }
  return TensorState(n - 1, std::move(out));
}

bool approx_equal(const TensorState& a, const TensorState& b, double tol,
                  bool up_to_global_phase) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("qubit count mismatch");
  if (!up_to_global_phase) {
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (std::abs(a.amp(i) - b.amp(i)) > tol) return false;
    return true;
  }
  // <a|b> gives the phase minimizing ||a - e^{i theta} b||.
  cplx ip{};
  for (std::size_t i = 0; i < a.dim(); ++i) ip += std::conj(a.amp(i)) * b.amp(i);
  cplx phase = 1.0;
  if (std::abs(ip) > 0.0) phase = std::conj(ip) / std::abs(ip);
  double dist2 = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) dist2 += std::norm(a.amp(i) - phase * b.amp(i));
  return std::sqrt(dist2) <= tol;
}

double fidelity(const TensorState& a, const TensorState& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("qubit count mismatch");
  cplx ip{};
  for (std::size_t i = 0; i < a.dim(); ++i) ip += std::conj(a.amp(i)) * b.amp(i);
  return std::abs(ip);
}

std::string state_to_json(const TensorState& s) {
  nlohmann::ordered_json j;
  j["n"] = s.num_qubits();
  auto& amps = j["amps"];
  amps = nlohmann::ordered_json::array();
  for (const cplx& a : s.amps()) amps.push_back({a.real(), a.imag()});
  return j.dump();
}

TensorState state_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  std::vector<cplx> amps;
  for (const auto& pair : j.at("amps")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("amplitude entries must be [re, im] pairs");
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return TensorState(n, std::move(amps));
}

}  // namespace tqc
