// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/rank_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace tqc {

namespace {

int log2_exact(int d) {
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

// Index of the sub-multi-index formed by the `qubits` bits of `linear`,
// most significant first.
std::size_t gather_bits(std::size_t linear, int n, const std::vector<int>& qubits) {
  std::size_t out = 0;
  for (int q : qubits) out = (out << 1) | static_cast<std::size_t>(qubit_bit(linear, n, q));
  return out;
}

}  // namespace

Bipartition Bipartition::of(int n, std::vector<int> left) {
  if (n < 2) throw std::invalid_argument("bipartition needs at least 2 qubits");
  std::sort(left.begin(), left.end());
  if (left.empty() || static_cast<int>(left.size()) >= n)
    throw std::invalid_argument("left side must be a nonempty proper subset");
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] < 1 || left[i] > n) throw std::invalid_argument("qubit out of range");
    if (i > 0 && left[i] == left[i - 1]) throw std::invalid_argument("duplicate qubit");
  }
  return Bipartition{n, std::move(left)};
}

std::vector<int> Bipartition::right() const {
  std::vector<int> r;
  std::size_t j = 0;
  for (int q = 1; q <= n; ++q) {
    if (j < left.size() && left[j] == q) {
      ++j;
      continue;
    }
    r.push_back(q);
  }
  return r;
}

std::vector<Bipartition> all_bipartitions(int n) {
  std::vector<Bipartition> out;
  // Subsets of {2..n} joined with {1}, excluding the full set.
  const std::size_t rest = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask + 1 < rest; ++mask) {
    std::vector<int> left{1};
    for (int q = 2; q <= n; ++q)
      if ((mask >> (q - 2)) & 1u) left.push_back(q);
    out.push_back(Bipartition::of(n, std::move(left)));
  }
  return out;
}

CMat mode_unfolding(const TensorState& s, const Bipartition& p) {
  const int n = s.num_qubits();
  if (p.n != n) throw std::invalid_argument("bipartition width does not match state");
  const std::vector<int> right = p.right();
  CMat m(1 << p.left.size(), 1 << right.size());
  for (std::size_t i = 0; i < s.dim(); ++i)
    m.at(static_cast<int>(gather_bits(i, n, p.left)),
         static_cast<int>(gather_bits(i, n, right))) = s.amp(i);
  return m;
}

int schmidt_rank(const TensorState& s, const Bipartition& p, double rel_tol) {
  return rank_of_singular_values(singular_values(mode_unfolding(s, p)), rel_tol);
}

int max_unfolding_rank(const TensorState& s, double rel_tol) {
  int best = 0;
  for (const Bipartition& p : all_bipartitions(s.num_qubits()))
    best = std::max(best, schmidt_rank(s, p, rel_tol));
  return best;
}

SchmidtDecomposition schmidt_decompose(const TensorState& s, const Bipartition& p) {
  const CMat m = mode_unfolding(s, p);
  const SvdResult svd = jacobi_svd(m);
  const int keep = rank_of_singular_values(svd.sigma, kRankRelTol);

  SchmidtDecomposition out;
  for (int k = 0; k < keep; ++k) {
    out.coefficients.push_back(svd.sigma[k]);
    std::vector<cplx> lv(m.rows()), rv(m.cols());
    for (int r = 0; r < m.rows(); ++r) lv[r] = svd.u.at(r, k);
    // m = sum_k beta_k u_k v_k^dagger, so the right family is conj(v_k).
    for (int r = 0; r < m.cols(); ++r) rv[r] = std::conj(svd.v.at(r, k));
    out.left_vectors.push_back(std::move(lv));
    out.right_vectors.push_back(std::move(rv));
  }
  return out;
}

std::string ThreeQubitClass::label() const {
  switch (kind) {
    case StateClassKind::Product: return "PRODUCT";
    case StateClassKind::Biproduct: return "BIPRODUCT(" + std::to_string(separable_qubit) + ")";
    case StateClassKind::W: return "W";
    case StateClassKind::GHZ: return "GHZ";
  }
  return "?";
}

cplx cayley_hyperdet(const TensorState& s) {
  if (s.num_qubits() != 3) throw std::invalid_argument("hyperdeterminant needs 3 qubits");
  const auto& a = s.amps();
  const cplx a000 = a[0], a001 = a[1], a010 = a[2], a011 = a[3];
  const cplx a100 = a[4], a101 = a[5], a110 = a[6], a111 = a[7];
  const cplx sq = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                  a010 * a010 * a101 * a101 + a011 * a011 * a100 * a100;
  const cplx cross = a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 +
                     a000 * a011 * a100 * a111 + a001 * a010 * a101 * a110 +
                     a001 * a011 * a110 * a100 + a010 * a011 * a101 * a100;
  const cplx quad = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
  return sq - 2.0 * cross + 4.0 * quad;
}

ThreeQubitClass three_qubit_class(const TensorState& s, double tol) {
  if (s.num_qubits() != 3) throw std::invalid_argument("classification needs 3 qubits");
  if (!s.is_normalized()) throw std::invalid_argument("state must be normalized");

  int rank1_count = 0;
  int rank1_qubit = 0;
  for (int k = 1; k <= 3; ++k) {
    if (schmidt_rank(s, Bipartition::of(3, {k})) == 1) {
      ++rank1_count;
      rank1_qubit = k;
    }
  }
  const double hd = std::abs(cayley_hyperdet(s));
  if (rank1_count == 3) return {StateClassKind::Product, 0, hd};
  if (rank1_count >= 1) return {StateClassKind::Biproduct, rank1_qubit, hd};
  if (hd > tol) return {StateClassKind::GHZ, 0, hd};
  return {StateClassKind::W, 0, hd};
}

CMat gate_realignment(const CMat& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  CMat r(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r.at(2 * i + j, 2 * k + l) = m.at(2 * i + k, 2 * j + l);
  return r;
}

CMat realign(const CMat& m, const Bipartition& p) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expected a square matrix");
  const int n = log2_exact(m.rows());
  if (p.n != n) throw std::invalid_argument("bipartition width does not match matrix");
  const std::vector<int> right = p.right();
  const int dl = 1 << p.left.size(), dr = 1 << right.size();
  CMat r(dl * dl, dr * dr);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto rl = gather_bits(i, n, p.left), cl = gather_bits(j, n, p.left);
      const auto rr = gather_bits(i, n, right), cr = gather_bits(j, n, right);
      r.at(static_cast<int>(rl * dl + cl), static_cast<int>(rr * dr + cr)) = m.at(i, j);
    }
  return r;
}

int realignment_rank(const CMat& m, double rel_tol) {
  const int n = log2_exact(m.rows());
  const CMat r = (n == 2) ? gate_realignment(m) : realign(m, Bipartition::of(n, {1}));
  return rank_of_singular_values(singular_values(r), rel_tol);
}

OperatorSchmidt operator_schmidt(const CMat& m, const Bipartition& p) {
  const CMat r = realign(m, p);
  const SvdResult svd = jacobi_svd(r);
  const int keep = rank_of_singular_values(svd.sigma, kRankRelTol);
  const int dl = 1 << p.left.size();
  const int dr = 1 << (p.n - static_cast<int>(p.left.size()));

  OperatorSchmidt out;
  for (int k = 0; k < keep; ++k) {
    out.coefficients.push_back(svd.sigma[k]);
    CMat a(dl, dl), b(dr, dr);
    for (int i = 0; i < dl; ++i)
      for (int j = 0; j < dl; ++j) a.at(i, j) = svd.u.at(i * dl + j, k);
    for (int i = 0; i < dr; ++i)
      for (int j = 0; j < dr; ++j) b.at(i, j) = std::conj(svd.v.at(i * dr + j, k));
    out.factor_pairs.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

CMat operator_schmidt_reconstruct(const OperatorSchmidt& os, const Bipartition& p) {
  const std::vector<int> right = p.right();
  const int n = p.n;
  const int d = 1 << n;
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto rl = gather_bits(i, n, p.left), cl = gather_bits(j, n, p.left);
      const auto rr = gather_bits(i, n, right), cr = gather_bits(j, n, right);
      cplx acc{};
      for (std::size_t k = 0; k < os.coefficients.size(); ++k)
        acc += os.coefficients[k] *
               os.factor_pairs[k].first.at(static_cast<int>(rl), static_cast<int>(cl)) *
               os.factor_pairs[k].second.at(static_cast<int>(rr), static_cast<int>(cr));
      m.at(i, j) = acc;
    }
  return m;
}

std::string state_report_json(const TensorState& s) {
  nlohmann::ordered_json j;
  j["n"] = s.num_qubits();
  auto& parts = j["bipartitions"];
  parts = nlohmann::ordered_json::array();
  int max_rank = 0;
  if (s.num_qubits() >= 2) {
    for (const Bipartition& p : all_bipartitions(s.num_qubits())) {
      const auto dec = schmidt_decompose(s, p);
      nlohmann::ordered_json entry;
      entry["left"] = p.left;
      entry["rank"] = dec.coefficients.size();
      entry["coeffs"] = dec.coefficients;
      parts.push_back(std::move(entry));
      max_rank = std::max(max_rank, static_cast<int>(dec.coefficients.size()));
    }
  } else {
    max_rank = 1;
  }
  j["max_unfolding_rank"] = max_rank;
  j["rank_note"] = "max unfolding rank is a certified lower bound on the CP rank";
  if (s.num_qubits() == 3) {
    const auto cls = three_qubit_class(s);
    j["class"] = cls.label();
    j["hyperdet"] = cls.hyperdet_abs;
  }
  return j.dump();
}

std::string gate_report_json(const CMat& m) {
  const int n = log2_exact(m.rows());
  nlohmann::ordered_json j;
  j["n"] = n;
  j["dim"] = m.rows();
  j["unitary"] = m.is_unitary();
  if (n >= 2) {
    auto& parts = j["splits"];
    parts = nlohmann::ordered_json::array();
    for (const Bipartition& p : all_bipartitions(n)) {
      const auto os = operator_schmidt(m, p);
      nlohmann::ordered_json entry;
      entry["left"] = p.left;
      entry["terms"] = os.coefficients.size();
      entry["coeffs"] = os.coefficients;
      parts.push_back(std::move(entry));
    }
    if (n == 2) {
      j["realignment_rank"] = realignment_rank(m);
      j["product_gate"] = (realignment_rank(m) == 1);
    }
  }
  return j.dump();
}

}  // namespace tqc
