// SPDX-License-Identifier: Apache-2.0
#include "tensorqc/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensorqc/common.hpp"

namespace tqc {

namespace {

constexpr int kMaxSweeps = 100;

struct Jacobi {
  CMat w;  // working copy, columns converge to u * sigma
  CMat v;  // accumulated rotations

  explicit Jacobi(const CMat& a) : w(a), v(CMat::identity(a.cols())) {}

  // One sweep over all column pairs; returns true if any rotation fired.
  bool sweep() {
    const int m = w.rows(), n = w.cols();
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        cplx apq{};
        for (int r = 0; r < m; ++r) {
          app += std::norm(w.at(r, p));
          aqq += std::norm(w.at(r, q));
          apq += std::conj(w.at(r, p)) * w.at(r, q);
        }
        const double mag = std::abs(apq);
        if (mag <= kSvdGramTol * std::sqrt(app) * std::sqrt(aqq)) continue;
        rotated = true;

        // Phase so the coupling becomes real, then a plane rotation that
        // zeroes the off-diagonal Gram entry.
        const cplx phase = apq / mag;  // e^{i theta}
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const cplx ph_conj = std::conj(phase);

        for (int r = 0; r < m; ++r) {
          const cplx wp = w.at(r, p);
          const cplx wq = ph_conj * w.at(r, q);
          w.at(r, p) = c * wp - s * wq;
          w.at(r, q) = s * wp + c * wq;
        }
        for (int r = 0; r < n; ++r) {
          const cplx vp = v.at(r, p);
          const cplx vq = ph_conj * v.at(r, q);
          v.at(r, p) = c * vp - s * vq;
          v.at(r, q) = s * vp + c * vq;
        }
      }
    }
    return rotated;
  }
};

SvdResult svd_tall(const CMat& a) {
  const int m = a.rows(), n = a.cols();
  Jacobi j(a);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep)
    if (!j.sweep()) break;

  std::vector<double> sigma(n);
  for (int c = 0; c < n; ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += std::norm(j.w.at(r, c));
    sigma[c] = std::sqrt(s);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a_, int b_) { return sigma[a_] > sigma[b_]; });

  SvdResult out{CMat(m, n), std::vector<double>(n), CMat(n, n)};
  for (int c = 0; c < n; ++c) {
    const int src = order[c];
    out.sigma[c] = sigma[src];
    const double inv = sigma[src] > 0.0 ? 1.0 / sigma[src] : 0.0;
    for (int r = 0; r < m; ++r) out.u.at(r, c) = j.w.at(r, src) * inv;
    for (int r = 0; r < n; ++r) out.v.at(r, c) = j.v.at(r, src);
  }
  return out;
}

}  // namespace

SvdResult jacobi_svd(const CMat& a) {
  if (a.rows() >= a.cols()) return svd_tall(a);
  // Wide input: decompose the adjoint and swap the factor roles.
  SvdResult t = svd_tall(a.adjoint());
  return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

std::vector<double> singular_values(const CMat& a) { return jacobi_svd(a).sigma; }

int rank_of_singular_values(const std::vector<double>& sigma, double rel_tol) {
  if (sigma.empty() || sigma[0] <= 0.0) return 0;
  const double cut = rel_tol * sigma[0];
  int rank = 0;
  for (double s : sigma)
    if (s > cut) ++rank;
  return rank;
}

}  // namespace tqc
