// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "tensorqc/common.hpp"

namespace tqc {

// Dense row-major complex matrix. Sized for this project: reference gate
// matrices up to 4096x4096 and realignments up to 4^|L| x 4^|R|.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const cplx& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<cplx>& data() const { return a_; }

  CMat adjoint() const {
    CMat m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
  }

  friend CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    CMat m(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int k = 0; k < a.cols_; ++k) {
        const cplx v = a.at(r, k);
        if (v == cplx{}) continue;
        for (int c = 0; c < b.cols_; ++c) m.at(r, c) += v * b.at(k, c);
      }
    return m;
  }

  friend CMat operator+(const CMat& a, const CMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
    CMat m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
  }

  CMat scaled(cplx k) const {
    CMat m = *this;
    for (auto& v : m.a_) v *= k;
    return m;
  }

  bool is_unitary(double tol = 1e-10) const {
    if (rows_ != cols_) return false;
    const CMat g = adjoint() * (*this);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        const cplx want = (r == c) ? cplx{1.0} : cplx{};
        if (std::abs(g.at(r, c) - want) > tol) return false;
      }
    return true;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

inline double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  return m;
}

}  // namespace tqc
