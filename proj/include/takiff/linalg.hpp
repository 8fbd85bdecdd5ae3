// Copyright 2026 The takiff authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "takiff/rational.hpp"

namespace takiff {

using RatVec = std::vector<Rat>;

// Dense matrix over exact rationals. Row-major.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const RatMat& o) const { return !(*this == o); }

  RatMat operator+(const RatMat& o) const {
    check_same_shape(o);
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  RatMat operator-(const RatMat& o) const {
    check_same_shape(o);
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }
  RatMat operator*(const Rat& s) const {
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
  }

  RatVec apply(const RatVec& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    RatVec r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  RatMat transpose() const {
    RatMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Rat trace() const {
    Rat t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
  }

  // Graded commutator AB - (-1)^{pq} BA.
  static RatMat graded_comm(const RatMat& a, const RatMat& b, int pa, int pb) {
    RatMat ab = a * b, ba = b * a;
    if ((pa & 1) && (pb & 1)) return ab + ba;
    return ab - ba;
  }

 private:
  void check_same_shape(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  int rows_, cols_;
  std::vector<Rat> a_;
};

namespace detail {
// Pivot preference: cheap entries keep fractions small during elimination.
inline size_t rat_weight(const Rat& r) {
  return rat_num(r).str().size() + rat_den(r).str().size();
}
}  // namespace detail

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int best = -1;
    size_t best_w = 0;
    for (int r = row; r < m.rows(); ++r) {
      if (m.at(r, col) != 0) {
        size_t w = detail::rat_weight(m.at(r, col));
        if (best < 0 || w < best_w) best = r, best_w = w;
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int c = col; c < m.cols(); ++c) std::swap(m.at(row, c), m.at(best, c));
    Rat inv = Rat(1) / m.at(row, col);
    for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c)
        if (m.at(row, c) != 0) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(RatMat m) { return int(rref(m).size()); }

// Basis of ker(m), one kernel vector per column of the result.
inline RatMat kernel(RatMat m) {
  const int n = m.cols();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMat ker(n, n - int(pivots.size()));
  int kcol = 0;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ker.at(free, kcol) = 1;
    for (size_t i = 0; i < pivots.size(); ++i) ker.at(pivots[i], kcol) = -m.at(int(i), free);
    ++kcol;
  }
  return ker;
}

inline RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> p = rref(aug);
  if (int(p.size()) != n || p[n - 1] != n - 1) throw std::invalid_argument("singular matrix");
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Vertically stacks matrices (all with the same column count).
inline RatMat vstack(const std::vector<RatMat>& mats) {
  int cols = mats.empty() ? 0 : mats.front().cols();
  int rows = 0;
  for (const auto& m : mats) {
    if (m.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += m.rows();
  }
  RatMat out(rows, cols);
  int r0 = 0;
  for (const auto& m : mats) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < cols; ++c) out.at(r0 + r, c) = m.at(r, c);
    r0 += m.rows();
  }
  return out;
}

// Jordan block sizes of m for the single generalized eigenvalue lambda,
// from the rank sequence of (m - lambda)^j. Sizes returned descending.
// Requires (m - lambda) nilpotent on the generalized eigenspace reached;
// callers restrict to a block first when the spectrum is not a single point.
inline std::vector<int> jordan_block_sizes(const RatMat& m, const Rat& lambda) {
  if (m.rows() != m.cols()) throw std::invalid_argument("jordan of non-square matrix");
  const int n = m.rows();
  RatMat shifted = m - RatMat::identity(n) * lambda;
  std::vector<int> ranks;  // rank((m - lambda)^j), j = 0, 1, ...
  ranks.push_back(n);
  RatMat pw = RatMat::identity(n);
  for (int j = 1; j <= n; ++j) {
    pw = pw * shifted;
    ranks.push_back(rank(pw));
    if (ranks.back() == 0) break;
    if (ranks.back() == ranks[ranks.size() - 2]) break;  // stabilized: non-nilpotent remainder
  }
  std::vector<int> sizes;
  // blocks of size >= j: rank^{j-1} - rank^j
  for (size_t j = 1; j < ranks.size(); ++j) {
    int ge_j = ranks[j - 1] - ranks[j];
    int ge_j1 = (j + 1 < ranks.size()) ? ranks[j] - ranks[j + 1] : 0;
    int exactly_j = ge_j - ge_j1;
    for (int t = 0; t < exactly_j; ++t) sizes.push_back(int(j));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// Incremental echelon span; used for submodule closures and independence tests.
class SpanBasis {
 public:
  explicit SpanBasis(int dim) : dim_(dim) {}

  // Reduces v against the basis; if independent, inserts and returns true.
  bool insert(RatVec v) {
    reduce(v);
    int p = pivot_of(v);
    if (p < 0) return false;
    Rat inv = Rat(1) / v[p];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  bool contains(RatVec v) const {
    reduce(v);
    return pivot_of(v) < 0;
  }

  int size() const { return int(rows_.size()); }
  int dim() const { return dim_; }
  const std::vector<RatVec>& rows() const { return rows_; }

 private:
  void reduce(RatVec& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat& c = v[pivots_[i]];
      if (c == 0) continue;
      Rat f = c;
      for (int j = 0; j < dim_; ++j)
        if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
    }
  }
  int pivot_of(const RatVec& v) const {
    for (int j = 0; j < dim_; ++j)
      if (v[j] != 0) return j;
    return -1;
  }
  int dim_;
  std::vector<RatVec> rows_;
  std::vector<int> pivots_;
};

}  // namespace takiff
