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
//
// Two-variable formal series z^{z_offset} q^{q_offset} sum c_{a,b} z^a q^b
// with exact rational offsets, integer coefficients, honest q-truncation and
// an explicit z-exactness window.

#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "takiff/rational.hpp"

namespace takiff {

constexpr long kZUnbounded = std::numeric_limits<long>::max() / 4;

struct FormalSeries {
  Rat z_offset;  // z exponents are z_offset + a
  Rat q_offset;  // q exponents are q_offset + b, b >= 0
  int cutoff = 0;  // coefficients exact for 0 <= b <= cutoff
  // exactness window on a: coefficients known for z_lo <= a <= z_hi
  long z_lo = -kZUnbounded, z_hi = kZUnbounded;
  std::map<std::pair<long, int>, Int> coeff;  // (a, b) -> coefficient

  bool windowed() const { return z_lo != -kZUnbounded || z_hi != kZUnbounded; }

  void set(long a, int b, Int c) {
    if (c == 0) return;
    coeff[{a, b}] = std::move(c);
  }
  void add_to(long a, int b, const Int& c) {
    if (c == 0) return;
    auto key = std::make_pair(a, b);
    Int& slot = coeff[key];
    slot += c;
    if (slot == 0) coeff.erase(key);
  }
  const Int* find(long a, int b) const {
    auto it = coeff.find({a, b});
    return it == coeff.end() ? nullptr : &it->second;
  }
};

inline FormalSeries series_one(int cutoff, Rat z_offset = Rat(0), Rat q_offset = Rat(0)) {
  FormalSeries s;
  s.cutoff = cutoff;
  s.z_offset = std::move(z_offset);
  s.q_offset = std::move(q_offset);
  s.set(0, 0, 1);
  return s;
}

// s * z^dz_int q^dq (dq shifts the rational offset only)
inline FormalSeries shift(FormalSeries s, const Rat& dz, const Rat& dq) {
  s.z_offset += dz;
  s.q_offset += dq;
  return s;
}

inline FormalSeries scale(FormalSeries s, const Int& c) {
  if (c == 0) {
    s.coeff.clear();
    return s;
  }
  for (auto& [k, v] : s.coeff) v *= c;
  return s;
}

// z -> -z on the integer part: coefficient at z-int a picks up (-1)^a.
inline FormalSeries weave_signs(FormalSeries s) {
  for (auto& [k, v] : s.coeff)
    if (k.first % 2 != 0) v = -v;
  return s;
}

// Addition; offsets must differ by integers. The result's exact region is the
// intersection of the inputs' exact regions.
inline FormalSeries series_add(const FormalSeries& x, const FormalSeries& y, const Int& cy = Int(1)) {
  Rat dz = y.z_offset - x.z_offset, dq = y.q_offset - x.q_offset;
  if (!is_integer(dz) || !is_integer(dq))
    throw std::invalid_argument("series_add: offsets are not integer-compatible");
  long sz = to_long(dz), sq = to_long(dq);
  FormalSeries out;
  // common q base: the smaller offset
  long base_shift_x = sq < 0 ? -sq : 0;   // x ints move up when y sits lower
  long base_shift_y = sq < 0 ? 0 : sq;    // y ints move up when x sits lower
  out.q_offset = sq < 0 ? y.q_offset : x.q_offset;
  out.z_offset = x.z_offset;
  long cut_x = x.cutoff + base_shift_x, cut_y = y.cutoff + base_shift_y;
  out.cutoff = int(std::min(cut_x, cut_y));
  out.z_lo = std::max(x.z_lo, y.z_lo == -kZUnbounded ? -kZUnbounded : y.z_lo + sz);
  out.z_hi = std::min(x.z_hi, y.z_hi == kZUnbounded ? kZUnbounded : y.z_hi + sz);
  if (out.cutoff < 0) throw std::invalid_argument("series_add: empty common q-window");
  for (const auto& [k, v] : x.coeff) {
    long a = k.first, b = k.second + base_shift_x;
    if (b > out.cutoff || a < out.z_lo || a > out.z_hi) continue;
    out.add_to(a, int(b), v);
  }
  for (const auto& [k, v] : y.coeff) {
    long a = k.first + sz, b = k.second + base_shift_y;
    if (b > out.cutoff || a < out.z_lo || a > out.z_hi) continue;
    out.add_to(a, int(b), v * cy);
  }
  return out;
}

// Truncated product; requires full z-windows (window bookkeeping under
// products is not needed anywhere in the engine).
inline FormalSeries series_mul(const FormalSeries& x, const FormalSeries& y) {
  if (x.windowed() || y.windowed())
    throw std::invalid_argument("series_mul: windowed operands unsupported");
  FormalSeries out;
  out.z_offset = x.z_offset + y.z_offset;
  out.q_offset = x.q_offset + y.q_offset;
  out.cutoff = std::min(x.cutoff, y.cutoff);
  for (const auto& [kx, vx] : x.coeff) {
    if (kx.second > out.cutoff) continue;
    for (const auto& [ky, vy] : y.coeff) {
      int b = kx.second + ky.second;
      if (b > out.cutoff) continue;
      out.add_to(kx.first + ky.first, b, vx * vy);
    }
  }
  return out;
}

// The substitution z -> z q^ell (character-level spectral flow). A coefficient
// at (a, c) comes from (a, c - ell a), so column a of the result is exact up
// to c = cutoff + ell a; the result is reported on the given z-window with the
// largest globally exact cutoff. Throws when no exact cutoff remains.
inline FormalSeries spectral_flow_series(const FormalSeries& s, long ell, long win_lo, long win_hi) {
  win_lo = std::max(win_lo, s.z_lo);
  win_hi = std::min(win_hi, s.z_hi);
  if (win_lo > win_hi) throw std::invalid_argument("spectral_flow_series: empty window");
  FormalSeries out;
  out.z_offset = s.z_offset;
  out.q_offset = s.q_offset + Rat(ell) * s.z_offset;
  out.z_lo = win_lo;
  out.z_hi = win_hi;
  long exact = s.cutoff + (ell >= 0 ? ell * win_lo : ell * win_hi);
  // support of the result can begin below the old q_offset; shift to b >= 0
  long min_b = 0;
  for (const auto& [k, v] : s.coeff) {
    (void)v;
    if (k.first < win_lo || k.first > win_hi) continue;
    min_b = std::min(min_b, k.second + ell * k.first);
  }
  out.q_offset += Rat(min_b);
  exact -= min_b;
  if (exact < 0) throw std::invalid_argument("spectral_flow_series: insufficient q headroom");
  out.cutoff = int(exact);
  for (const auto& [k, v] : s.coeff) {
    if (k.first < win_lo || k.first > win_hi) continue;
    long b = k.second + ell * k.first - min_b;
    if (b <= out.cutoff) out.add_to(k.first, int(b), v);
  }
  return out;
}

inline FormalSeries spectral_flow_series(const FormalSeries& s, long ell) {
  long lo = kZUnbounded, hi = -kZUnbounded;
  for (const auto& [k, v] : s.coeff) {
    (void)v;
    lo = std::min(lo, k.first);
    hi = std::max(hi, k.first);
  }
  if (lo > hi) lo = hi = 0;
  return spectral_flow_series(s, ell, lo, hi);
}

// Equality of the coefficient functions on the intersection of the exact
// regions, compared through absolute exponents. Offsets must be
// integer-compatible; the intersection must be nonempty.
inline bool series_equal(const FormalSeries& x, const FormalSeries& y) {
  Rat dz = y.z_offset - x.z_offset, dq = y.q_offset - x.q_offset;
  if (!is_integer(dz) || !is_integer(dq)) return false;
  long sz = to_long(dz), sq = to_long(dq);  // y ints + s map onto x ints
  long blo = std::max(0L, sq), bhi = std::min(long(x.cutoff), sq + y.cutoff);
  long alo = std::max(x.z_lo, y.z_lo == -kZUnbounded ? -kZUnbounded : y.z_lo + sz);
  long ahi = std::min(x.z_hi, y.z_hi == kZUnbounded ? kZUnbounded : y.z_hi + sz);
  if (blo > bhi || alo > ahi) throw std::invalid_argument("series_equal: empty comparison region");
  for (const auto& [k, v] : x.coeff) {
    if (k.first < alo || k.first > ahi || k.second < blo || k.second > bhi) continue;
    const Int* w = y.find(k.first - sz, int(k.second - sq));
    if (!w || *w != v) return false;
  }
  for (const auto& [k, v] : y.coeff) {
    long a = k.first + sz, b = k.second + sq;
    if (a < alo || a > ahi || b < blo || b > bhi) continue;
    const Int* w = x.find(a, int(b));
    if (!w || *w != v) return false;
  }
  return true;
}

// Restriction to a z-window (marks exactness accordingly).
inline FormalSeries restrict_window(FormalSeries s, long lo, long hi) {
  s.z_lo = std::max(s.z_lo, lo);
  s.z_hi = std::min(s.z_hi, hi);
  for (auto it = s.coeff.begin(); it != s.coeff.end();) {
    if (it->first.first < s.z_lo || it->first.first > s.z_hi)
      it = s.coeff.erase(it);
    else
      ++it;
  }
  return s;
}

// Series known up to a fourth-root-of-unity phase i^{i_pow}; used for the
// theta-quotient forms whose conventions carry half-integer phases.
struct PhasedSeries {
  int i_pow = 0;  // phase i^{i_pow}, reduced mod 4
  FormalSeries series;
};

inline PhasedSeries mul_by_i(PhasedSeries p, int powers = 1) {
  p.i_pow = ((p.i_pow + powers) % 4 + 4) % 4;
  return p;
}

}  // namespace takiff
