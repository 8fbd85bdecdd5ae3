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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace takiff {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// Exact integer value; throws when r is not an integer.
inline Int to_integer(const Rat& r) {
  if (!is_integer(r)) throw std::invalid_argument("rational is not an integer: " + r.str());
  return rat_num(r);
}

inline long to_long(const Rat& r) { return static_cast<long>(to_integer(r)); }

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

inline Rat rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Parses "p", "-p", "p/q" (whitespace-free); the on-disk rational literal format.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad rational literal '" + s + "'");
  }
}

// Renders as "p" or "p/q", the inverse of parse_rat.
inline std::string rat_str(const Rat& r) {
  if (is_integer(r)) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("0^negative");
    return Rat(1) / rat_pow(base, -e);
  }
  Rat acc(1), b = base;
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace takiff
