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
// Grothendieck tensor ring of Takiff gl(1|1) on equivalence classes of
// irreducibles, with reducible Verma classes expanded on output.

#pragma once

#include <map>

#include "takiff/findim.hpp"

namespace takiff {

struct GrothElement {
  std::map<ClassLabel, long> terms;

  void add(const ClassLabel& l, long c) {
    if (c == 0) return;
    long& slot = terms[l];
    slot += c;
    if (slot == 0) terms.erase(l);
  }
  bool operator==(const GrothElement& o) const = default;
};

// Expands the class of the Verma with average-N label weight (n, e | tn, 0)
// into irreducibles: two semitypicals when e != 0, four atypicals otherwise.
inline GrothElement expand_verma_class(const Rat& n, const Rat& e, const Rat& tn) {
  GrothElement out;
  if (e != 0) {
    out.add({FinKind::Semitypical, {n + rat(1, 2), e, tn, Rat(0)}, 0}, 1);
    out.add({FinKind::Semitypical, {n - rat(1, 2), e, tn, Rat(0)}, 0}, 1);
  } else {
    out.add({FinKind::Atypical, {n + 1, Rat(0), tn, Rat(0)}, 0}, 1);
    out.add({FinKind::Atypical, {n, Rat(0), tn, Rat(0)}, 0}, 2);
    out.add({FinKind::Atypical, {n - 1, Rat(0), tn, Rat(0)}, 0}, 1);
  }
  return out;
}

// Adds the class of a typical-or-Verma label (te != 0: irreducible typical;
// te = 0: reducible Verma, expanded).
inline void add_typical_or_verma(GrothElement& out, const Rat& n, const Rat& e, const Rat& tn,
                                 const Rat& te, long mult) {
  if (te != 0) {
    out.add({FinKind::Typical, {n, e, tn, te}, 0}, mult);
  } else {
    GrothElement v = expand_verma_class(n, e, tn);
    for (const auto& [l, c] : v.terms) out.add(l, c * mult);
  }
}

// Product of two irreducible classes, fully expanded into irreducibles.
inline GrothElement groth_product(const ClassLabel& a, const ClassLabel& b) {
  if (!label_irreducible(a) || !label_irreducible(b))
    throw std::invalid_argument("groth_product expects irreducible class labels");
  const FinWeight &u = a.weight, &v = b.weight;
  Rat n = u.n + v.n, e = u.e + v.e, tn = u.tn + v.tn, te = u.te + v.te;
  GrothElement out;
  if (a.kind == FinKind::Atypical || b.kind == FinKind::Atypical) {
    const ClassLabel& other = (a.kind == FinKind::Atypical) ? b : a;
    ClassLabel shifted = other;
    shifted.weight = {n, e, tn, te};
    out.add(shifted, 1);
    return out;
  }
  if (a.kind == FinKind::Semitypical && b.kind == FinKind::Semitypical) {
    return expand_verma_class(n, e, tn);
  }
  if (a.kind == FinKind::Semitypical || b.kind == FinKind::Semitypical) {
    // S x T: two typicals at n +- 1/2
    add_typical_or_verma(out, n + rat(1, 2), e, tn, te, 1);
    add_typical_or_verma(out, n - rat(1, 2), e, tn, te, 1);
    return out;
  }
  // T x T
  add_typical_or_verma(out, n + 1, e, tn, te, 1);
  add_typical_or_verma(out, n, e, tn, te, 2);
  add_typical_or_verma(out, n - 1, e, tn, te, 1);
  return out;
}

inline GrothElement groth_product(const GrothElement& a, const GrothElement& b) {
  GrothElement out;
  for (const auto& [la, ca] : a.terms)
    for (const auto& [lb, cb] : b.terms) {
      GrothElement p = groth_product(la, lb);
      for (const auto& [l, c] : p.terms) out.add(l, c * ca * cb);
    }
  return out;
}

// Composition factors of a module's class, as a Grothendieck element.
inline GrothElement groth_of_factors(const std::map<ClassLabel, long>& factors) {
  GrothElement out;
  for (const auto& [l, c] : factors) out.add(l, c);
  return out;
}

}  // namespace takiff
