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
// Lie superalgebras from structure constants: validation, the graded Jacobi
// identity, the Takiff double, and the affinised bracket with central terms.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "takiff/linalg.hpp"
#include "takiff/rational.hpp"

namespace takiff {

enum class Parity { even, odd };

struct BasisElement {
  int index = 0;
  std::string name;
  Parity parity = Parity::even;
};

// Sparse rational linear combination over basis indices.
using Combo = std::map<int, Rat>;

inline void combo_add(Combo& dst, int idx, const Rat& c) {
  if (c == 0) return;
  Rat& slot = dst[idx];
  slot += c;
  if (slot == 0) dst.erase(idx);
}

inline void combo_add_scaled(Combo& dst, const Combo& src, const Rat& s) {
  if (s == 0) return;
  for (const auto& [idx, c] : src) combo_add(dst, idx, c * s);
}

struct SuperalgebraSpec {
  std::vector<BasisElement> basis;
  // (a, b) -> [J^a, J^b]; only nonzero brackets stored.
  std::map<std::pair<int, int>, Combo> structure;
  RatMat form;  // kappa(J^a, J^b)
  Rat dual_coxeter;

  int dim() const { return int(basis.size()); }
  int parity(int i) const { return basis[i].parity == Parity::odd ? 1 : 0; }

  const Combo& bracket(int a, int b) const {
    if (a < 0 || b < 0 || a >= dim() || b >= dim())
      throw std::out_of_range("bracket: basis index out of range");
    static const Combo empty;
    auto it = structure.find({a, b});
    return it == structure.end() ? empty : it->second;
  }

  Combo bracket_combo(const Combo& x, const Combo& y) const {
    Combo out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) combo_add_scaled(out, bracket(a, b), ca * cb);
    return out;
  }

  int index_of(const std::string& name) const {
    for (const auto& b : basis)
      if (b.name == name) return b.index;
    throw std::invalid_argument("unknown basis element '" + name + "'");
  }

  // Koszul sign (-1)^{p^a p^b}.
  int koszul(int a, int b) const { return (parity(a) && parity(b)) ? -1 : 1; }
};

namespace detail {

inline bool combo_in_parity_span(const SuperalgebraSpec& s, const Combo& c, int par) {
  for (const auto& [idx, coeff] : c) {
    (void)coeff;
    if (s.parity(idx) != par) return false;
  }
  return true;
}

}  // namespace detail

// Validates the stored tables: graded antisymmetry, parity homogeneity of
// brackets, and the even supersymmetric form. Throws on violation.
inline void validate_spec(const SuperalgebraSpec& s) {
  const int d = s.dim();
  if (s.form.rows() != d || s.form.cols() != d)
    throw std::invalid_argument("form must be dim x dim");
  for (int i = 0; i < d; ++i)
    if (s.basis[i].index != i) throw std::invalid_argument("basis indices must be 0..dim-1 in order");
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Combo lhs = s.bracket(a, b);
      Combo rhs;
      combo_add_scaled(rhs, s.bracket(b, a), Rat(-s.koszul(a, b)));
      if (lhs != rhs)
        throw std::invalid_argument("bracket table not graded-antisymmetric at (" +
                                    s.basis[a].name + "," + s.basis[b].name + ")");
      int par = (s.parity(a) + s.parity(b)) % 2;
      if (!detail::combo_in_parity_span(s, lhs, par))
        throw std::invalid_argument("bracket not parity-homogeneous at (" + s.basis[a].name + "," +
                                    s.basis[b].name + ")");
      if (s.parity(a) != s.parity(b) && s.form.at(a, b) != 0)
        throw std::invalid_argument("form is not even");
      if (s.form.at(a, b) != s.form.at(b, a) * Rat(s.koszul(a, b)))
        throw std::invalid_argument("form is not supersymmetric");
    }
}

// Builds a spec from a possibly one-sided bracket list; the missing order of
// each pair is filled in by graded antisymmetry, and the result is validated.
inline SuperalgebraSpec make_superalgebra(std::vector<BasisElement> basis,
                                          std::map<std::pair<int, int>, Combo> brackets,
                                          RatMat form, Rat dual_coxeter = Rat(0)) {
  SuperalgebraSpec s;
  s.basis = std::move(basis);
  s.form = std::move(form);
  s.dual_coxeter = std::move(dual_coxeter);
  for (auto& [key, combo] : brackets) {
    Combo clean;
    for (auto& [i, c] : combo) combo_add(clean, i, c);
    if (!clean.empty()) s.structure[key] = clean;
  }
  for (const auto& [key, combo] : std::map<std::pair<int, int>, Combo>(s.structure)) {
    auto rev = std::make_pair(key.second, key.first);
    if (s.structure.count(rev)) continue;
    Combo mirrored;
    int sign = -((s.basis[key.first].parity == Parity::odd &&
                  s.basis[key.second].parity == Parity::odd)
                     ? -1
                     : 1);
    combo_add_scaled(mirrored, combo, Rat(sign));
    if (!mirrored.empty()) s.structure[rev] = mirrored;
  }
  validate_spec(s);
  return s;
}

struct JacobiReport {
  bool pass = true;
  int a = -1, b = -1, c = -1;  // first violating triple when !pass
  Combo residual;
  std::string triple_names;
};

// Residual of the graded Jacobi identity at one triple, in the Leibniz form
// [a,[b,c]] - [[a,b],c] - (-1)^{p^a p^b} [b,[a,c]].
inline Combo jacobi_residual(const SuperalgebraSpec& s, int a, int b, int c) {
  Combo lhs = s.bracket_combo(Combo{{a, Rat(1)}}, s.bracket(b, c));
  Combo t2 = s.bracket_combo(s.bracket(a, b), Combo{{c, Rat(1)}});
  combo_add_scaled(lhs, t2, Rat(-1));
  Combo t3 = s.bracket_combo(Combo{{b, Rat(1)}}, s.bracket(a, c));
  combo_add_scaled(lhs, t3, Rat(-s.koszul(a, b)));
  return lhs;
}

// Exact graded Jacobi check over all basis triples; reports the first
// violating triple in lexicographic basis order.
inline JacobiReport check_jacobi(const SuperalgebraSpec& s) {
  const int d = s.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Combo lhs = jacobi_residual(s, a, b, c);
        if (!lhs.empty()) {
          JacobiReport r;
          r.pass = false;
          r.a = a, r.b = b, r.c = c;
          r.residual = lhs;
          r.triple_names = "(" + s.basis[a].name + "," + s.basis[b].name + "," + s.basis[c].name + ")";
          return r;
        }
      }
  return JacobiReport{};
}

// Takiff double: adjoins tJ^a with [J^a, tJ^b] = f^{ab}_c tJ^c, [tJ, tJ] = 0.
// The form on the double is the mixed pairing kappa(J^a, tJ^b) = kappa(J^a, J^b),
// with the plain/plain and tilde/tilde pairings zero.
inline SuperalgebraSpec takiff_extend(const SuperalgebraSpec& base) {
  JacobiReport jr = check_jacobi(base);
  if (!jr.pass)
    throw std::invalid_argument("takiff_extend: input fails the Jacobi identity at " + jr.triple_names);
  const int d = base.dim();
  SuperalgebraSpec s;
  s.basis.reserve(2 * d);
  for (int i = 0; i < d; ++i) s.basis.push_back({i, base.basis[i].name, base.basis[i].parity});
  for (int i = 0; i < d; ++i) s.basis.push_back({d + i, "t" + base.basis[i].name, base.basis[i].parity});
  for (const auto& [key, combo] : base.structure) {
    auto [a, b] = key;
    s.structure[{a, b}] = combo;
    Combo tilted;
    for (const auto& [c, coeff] : combo) tilted[d + c] = coeff;
    s.structure[{a, d + b}] = tilted;
    s.structure[{d + a, b}] = tilted;
  }
  s.form = RatMat(2 * d, 2 * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      s.form.at(a, d + b) = base.form.at(a, b);
      s.form.at(d + a, b) = base.form.at(a, b);
    }
  s.dual_coxeter = base.dual_coxeter;
  validate_spec(s);
  return s;
}

struct LevelPair {
  Rat k;
  Rat tk;
  LevelPair(Rat k_, Rat tk_) : k(std::move(k_)), tk(std::move(tk_)) {
    if (tk == 0) throw std::invalid_argument("LevelPair: tk must be nonzero");
  }
};

// J^a x t^n in the affinisation of the Takiff double of a base algebra.
struct ModeElement {
  int base = 0;      // index into the base (undoubled) algebra
  bool tilde = false;
  long mode = 0;

  bool operator<(const ModeElement& o) const {
    if (mode != o.mode) return mode < o.mode;
    if (tilde != o.tilde) return !tilde;
    return base < o.base;
  }
  bool operator==(const ModeElement& o) const {
    return base == o.base && tilde == o.tilde && mode == o.mode;
  }
};

struct AffineBracket {
  std::vector<std::pair<ModeElement, Rat>> terms;
  Rat central;  // K and tK already replaced by the numeric levels
};

// [x, y] in the Takiff double of the affinisation: Lie part from the base
// structure constants (tilde flags OR together, tilde/tilde vanishes), central
// part m kappa(a,b) delta_{m+n,0} with K -> k on plain/plain pairs and
// tK -> tk on mixed pairs.
inline AffineBracket affine_bracket(const SuperalgebraSpec& base, const ModeElement& x,
                                    const ModeElement& y, const LevelPair& levels) {
  if (x.base < 0 || x.base >= base.dim() || y.base < 0 || y.base >= base.dim())
    throw std::out_of_range("affine_bracket: invalid mode element");
  AffineBracket out;
  if (!(x.tilde && y.tilde)) {
    bool tilde = x.tilde || y.tilde;
    for (const auto& [c, coeff] : base.bracket(x.base, y.base))
      out.terms.push_back({ModeElement{c, tilde, x.mode + y.mode}, coeff});
    if (x.mode + y.mode == 0 && x.mode != 0) {
      const Rat& pairing = base.form.at(x.base, y.base);
      if (pairing != 0) out.central = Rat(x.mode) * pairing * (tilde ? levels.tk : levels.k);
    }
  }
  return out;
}

// Supertrace form kappa(a,b) = str(rho(a) rho(b)) of a faithful matrix
// realization; the matrices are first checked against every bracket relation.
inline RatMat supertrace_form(const SuperalgebraSpec& s, const std::vector<RatMat>& rho,
                              const std::vector<Parity>& space_parity) {
  const int d = s.dim();
  if (int(rho.size()) != d) throw std::invalid_argument("supertrace_form: one matrix per basis element");
  const int n = rho.front().rows();
  for (const auto& m : rho)
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("supertrace_form: square matrices of equal size");
  if (int(space_parity.size()) != n) throw std::invalid_argument("supertrace_form: one parity per space dimension");
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      RatMat lhs = RatMat::graded_comm(rho[a], rho[b], s.parity(a), s.parity(b));
      RatMat rhs(n, n);
      for (const auto& [c, coeff] : s.bracket(a, b)) rhs = rhs + rho[c] * coeff;
      if (lhs != rhs)
        throw std::invalid_argument("supertrace_form: matrices violate relation [" + s.basis[a].name +
                                    "," + s.basis[b].name + "]");
    }
  auto str = [&](const RatMat& m) {
    Rat t;
    for (int i = 0; i < n; ++i) t += (space_parity[i] == Parity::odd ? -m.at(i, i) : m.at(i, i));
    return t;
  };
  RatMat kappa(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) kappa.at(a, b) = str(rho[a] * rho[b]);
  return kappa;
}

// ---------------------------------------------------------------------------
// Built-in algebras. These mirror the data files shipped under data/.

inline SuperalgebraSpec gl11() {
  std::vector<BasisElement> basis = {
      {0, "N", Parity::even}, {1, "E", Parity::even}, {2, "psi+", Parity::odd}, {3, "psi-", Parity::odd}};
  std::map<std::pair<int, int>, Combo> br;
  br[{0, 2}] = {{2, Rat(1)}};   // [N, psi+] = psi+
  br[{0, 3}] = {{3, Rat(-1)}};  // [N, psi-] = -psi-
  br[{2, 3}] = {{1, Rat(1)}};   // {psi+, psi-} = E
  RatMat form(4, 4);
  form.at(0, 1) = form.at(1, 0) = 1;
  form.at(2, 3) = 1;
  form.at(3, 2) = -1;
  return make_superalgebra(basis, br, form, Rat(0));
}

inline SuperalgebraSpec sl2() {
  std::vector<BasisElement> basis = {{0, "E", Parity::even}, {1, "H", Parity::even}, {2, "F", Parity::even}};
  std::map<std::pair<int, int>, Combo> br;
  br[{1, 0}] = {{0, Rat(2)}};   // [H, E] = 2E
  br[{0, 2}] = {{1, Rat(1)}};   // [E, F] = H
  br[{1, 2}] = {{2, Rat(-2)}};  // [H, F] = -2F
  RatMat form(3, 3);
  form.at(0, 2) = form.at(2, 0) = 1;  // kappa(E, F) = 1
  form.at(1, 1) = 2;                  // kappa(H, H) = 2
  return make_superalgebra(basis, br, form, Rat(2));
}

inline SuperalgebraSpec u1() {
  std::vector<BasisElement> basis = {{0, "a", Parity::even}};
  RatMat form(1, 1);
  form.at(0, 0) = 1;
  return make_superalgebra(basis, {}, form, Rat(0));
}

// Defining (1|1)-dimensional representation of gl(1|1); the source of its
// supertrace form.
inline std::pair<std::vector<RatMat>, std::vector<Parity>> gl11_defining_rep() {
  std::vector<RatMat> rho(4, RatMat(2, 2));
  rho[0].at(0, 0) = rat(1, 2);
  rho[0].at(1, 1) = rat(-1, 2);
  rho[1].at(0, 0) = 1;
  rho[1].at(1, 1) = 1;
  rho[2].at(0, 1) = 1;
  rho[3].at(1, 0) = 1;
  return {rho, {Parity::even, Parity::odd}};
}

}  // namespace takiff
