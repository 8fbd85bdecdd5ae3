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
// Takiff Sugawara operator on truncated modules: normally ordered bilinears of
// current modes, Virasoro and primary-field verification, measured central
// charge.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "takiff/affine.hpp"

namespace takiff {

// One normally ordered bilinear :A B: with a rational coefficient; generator
// indices refer to the doubled basis of the module's base algebra.
struct BilinearTerm {
  Rat coeff;
  int genA, genB;
};

// Energy-momentum modes L_n realized through their action on a truncated
// module. On a state of grade g only mode splits (m, n - m) with both factors
// inside the truncation contribute, so every application is a finite sum:
//   (:AB:)_n = sum_{m <= -1} A_m B_{n-m} + (-1)^{pA pB} sum_{m >= 0} B_{n-m} A_m.
struct EnergyOperator {
  std::vector<BilinearTerm> terms;

  InducedModule::State apply(const InducedModule& mod, long n,
                             const InducedModule::State& s) const {
    InducedModule::State out;
    for (const auto& [idx, c] : s) {
      long g = mod.grade_of_state(idx);
      if (g - n > mod.cutoff())
        throw std::invalid_argument("L_n application exceeds the cutoff");
      InducedModule::State unit{{idx, c}};
      for (const auto& t : terms) {
        int sign = (mod.parity_of_gen(t.genA) && mod.parity_of_gen(t.genB)) ? -1 : 1;
        for (long m = n - g; m <= -1; ++m) {
          auto r = mod.apply_mode(t.genA, m, mod.apply_mode(t.genB, n - m, unit));
          for (const auto& [j, cc] : r) add(out, j, cc * t.coeff);
        }
        for (long m = 0; m <= g; ++m) {
          auto r = mod.apply_mode(t.genB, n - m, mod.apply_mode(t.genA, m, unit));
          for (const auto& [j, cc] : r) add(out, j, cc * t.coeff * Rat(sign));
        }
      }
    }
    return out;
  }

 private:
  static void add(InducedModule::State& st, int idx, const Rat& c) {
    if (c == 0) return;
    Rat& slot = st[idx];
    slot += c;
    if (slot == 0) st.erase(idx);
  }
};

// The unique energy-momentum tensor of affine Takiff gl(1|1) coming from the
// quadratic Casimirs:
//   T = (1/tk)[:N tE: + :E tN: - :psi+ tpsi-: + :psi- tpsi+:]
//       - (k/tk^2)[:tN tE: - :tpsi+ tpsi-:] + (1/tk^2) :tE tE:.
inline EnergyOperator build_T_gl11(const LevelPair& lv) {
  if (lv.tk == 0) throw std::invalid_argument("critical tk = 0");
  Rat a = Rat(1) / lv.tk;
  Rat b = lv.k / (lv.tk * lv.tk);
  Rat c = Rat(1) / (lv.tk * lv.tk);
  EnergyOperator T;
  T.terms = {{a, gN, gtE},  {a, gE, gtN},    {-a, gPsiP, gtPsiM}, {a, gPsiM, gtPsiP},
             {-b, gtN, gtE}, {b, gtPsiP, gtPsiM}, {c, gtE, gtE}};
  return T;
}

// Takiff Sugawara tensor for the double of a basic classical simple algebra
// with invertible form:
//   T = (1/tk) sum kappa^{-1}(a,b) :J^a tJ^b:
//       - (k + 2 h_vee)/(2 tk^2) sum kappa^{-1}(a,b) :tJ^a tJ^b:.
inline EnergyOperator build_T_general(const SuperalgebraSpec& base, const LevelPair& lv) {
  const int d = base.dim();
  RatMat kinv = inverse(base.form);  // throws when singular
  Rat mixed = Rat(1) / lv.tk;
  Rat tilde = -(lv.k + 2 * base.dual_coxeter) / (2 * lv.tk * lv.tk);
  EnergyOperator T;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (kinv.at(a, b) == 0) continue;
      T.terms.push_back({mixed * kinv.at(a, b), a, d + b});
      T.terms.push_back({tilde * kinv.at(a, b), d + a, d + b});
    }
  return T;
}

// Lazy per-basis-column cache of L_n actions on one module.
class VirasoroRealization {
 public:
  VirasoroRealization(const InducedModule& mod, EnergyOperator T) : mod_(mod), T_(std::move(T)) {}

  const InducedModule& mod() const { return mod_; }

  InducedModule::State apply(long n, const InducedModule::State& s) {
    InducedModule::State out;
    for (const auto& [idx, c] : s) {
      const auto& col = column(n, idx);
      for (const auto& [j, cc] : col) {
        Rat& slot = out[j];
        slot += cc * c;
        if (slot == 0) out.erase(j);
      }
    }
    return out;
  }

  // [L_m, L_n] s
  InducedModule::State commutator(long m, long n, const InducedModule::State& s) {
    auto a = apply(m, apply(n, s));
    auto b = apply(n, apply(m, s));
    for (const auto& [j, c] : b) {
      Rat& slot = a[j];
      slot -= c;
      if (slot == 0) a.erase(j);
    }
    return a;
  }

  // measured from ([L_2, L_-2] - 4 L_0) hws = (c/2) hws
  Rat measure_central_charge() {
    auto hws = mod_.basis_state(0);
    auto u = commutator(2, -2, hws);
    auto l0 = apply(0, hws);
    for (const auto& [j, c] : l0) {
      Rat& slot = u[j];
      slot -= 4 * c;
      if (slot == 0) u.erase(j);
    }
    auto it = u.find(0);
    return it == u.end() ? Rat(0) : it->second * 2;
  }

 private:
  const InducedModule::State& column(long n, int idx) {
    auto key = std::make_pair(n, idx);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto col = T_.apply(mod_, n, mod_.basis_state(idx));
    return cache_.emplace(key, std::move(col)).first->second;
  }

  const InducedModule& mod_;
  EnergyOperator T_;
  std::map<std::pair<long, int>, InducedModule::State> cache_;
};

struct SugawaraReport {
  bool pass = true;
  Rat central_charge;
  long checked_states = 0;
  std::string witness;  // first violated identity, when !pass
};

// Exact matrix-identity check of [L_m, L_n] = (m-n) L_{m+n} + (c/12)(m^3-m)
// delta_{m+n,0} on every basis state whose intermediate grades stay within the
// cutoff; c is the measured central charge.
inline SugawaraReport check_virasoro(VirasoroRealization& vir, long max_m, long max_n) {
  const InducedModule& mod = vir.mod();
  SugawaraReport rep;
  rep.central_charge = vir.measure_central_charge();
  for (long m = -max_m; m <= max_m; ++m)
    for (long n = -max_n; n <= max_n; ++n) {
      for (int g = 0; g <= mod.cutoff(); ++g) {
        if (g - n > mod.cutoff() || g - m > mod.cutoff() || g - m - n > mod.cutoff()) continue;
        for (int s : mod.states_of_grade(g)) {
          auto st = mod.basis_state(s);
          auto lhs = vir.commutator(m, n, st);
          InducedModule::State rhs;
          if (m != n) {
            rhs = vir.apply(m + n, st);
            for (auto& [j, c] : rhs) c *= Rat(m - n);
            for (auto it = rhs.begin(); it != rhs.end();)
              it = (it->second == 0) ? rhs.erase(it) : std::next(it);
          }
          if (m + n == 0) {
            Rat cterm = rep.central_charge / 12 * Rat(m * m * m - m);
            if (cterm != 0) {
              Rat& slot = rhs[s];
              slot += cterm;
              if (slot == 0) rhs.erase(s);
            }
          }
          ++rep.checked_states;
          if (lhs != rhs) {
            rep.pass = false;
            rep.witness = "[L_" + std::to_string(m) + ", L_" + std::to_string(n) +
                          "] mismatch on basis state " + std::to_string(s);
            return rep;
          }
        }
      }
    }
  return rep;
}

// Exact check of [L_m, J^a_r] = -r J^a_{m+r} for every doubled generator.
inline SugawaraReport check_primary(VirasoroRealization& vir, long max_m, long max_r) {
  const InducedModule& mod = vir.mod();
  SugawaraReport rep;
  rep.central_charge = vir.measure_central_charge();
  for (long m = -max_m; m <= max_m; ++m)
    for (long r = -max_r; r <= max_r; ++r)
      for (int gen = 0; gen < mod.doubled_dim(); ++gen) {
        for (int g = 0; g <= mod.cutoff(); ++g) {
          if (g - r > mod.cutoff() || g - m > mod.cutoff() || g - m - r > mod.cutoff()) continue;
          for (int s : mod.states_of_grade(g)) {
            auto st = mod.basis_state(s);
            auto lhs = vir.apply(m, mod.apply_mode(gen, r, st));
            auto rl = mod.apply_mode(gen, r, vir.apply(m, st));
            for (const auto& [j, c] : rl) {
              Rat& slot = lhs[j];
              slot -= c;
              if (slot == 0) lhs.erase(j);
            }
            auto rhs = mod.apply_mode(gen, m + r, st);
            for (auto& [j, c] : rhs) c *= Rat(-r);
            for (auto it = rhs.begin(); it != rhs.end();)
              it = (it->second == 0) ? rhs.erase(it) : std::next(it);
            ++rep.checked_states;
            if (lhs != rhs) {
              rep.pass = false;
              rep.witness = "[L_" + std::to_string(m) + ", J(" + std::to_string(gen) + ")_" +
                            std::to_string(r) + "] mismatch on basis state " + std::to_string(s);
              return rep;
            }
          }
        }
      }
  return rep;
}

// Vacuum-style module for Sugawara checks over any Takiff double: induced from
// the trivial one-dimensional zero-mode representation.
inline InducedModule vacuum_module(const SuperalgebraSpec& base, const LevelPair& lv, int cutoff) {
  return InducedModule(base, lv, cutoff, trivial_sector(2 * base.dim()));
}

}  // namespace takiff
