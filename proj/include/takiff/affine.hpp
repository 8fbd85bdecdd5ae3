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
// Grade-truncated modules over affine Takiff superalgebras: PBW bases,
// exact mode action by straightening, singular vectors, spectral flow and the
// typical/semitypical/atypical classification for affine Takiff gl(1|1).

#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "takiff/findim.hpp"
#include "takiff/superalgebra.hpp"

namespace takiff {

inline int cutoff_ceiling() {
  if (const char* env = std::getenv("TAKIFF_MAX_CUTOFF")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 6;
}

struct AffWeight {
  Rat n, e, tn, te;
  LevelPair levels;
};

// Minimal conformal dimension of the Verma with average-N label n
// (the hws then has N0-eigenvalue n + 1):
//   Delta = n te/tk + tn e/tk - k tn te/tk^2 + te^2/tk^2.
inline Rat conformal_dim(const AffWeight& w) {
  const Rat &k = w.levels.k, &tk = w.levels.tk;
  return w.n * w.te / tk + w.tn * w.e / tk - k * w.tn * w.te / (tk * tk) + w.te * w.te / (tk * tk);
}

// L0 eigenvalue of a hws with the given eigenvalue quadruple.
inline Rat hws_conformal_dim(const AffWeight& w) {
  AffWeight shifted = w;
  shifted.n = w.n - 1;
  return conformal_dim(shifted);
}

// Weight of the spectral-flow image of a state: (n, e + l k, tn, te + l tk),
// with the conformal dimension shifted by l * n.
inline AffWeight spectral_flow_weight(const AffWeight& w, long ell) {
  AffWeight out = w;
  out.e = w.e + Rat(ell) * w.levels.k;
  out.te = w.te + Rat(ell) * w.levels.tk;
  return out;
}

inline Rat spectral_flow_dim_shift(const AffWeight& w, long ell) { return Rat(ell) * w.n; }

enum class AffKind { Typical, Semitypical, Atypical, VermaClass };

inline std::string aff_kind_str(AffKind k) {
  switch (k) {
    case AffKind::Typical: return "T";
    case AffKind::Semitypical: return "S";
    case AffKind::Atypical: return "A";
    case AffKind::VermaClass: return "V";
  }
  return "?";
}

// Irreducible class (or reducible Verma class) label. For semitypicals and
// atypicals the weight stores the flow-zero base labels (te = 0, and e = 0 for
// atypicals); `flow` is the spectral-flow index.
struct AffClassLabel {
  AffKind kind = AffKind::Typical;
  Rat n, e, tn, te;
  long flow = 0;
  LevelPair levels;

  bool operator==(const AffClassLabel& o) const {
    return kind == o.kind && n == o.n && e == o.e && tn == o.tn && te == o.te && flow == o.flow &&
           levels.k == o.levels.k && levels.tk == o.levels.tk;
  }
  bool operator<(const AffClassLabel& o) const {
    auto key = [](const AffClassLabel& l) {
      return std::tuple(int(l.kind), l.n, l.e, l.tn, l.te, l.flow);
    };
    return key(*this) < key(o);
  }
};

inline std::string aff_label_str(const AffClassLabel& l) {
  std::string s;
  if (l.flow != 0) s += "s^" + std::to_string(l.flow) + " ";
  s += aff_kind_str(l.kind) + "_{" + rat_str(l.n) + "," + rat_str(l.e) + "|" + rat_str(l.tn) + "," +
       rat_str(l.te) + "}";
  return s;
}

// Classification of the irreducible with weight w (average-N labels).
inline AffClassLabel classify(const AffWeight& w) {
  const Rat &k = w.levels.k, &tk = w.levels.tk;
  Rat ratio = w.te / tk;
  if (!is_integer(ratio)) return {AffKind::Typical, w.n, w.e, w.tn, w.te, 0, w.levels};
  long ell = to_long(ratio);
  if (k == 0)
    throw std::invalid_argument("classify: k = 0 with te/tk integral is unsupported");
  if (w.e / k != ratio) {
    // semitypical: unflow to the te = 0 base label
    AffClassLabel l{AffKind::Semitypical, w.n + 2 * Rat(ell), w.e - Rat(ell) * k, w.tn, Rat(0), ell,
                    w.levels};
    return l;
  }
  return {AffKind::Atypical, w.n + 2 * Rat(ell), Rat(0), w.tn, Rat(0), ell, w.levels};
}

// Canonical form: typical/Verma labels carry their flow folded into the
// weights (flow = 0); semitypical/atypical labels keep an explicit flow.
inline AffClassLabel normalize_label(AffClassLabel l) {
  if ((l.kind == AffKind::Typical || l.kind == AffKind::VermaClass) && l.flow != 0) {
    Rat f(l.flow);
    l.n -= 2 * f;
    l.e += f * l.levels.k;
    l.te += f * l.levels.tk;
    l.flow = 0;
  }
  return l;
}

// Label-level spectral flow.
inline AffClassLabel spectral_flow_label(const AffClassLabel& label, long ell) {
  AffClassLabel out = normalize_label(label);
  switch (out.kind) {
    case AffKind::Typical:
    case AffKind::VermaClass:
      out.n -= 2 * Rat(ell);
      out.e += Rat(ell) * out.levels.k;
      out.te += Rat(ell) * out.levels.tk;
      break;
    case AffKind::Semitypical:
    case AffKind::Atypical:
      out.flow += ell;
      break;
  }
  return out;
}

// The weight quadruple of a label (applying the flow).
inline AffWeight label_weight(const AffClassLabel& label) {
  AffClassLabel l = normalize_label(label);
  switch (l.kind) {
    case AffKind::Typical:
    case AffKind::VermaClass:
      return {l.n, l.e, l.tn, l.te, l.levels};
    default: {
      Rat fl(l.flow);
      return {l.n - 2 * fl, l.e + fl * l.levels.k, l.tn, fl * l.levels.tk, l.levels};
    }
  }
}

// ---------------------------------------------------------------------------
// PBW machinery

struct PBWMode {
  int gen;  // index into the doubled basis
  int n;    // strictly negative mode
  bool operator==(const PBWMode& o) const = default;
  bool operator<(const PBWMode& o) const { return std::pair(n, gen) < std::pair(o.n, o.gen); }
};

using PBWWord = std::vector<PBWMode>;  // canonically ordered, fermions squarefree

// Zero-grade sector of an induced module: any finite module over the Takiff
// double, acted on by the zero modes; positive modes annihilate it.
struct ZeroSector {
  int dim = 0;
  std::vector<RatMat> act;  // one matrix per doubled basis element
  std::vector<Parity> parity;
  std::vector<Rat> weight_n;  // N0-eigenvalue bookkeeping (may be empty)
};

inline ZeroSector sector_from_finmodule(const FinModule& m) {
  ZeroSector s;
  s.dim = m.dimension;
  s.act = m.action;
  s.parity = m.parity;
  s.weight_n.reserve(m.dimension);
  for (const auto& w : m.states) s.weight_n.push_back(w.n);
  return s;
}

inline ZeroSector trivial_sector(int doubled_dim) {
  ZeroSector s;
  s.dim = 1;
  s.act.assign(doubled_dim, RatMat(1, 1));
  s.parity = {Parity::even};
  s.weight_n = {Rat(0)};
  return s;
}

// Module induced from a zero-grade sector over the affinised Takiff double:
// basis = (PBW word in strictly negative modes) x (sector state), truncated
// at a grade cutoff. Values are immutable after construction.
class InducedModule {
 public:
  using State = std::map<int, Rat>;  // state index -> coefficient

  InducedModule(SuperalgebraSpec base, LevelPair levels, int cutoff, ZeroSector sector,
                std::vector<Rat> charges = {})
      : base_(std::move(base)),
        levels_(levels),
        cutoff_(cutoff),
        sector_(std::move(sector)),
        charges_(std::move(charges)) {
    if (cutoff_ < 0) throw std::invalid_argument("cutoff must be non-negative");
    if (cutoff_ > cutoff_ceiling())
      throw std::invalid_argument("cutoff " + std::to_string(cutoff_) + " exceeds the ceiling " +
                                  std::to_string(cutoff_ceiling()) +
                                  " (override with TAKIFF_MAX_CUTOFF)");
    const int dd = 2 * base_.dim();
    if (int(sector_.act.size()) != dd)
      throw std::invalid_argument("zero sector must carry one matrix per doubled generator");
    if (charges_.empty()) charges_.assign(dd, Rat(0));
    enumerate_words();
  }

  const SuperalgebraSpec& base() const { return base_; }
  int doubled_dim() const { return 2 * base_.dim(); }
  const LevelPair& levels() const { return levels_; }
  int cutoff() const { return cutoff_; }
  const ZeroSector& sector() const { return sector_; }

  int dim() const { return int(words_.size()) * sector_.dim; }
  int word_count() const { return int(words_.size()); }
  const PBWWord& word(int wid) const { return words_[wid]; }
  int state_of(int wid, int zidx) const { return wid * sector_.dim + zidx; }
  int word_of_state(int s) const { return s / sector_.dim; }
  int zero_of_state(int s) const { return s % sector_.dim; }
  int grade_of_word(int wid) const { return grades_[wid]; }
  int grade_of_state(int s) const { return grades_[word_of_state(s)]; }
  const std::vector<int>& states_of_grade(int g) const { return by_grade_.at(g); }

  int parity_of_gen(int gen) const { return base_.parity(gen % base_.dim()); }

  // N0-eigenvalue bookkeeping: sector weight plus mode charges.
  Rat n0_of_state(int s) const {
    Rat q = sector_.weight_n[zero_of_state(s)];
    for (const auto& m : words_[word_of_state(s)]) q += charges_[m.gen];
    return q;
  }

  int parity_of_state(int s) const {
    int p = sector_.parity[zero_of_state(s)] == Parity::odd ? 1 : 0;
    for (const auto& m : words_[word_of_state(s)]) p ^= parity_of_gen(m.gen);
    return p;
  }

  // Action of the mode J^{gen}_n on a sparse state. Exact; throws when a
  // negative mode would push past the cutoff.
  State apply_mode(int gen, long n, const State& s) const {
    State out;
    for (const auto& [idx, c] : s) {
      State t = act_basis(gen, n, word_of_state(idx), zero_of_state(idx));
      for (const auto& [j, cc] : t) add(out, j, cc * c);
    }
    return out;
  }

  State basis_state(int idx) const { return State{{idx, Rat(1)}}; }

 private:
  static void add(State& st, int idx, const Rat& c) {
    if (c == 0) return;
    Rat& slot = st[idx];
    slot += c;
    if (slot == 0) st.erase(idx);
  }

  ModeElement to_base(int gen, long n) const {
    return ModeElement{gen % base_.dim(), gen >= base_.dim(), n};
  }

  // x = J^{gen}_n applied to the basis vector word(wid) x zero(zidx).
  State act_basis(int gen, long n, int wid, int zidx) const {
    const PBWWord& w = words_[wid];
    State out;
    if (w.empty()) {
      if (n > 0) return out;
      if (n == 0) {
        const RatMat& m = sector_.act[gen];
        for (int r = 0; r < sector_.dim; ++r)
          if (m.at(r, zidx) != 0) add(out, state_of(wid, r), m.at(r, zidx));
        return out;
      }
      PBWWord nw{{gen, int(n)}};
      add(out, state_of(word_index(nw), zidx), Rat(1));
      return out;
    }
    const PBWMode y = w.front();
    PBWWord rest(w.begin() + 1, w.end());
    int rest_id = word_index(rest);
    bool before = (n < y.n) || (n == y.n && gen < y.gen);
    bool equal = (n == y.n && gen == y.gen);
    if ((n <= -1) && (before || equal)) {
      if (equal && parity_of_gen(gen)) {
        // x^2 = (1/2){x,x} (vanishes unless the algebra has [odd, same odd] terms)
        AffineBracket br = affine_bracket(base_, to_base(gen, n), to_base(gen, n), levels_);
        State t = apply_bracket(br, rest_id, zidx);
        State half;
        for (const auto& [j, c] : t) add(half, j, c / 2);
        return half;
      }
      PBWWord nw;
      nw.reserve(w.size() + 1);
      nw.push_back({gen, int(n)});
      nw.insert(nw.end(), w.begin(), w.end());
      add(out, state_of(word_index(nw), zidx), Rat(1));
      return out;
    }
    // swap past y: x y = (-1)^{p_x p_y} y x + [x, y]
    int sign = (parity_of_gen(gen) && parity_of_gen(y.gen)) ? -1 : 1;
    State tail = act_basis(gen, n, rest_id, zidx);
    for (const auto& [j, c] : tail) {
      State pre = act_basis(y.gen, y.n, word_of_state(j), zero_of_state(j));
      for (const auto& [jj, cc] : pre) add(out, jj, cc * c * Rat(sign));
    }
    AffineBracket br = affine_bracket(base_, to_base(gen, n), to_base(y.gen, y.n), levels_);
    State t = apply_bracket(br, rest_id, zidx);
    for (const auto& [j, c] : t) add(out, j, c);
    return out;
  }

  State apply_bracket(const AffineBracket& br, int wid, int zidx) const {
    State out;
    for (const auto& [m, coeff] : br.terms) {
      int gen = m.base + (m.tilde ? base_.dim() : 0);
      State t = act_basis(gen, m.mode, wid, zidx);
      for (const auto& [j, c] : t) add(out, j, c * coeff);
    }
    if (br.central != 0) add(out, state_of(wid, zidx), br.central);
    return out;
  }

  int word_index(const PBWWord& w) const {
    auto it = index_.find(w);
    if (it == index_.end())
      throw std::invalid_argument("state of grade beyond the cutoff produced; raise the cutoff");
    return it->second;
  }

  void enumerate_words() {
    // modes in canonical order: (n ascending from -cutoff, gen ascending)
    std::vector<PBWMode> modes;
    for (int n = -cutoff_; n <= -1; ++n)
      for (int gen = 0; gen < doubled_dim(); ++gen) modes.push_back({gen, n});
    PBWWord cur;
    std::vector<std::pair<int, PBWWord>> found;  // (grade, word)
    rec_enumerate(modes, 0, 0, cur, found);
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [g, w] : found) {
      index_[w] = int(words_.size());
      words_.push_back(w);
      grades_.push_back(g);
    }
    by_grade_.assign(cutoff_ + 1, {});
    for (int wid = 0; wid < int(words_.size()); ++wid)
      for (int z = 0; z < sector_.dim; ++z) by_grade_[grades_[wid]].push_back(state_of(wid, z));
  }

  void rec_enumerate(const std::vector<PBWMode>& modes, size_t pos, int grade, PBWWord& cur,
                     std::vector<std::pair<int, PBWWord>>& found) {
    if (pos == modes.size()) {
      found.push_back({grade, cur});
      return;
    }
    const PBWMode& m = modes[pos];
    int cost = -m.n;
    int max_mult = (grade + cost <= cutoff_) ? (cutoff_ - grade) / cost : 0;
    if (parity_of_gen(m.gen)) max_mult = std::min(max_mult, 1);
    rec_enumerate(modes, pos + 1, grade, cur, found);
    for (int mult = 1; mult <= max_mult; ++mult) {
      for (int t = 0; t < mult; ++t) cur.push_back(m);
      rec_enumerate(modes, pos + 1, grade + mult * cost, cur, found);
      for (int t = 0; t < mult; ++t) cur.pop_back();
    }
  }

  SuperalgebraSpec base_;
  LevelPair levels_;
  int cutoff_;
  ZeroSector sector_;
  std::vector<Rat> charges_;
  std::vector<PBWWord> words_;
  std::vector<int> grades_;
  std::map<PBWWord, int> index_;
  std::vector<std::vector<int>> by_grade_;
};

// ---------------------------------------------------------------------------
// Affine Takiff gl(1|1) Verma modules

inline std::vector<Rat> gl11_charges() {
  return {Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0), Rat(0), Rat(1), Rat(-1)};
}

// Verma over affine Takiff gl(1|1) from a hws weight (eigenvalue quadruple),
// truncated at the grade cutoff; the zero-grade sector is the finite Verma.
inline InducedModule build_verma(const AffWeight& w_hws, int cutoff) {
  FinModule zero = verma({w_hws.n, w_hws.e, w_hws.tn, w_hws.te});
  return InducedModule(gl11(), w_hws.levels, cutoff, sector_from_finmodule(zero), gl11_charges());
}

// Weight-space multiplicities: (grade, N0 offset from the palindromic centre
// n_hws - 1) -> dimension.
inline std::map<std::pair<int, Rat>, int> multiplicities(const InducedModule& gv, const Rat& n_hws) {
  std::map<std::pair<int, Rat>, int> out;
  for (int g = 0; g <= gv.cutoff(); ++g)
    for (int s : gv.states_of_grade(g)) out[{g, gv.n0_of_state(s) - (n_hws - 1)}] += 1;
  return out;
}

struct SingularVector {
  int grade = 0;
  Rat n0;                    // N0 eigenvalue
  InducedModule::State vec;  // representative, exact
  bool generalized = false;  // annihilated by raisers but not a tN0 eigenvector
};

// Exact nullspace of the raising action per weight space at the given grade.
// Raising set: psi+_0, tpsi+_0, modes of index 1 and 2 of all eight currents,
// plus N_j and tN_j for 3 <= j <= grade. The index-1,2 modes generate every
// other positive mode (psi_j, tpsi_j, E_j, tE_j arise from brackets with N_1
// and psi_1), but N_j and tN_j never appear on the right of a bracket and must
// be included directly; `full` switches to all modes of index 1..grade for
// cross-checks. The hws generator itself is not reported.
inline std::vector<SingularVector> singular_vectors(const InducedModule& gv, int grade,
                                                    bool full = false) {
  if (gv.doubled_dim() != 8)
    throw std::invalid_argument("singular-vector search expects an affine Takiff gl(1|1) module");
  if (grade > gv.cutoff()) throw std::invalid_argument("grade beyond cutoff");
  std::vector<std::pair<int, long>> raisers = {{gPsiP, 0}, {gtPsiP, 0}};
  int low_index = full ? grade : std::min(grade, 2);
  for (long idx = 1; idx <= low_index; ++idx)
    for (int gen = 0; gen < 8; ++gen) raisers.push_back({gen, idx});
  if (!full)
    for (long idx = 3; idx <= grade; ++idx) {
      raisers.push_back({gN, idx});
      raisers.push_back({gtN, idx});
    }

  // weight spaces at this grade
  std::map<Rat, std::vector<int>> spaces;
  for (int s : gv.states_of_grade(grade)) spaces[gv.n0_of_state(s)].push_back(s);

  // the hws weight space at grade 0 consists of the generator alone; skip it
  Rat hws_n = gv.sector().weight_n.empty() ? Rat(0) : gv.sector().weight_n[0];

  std::vector<SingularVector> out;
  for (const auto& [nu, states] : spaces) {
    if (grade == 0 && nu == hws_n) continue;
    const int wd = int(states.size());
    std::map<int, int> local;  // global target state -> row
    std::vector<RatMat> stacked;
    for (const auto& [gen, idx] : raisers) {
      if (grade - idx < 0 && idx > 0) continue;
      std::map<int, int> rows;
      std::vector<std::map<int, Rat>> cols(wd);
      for (int c = 0; c < wd; ++c) {
        auto img = gv.apply_mode(gen, idx, gv.basis_state(states[c]));
        for (const auto& [j, coeff] : img) {
          if (!rows.count(j)) rows[j] = int(rows.size());
          cols[c][j] = coeff;
        }
      }
      if (rows.empty()) continue;
      RatMat m(int(rows.size()), wd);
      for (int c = 0; c < wd; ++c)
        for (const auto& [j, coeff] : cols[c]) m.at(rows[j], c) = coeff;
      stacked.push_back(std::move(m));
    }
    RatMat ker = stacked.empty() ? RatMat::identity(wd) : kernel(vstack(stacked));
    if (ker.cols() == 0) continue;

    // split eigen vs generalized with respect to tN0
    RatMat tn_loc(wd, wd);
    Rat tn0;
    {
      // single generalized tN0 eigenvalue per weight space: read it from the
      // diagonal of the local action
      for (int c = 0; c < wd; ++c) {
        auto img = gv.apply_mode(gtN, 0, gv.basis_state(states[c]));
        for (const auto& [j, coeff] : img) {
          auto it = std::find(states.begin(), states.end(), j);
          if (it == states.end()) throw std::logic_error("tN0 leaves a weight space");
          tn_loc.at(int(it - states.begin()), c) = coeff;
          if (j == states[c]) tn0 = coeff;
        }
      }
    }
    RatMat shifted = tn_loc - RatMat::identity(wd) * tn0;
    // eigen part of the kernel
    RatMat shifted_on_ker = shifted * ker;
    RatMat eig_coords = kernel(shifted_on_ker);  // combos of ker columns that are eigen
    SpanBasis eig_span(wd);
    for (int c = 0; c < eig_coords.cols(); ++c) {
      RatVec v(wd);
      for (int r = 0; r < wd; ++r) {
        for (int t = 0; t < ker.cols(); ++t)
          if (ker.at(r, t) != 0 && eig_coords.at(t, c) != 0)
            v[r] += ker.at(r, t) * eig_coords.at(t, c);
      }
      SingularVector sv;
      sv.grade = grade;
      sv.n0 = nu;
      sv.generalized = false;
      for (int r = 0; r < wd; ++r)
        if (v[r] != 0) sv.vec[states[r]] = v[r];
      eig_span.insert(v);
      out.push_back(std::move(sv));
    }
    for (int c = 0; c < ker.cols(); ++c) {
      RatVec v(wd);
      for (int r = 0; r < wd; ++r) v[r] = ker.at(r, c);
      if (eig_span.insert(v)) {
        SingularVector sv;
        sv.grade = grade;
        sv.n0 = nu;
        sv.generalized = true;
        for (int r = 0; r < wd; ++r)
          if (v[r] != 0) sv.vec[states[r]] = v[r];
        out.push_back(std::move(sv));
      }
    }
  }
  return out;
}

}  // namespace takiff
