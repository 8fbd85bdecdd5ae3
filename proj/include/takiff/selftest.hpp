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
// The acceptance suite: one callable check per criterion, used by the
// `takiff selftest` subcommand and the acceptance test binary.

#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "takiff/characters.hpp"
#include "takiff/findim.hpp"
#include "takiff/groth.hpp"
#include "takiff/sugawara.hpp"
#include "takiff/verlinde.hpp"

namespace takiff {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

namespace selftest_detail {

struct Rng {
  std::mt19937_64 g{20260808};
  Rat r(int lo = -4, int hi = 4, int maxden = 4, bool nonzero = false) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
    Rat v = rat(num(g), den(g));
    while (nonzero && v == 0) v = rat(num(g), den(g));
    return v;
  }
  long flow() {
    std::uniform_int_distribution<int> d(-2, 2);
    return d(g);
  }
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

// --- criterion 1: Jacobi suite --------------------------------------------
inline std::string c1_jacobi() {
  int checked = 0;
  for (const auto& s : {gl11(), sl2(), u1()}) {
    require(check_jacobi(s).pass, "base algebra fails Jacobi");
    require(check_jacobi(takiff_extend(s)).pass, "Takiff double fails Jacobi");
    checked += 2;
  }
  return std::to_string(checked) + " algebras, exact";
}

// --- criterion 2: finite tensor tables -------------------------------------
inline std::string c2_tensor_tables() {
  Rng rng;
  auto factors_of = [](const FinModule& m) { return decompose(m).factors; };
  auto summand_labels = [](const FinModule& m) {
    auto rep = decompose(m);
    require(rep.fully_identified, "expected identified summands");
    std::multiset<std::string> out;
    for (const auto& s : rep.summands) out.insert(label_str(s.label));
    return out;
  };
  auto lbl = [](FinKind k, Rat n, Rat e, Rat tn, Rat te, int m = 0) {
    return ClassLabel{k, {std::move(n), std::move(e), std::move(tn), std::move(te)}, m};
  };
  const int samples = 50;
  long total = 0;
  for (int t = 0; t < samples; ++t) {
    Rat n1 = rng.r(), n2 = rng.r(), tn1 = rng.r(), tn2 = rng.r();
    Rat e1 = rng.r(-4, 4, 4, true), e2 = rng.r(-4, 4, 4, true);
    Rat te1 = rng.r(-4, 4, 4, true), te2 = rng.r(-4, 4, 4, true);

    // TP:Ax — A x A, A x S, A x T
    {
      auto got = summand_labels(tensor(atypical_module(n1, tn1), atypical_module(n2, tn2)));
      require(got == std::multiset<std::string>{label_str(lbl(FinKind::Atypical, n1 + n2, 0, tn1 + tn2, 0))},
              "TP:Ax (AxA) failed");
      got = summand_labels(tensor(atypical_module(n1, tn1), semitypical_module(n2, e2, tn2)));
      require(got == std::multiset<std::string>{label_str(lbl(FinKind::Semitypical, n1 + n2, e2, tn1 + tn2, 0))},
              "TP:Ax (AxS) failed");
      got = summand_labels(tensor(atypical_module(n1, tn1),
                                  from_label(lbl(FinKind::Typical, n2, e2, tn2, te2))));
      require(got == std::multiset<std::string>{label_str(lbl(FinKind::Typical, n1 + n2, e2, tn1 + tn2, te2))},
              "TP:Ax (AxT) failed");
      total += 3;
    }
    // TP:SxS with e1 + e2 != 0 and = 0
    {
      Rat ee2 = e2;
      while (e1 + ee2 == 0 || ee2 == 0) ee2 += 1;
      auto got = summand_labels(tensor(semitypical_module(n1, e1, tn1), semitypical_module(n2, ee2, tn2)));
      std::multiset<std::string> want = {
          label_str(lbl(FinKind::Semitypical, n1 + n2 + rat(1, 2), e1 + ee2, tn1 + tn2, 0)),
          label_str(lbl(FinKind::Semitypical, n1 + n2 - rat(1, 2), e1 + ee2, tn1 + tn2, 0))};
      require(got == want, "TP:SxS (nonzero) failed");
      got = summand_labels(tensor(semitypical_module(n1, e1, tn1), semitypical_module(n2, -e1, tn2)));
      require(got == std::multiset<std::string>{label_str(lbl(FinKind::Projectivelike, n1 + n2, 0, tn1 + tn2, 0))},
              "TP:SxS (zero) failed");
      total += 2;
    }
    // TP:SxT
    {
      auto got = summand_labels(tensor(semitypical_module(n1, e1, tn1),
                                       from_label(lbl(FinKind::Typical, n2, e2, tn2, te2))));
      std::multiset<std::string> want = {
          label_str(lbl(FinKind::Typical, n1 + n2 + rat(1, 2), e1 + e2, tn1 + tn2, te2)),
          label_str(lbl(FinKind::Typical, n1 + n2 - rat(1, 2), e1 + e2, tn1 + tn2, te2))};
      require(got == want, "TP:SxT failed");
      total += 1;
    }
    // TP:TxT with te1 + te2 != 0
    {
      Rat tee2 = te2;
      while (te1 + tee2 == 0 || tee2 == 0) tee2 += 1;
      auto got = summand_labels(tensor(from_label(lbl(FinKind::Typical, n1, e1, tn1, te1)),
                                       from_label(lbl(FinKind::Typical, n2, e2, tn2, tee2))));
      std::multiset<std::string> want = {
          label_str(lbl(FinKind::Typical, n1 + n2 + 1, e1 + e2, tn1 + tn2, te1 + tee2)),
          label_str(lbl(FinKind::GenTyp, n1 + n2, e1 + e2, tn1 + tn2, te1 + tee2, 2)),
          label_str(lbl(FinKind::Typical, n1 + n2 - 1, e1 + e2, tn1 + tn2, te1 + tee2))};
      require(got == want, "TP:TxT failed");
      total += 1;
    }
    // te1 + te2 = 0 composition displays
    {
      Rat ee2 = e2;
      while (e1 + ee2 == 0) ee2 += 1;
      auto f = factors_of(tensor(from_label(lbl(FinKind::Typical, n1, e1, tn1, te1)),
                                 from_label(lbl(FinKind::Typical, n2, ee2, tn2, -te1))));
      std::map<ClassLabel, long> want;
      want[lbl(FinKind::Semitypical, n1 + n2 + rat(3, 2), e1 + ee2, tn1 + tn2, 0)] = 1;
      want[lbl(FinKind::Semitypical, n1 + n2 + rat(1, 2), e1 + ee2, tn1 + tn2, 0)] = 3;
      want[lbl(FinKind::Semitypical, n1 + n2 - rat(1, 2), e1 + ee2, tn1 + tn2, 0)] = 3;
      want[lbl(FinKind::Semitypical, n1 + n2 - rat(3, 2), e1 + ee2, tn1 + tn2, 0)] = 1;
      require(f == want, "te-sum-zero 1,3,3,1 display failed");

      f = factors_of(tensor(from_label(lbl(FinKind::Typical, n1, e1, tn1, te1)),
                            from_label(lbl(FinKind::Typical, n2, -e1, tn2, -te1))));
      want.clear();
      want[lbl(FinKind::Atypical, n1 + n2 + 2, 0, tn1 + tn2, 0)] = 1;
      want[lbl(FinKind::Atypical, n1 + n2 + 1, 0, tn1 + tn2, 0)] = 4;
      want[lbl(FinKind::Atypical, n1 + n2, 0, tn1 + tn2, 0)] = 6;
      want[lbl(FinKind::Atypical, n1 + n2 - 1, 0, tn1 + tn2, 0)] = 4;
      want[lbl(FinKind::Atypical, n1 + n2 - 2, 0, tn1 + tn2, 0)] = 1;
      require(f == want, "te-sum-zero 1,4,6,4,1 display failed");
      total += 2;
    }
  }
  return std::to_string(total) + " decompositions, exact multiset equality";
}

// --- criterion 3: jordan structure ------------------------------------------
inline std::string c3_jordan() {
  FinModule m = gen_typ2_from_hws({rat(1, 2), rat(3), rat(-1), rat(2, 3)});
  auto jt = jordan_structure(m, gtN);
  require(jt.size() == 1 && jt.begin()->second.front() == 3, "tN lacks a rank-3 cell on GenTyp2");
  auto [q1, q2] = casimir_matrices(m);
  auto j1 = jordan_of_matrix(q1), j2 = jordan_of_matrix(q2);
  require(j1.begin()->second.front() == 2, "Q1 cell rank is not 2");
  require(j2.begin()->second.front() == 2, "Q2 cell rank is not 2");
  return "tN blocks {3,2,2,1}; Q1, Q2 largest cells exactly 2";
}

// --- criterion 4: affine multiplicities --------------------------------------
inline std::string c4_multiplicities() {
  AffWeight w{rat(0), rat(0), rat(0), rat(0), LevelPair(Rat(1), Rat(1))};
  InducedModule gv = build_verma(w, 2);
  auto mult = multiplicities(gv, w.n);
  auto row_ok = [&](int g, std::initializer_list<long> want) {
    long off = g + 1;
    for (long m : want) {
      require(mult[{g, Rat(off)}] == m, "multiplicity row mismatch at grade " + std::to_string(g));
      --off;
    }
  };
  row_ok(0, {1, 2, 1});
  row_ok(1, {2, 8, 12, 8, 2});
  row_ok(2, {1, 12, 39, 56, 39, 12, 1});
  return "rows (1,2,1), (2,8,12,8,2), (1,12,39,56,39,12,1) exact";
}

// --- criterion 5: singular vectors -------------------------------------------
inline std::string c5_singular() {
  // band edge te/tk = 1/2: empty at grades 1..3
  AffWeight w{rat(1, 4), rat(2, 3), rat(-1), rat(1, 2), LevelPair(Rat(1), Rat(1))};
  InducedModule gv = build_verma(w, 3);
  for (int g = 1; g <= 3; ++g)
    require(singular_vectors(gv, g).empty(), "unexpected singular vector at the band edge");
  // te = 0, e != 0: exactly the tpsi-_0 descendant at grade 0
  AffWeight ws{rat(2), rat(3), rat(1, 2), Rat(0), LevelPair(Rat(1), Rat(1))};
  InducedModule gs = build_verma(ws, 1);
  auto sv = singular_vectors(gs, 0);
  require(sv.size() == 1 && !sv[0].generalized && sv[0].vec.count(2) == 1,
          "semitypical grade-0 singular vector mismatch");
  // te = e = 0: psi-_0|v> generalized, tpsi-_0|v> singular
  AffWeight wa{rat(2), Rat(0), rat(1, 2), Rat(0), LevelPair(Rat(1), Rat(1))};
  InducedModule ga = build_verma(wa, 1);
  auto sva = singular_vectors(ga, 0);
  int gen_count = 0, sing_count = 0;
  bool saw_psi = false, saw_tpsi = false;
  for (const auto& v : sva) {
    if (v.generalized) {
      ++gen_count;
      saw_psi = saw_psi || v.vec.count(1) == 1;
    } else {
      ++sing_count;
      saw_tpsi = saw_tpsi || v.vec.count(2) == 1;
    }
  }
  require(gen_count == 1 && saw_psi, "generalized singular vector psi-_0|v> not found");
  require(sing_count == 2 && saw_tpsi, "singular vector tpsi-_0|v> not found");
  return "band-edge emptiness at grades 1-3; grade-0 vectors as stated";
}

// --- criterion 6: sugawara ----------------------------------------------------
inline std::string c6_sugawara() {
  std::ostringstream detail;
  {
    LevelPair lv(rat(3, 2), rat(2, 3));
    AffWeight w{rat(1, 3), rat(1), rat(1, 2), rat(1, 4), lv};
    InducedModule gv = build_verma(w, 4);
    VirasoroRealization vir(gv, build_T_gl11(lv));
    Rat c = vir.measure_central_charge();
    require(c == 0, "gl(1|1) central charge is " + rat_str(c) + ", expected 0");
    auto v = check_virasoro(vir, 2, 2);
    require(v.pass, "gl(1|1) Virasoro: " + v.witness);
    auto p = check_primary(vir, 2, 2);
    require(p.pass, "gl(1|1) primary: " + p.witness);
    detail << "gl(1|1): c=0, " << v.checked_states << "+" << p.checked_states << " identities; ";
  }
  {
    LevelPair lv(Rat(1), Rat(1));
    InducedModule vac = vacuum_module(sl2(), lv, 4);
    VirasoroRealization vir(vac, build_T_general(sl2(), lv));
    Rat c = vir.measure_central_charge();
    require(c == 6, "sl2 central charge is " + rat_str(c) + ", expected 6");
    auto v = check_virasoro(vir, 2, 2);
    require(v.pass, "sl2 Virasoro: " + v.witness);
    auto p = check_primary(vir, 2, 2);
    require(p.pass, "sl2 primary: " + p.witness);
    detail << "sl2: c=6, " << v.checked_states << "+" << p.checked_states << " identities; ";
  }
  {
    Rng rng;
    for (int t = 0; t < 10; ++t) {
      LevelPair lv(rng.r(1, 3, 2, true), rng.r(1, 3, 2, true));
      AffWeight w{rng.r(), rng.r(), rng.r(), rng.r(), lv};
      InducedModule gv = build_verma(w, 0);
      VirasoroRealization vir(gv, build_T_gl11(lv));
      auto r = vir.apply(0, gv.basis_state(0));
      Rat delta = hws_conformal_dim(w);
      Rat got = r.count(0) ? r.at(0) : Rat(0);
      require(got == delta && int(r.size()) == (delta != 0 ? 1 : 0),
              "L0 hws eigenvalue mismatch");
    }
    detail << "10 hws dimensions exact";
  }
  return detail.str();
}

// --- criterion 7: character identities ----------------------------------------
inline std::string c7_characters() {
  Rng rng;
  LevelPair lv0(Rat(1), Rat(1));
  // typical product formula vs brute force, 5 random weights, cutoff 4
  for (int t = 0; t < 5; ++t) {
    LevelPair lv(rng.r(1, 3, 2, true), rng.r(1, 3, 2, true));
    AffWeight hws{rng.r(), rng.r(), rng.r(), rng.r(), lv};
    InducedModule gv = build_verma(hws, 4);
    FormalSeries formula = typical_character({hws.n - 1, hws.e, hws.tn, hws.te, lv}, 4);
    FormalSeries brute = brute_force_character(gv, hws.n, hws_conformal_dim(hws));
    require(series_equal(formula, brute), "typical character != brute-force trace");
  }
  // supercharacter = i theta1^2/eta^6 coefficientwise at cutoff 8
  {
    LevelPair lv(rat(3, 2), rat(2, 3));
    AffClassLabel t{AffKind::Typical, rat(1, 3), rat(-1), rat(1, 2), rat(1, 4), 0, lv};
    Supercharacter sch = supercharacter(t, 8);
    PhasedSeries theta = mul_by_i(theta1_sq_over_eta6(8));
    require(theta.i_pow == 0, "theta phase mismatch");
    Rat qexp = (t.n * t.te + t.tn * t.e) / lv.tk +
               (t.te * t.te - lv.k * t.tn * t.te) / (lv.tk * lv.tk);
    FormalSeries rhs = shift(theta.series, t.n, qexp);
    require(sch.series.q_offset == rhs.q_offset, "fractional q-offset mismatch");
    require(series_equal(sch.series, rhs), "supercharacter != i theta1^2/eta^6");
  }
  // resolution sums equal the direct formulas at cutoff 6 (asserted inside character())
  {
    AffClassLabel s{AffKind::Semitypical, rat(1, 2), rat(2), rat(-1), Rat(0), 0, lv0};
    character(s, 6);
    AffClassLabel a{AffKind::Atypical, rat(1), Rat(0), rat(1, 3), Rat(0), 0, lv0};
    character(a, 6);
  }
  // spectral flow at series level: ch M(zq; q) = ch (sigma M)(z; q), SFTyp labels
  {
    LevelPair lv(rat(2), rat(3, 2));
    AffClassLabel t{AffKind::Typical, rat(1, 2), rat(1), rat(-1), rat(1, 3), 0, lv};
    FormalSeries base = typical_character({t.n, t.e, t.tn, t.te, lv}, 10);
    for (long ell : {1L, -1L}) {
      FormalSeries flowed = spectral_flow_series(base, ell, -4, 4);
      AffClassLabel target = spectral_flow_label(t, ell);
      FormalSeries want = typical_character({target.n, target.e, target.tn, target.te, lv}, 10);
      require(series_equal(flowed, want), "spectral-flow character relation failed");
    }
  }
  return "brute force (5 weights, cutoff 4), theta form (cutoff 8), resolutions (cutoff 6), flow";
}

// --- criterion 8: T-transformation --------------------------------------------
inline std::string c8_t_transform() {
  Rng rng;
  ModularPoint p;
  p.tau = {0.31, 2.0};
  p.nu = {0.17, 0.0};
  p.mu = {0.4, 0.0};
  p.tmu = {-0.2, 0.0};
  p.tnu = {0.11, 0.0};
  p.t = {0.05, 0.0};
  p.tt = {0.07, 0.0};
  double worst = 0;
  for (int t = 0; t < 5; ++t) {
    LevelPair lv(rng.r(1, 2, 2, true), rng.r(1, 2, 2, true));
    Rat te = rng.r(-2, 2, 3);
    while (is_integer(te / lv.tk)) te = rng.r(-2, 2, 3);
    AffClassLabel lab{AffKind::Typical, rng.r(), rng.r(), rng.r(), te, 0, lv};
    Supercharacter sch = supercharacter(lab, 12);
    auto base = eval_at(sch, p);
    ModularPoint pT = p;
    pT.tau += 1.0;
    auto shifted = eval_at(sch, pT);
    double delta = rat_double(conformal_dim({lab.n, lab.e, lab.tn, lab.te, lv}));
    std::complex<double> phase =
        std::exp(std::complex<double>(0, 2 * 3.14159265358979323846 * delta));
    double rel = std::abs(shifted.value - phase * base.value) / std::abs(base.value);
    require(rel < 1e-8, "T-transformation relative error " + std::to_string(rel));
    worst = std::max(worst, rel);
  }
  std::ostringstream os;
  os << "5 weights at Im tau = 2, cutoff 12; worst relative error " << worst;
  return os.str();
}

// --- criterion 9: verlinde and fusion -----------------------------------------
inline std::string c9_verlinde() {
  Rng rng;
  long products = 0;
  auto levels = [&]() { return LevelPair(rng.r(1, 3, 2, true), rng.r(1, 3, 2, true)); };
  auto typ = [&](const LevelPair& lv) {
    Rat te = rng.r(-3, 3, 3);
    while (is_integer(te / lv.tk)) te = rng.r(-3, 3, 3);
    return AffClassLabel{AffKind::Typical, rng.r(), rng.r(), rng.r(), te, 0, lv};
  };
  auto styp = [&](const LevelPair& lv, long fl) {
    return AffClassLabel{AffKind::Semitypical, rng.r(), rng.r(-3, 3, 3, true), rng.r(), Rat(0), fl, lv};
  };
  auto atyp = [&](const LevelPair& lv, long fl) {
    return AffClassLabel{AffKind::Atypical, rng.r(), Rat(0), rng.r(), Rat(0), fl, lv};
  };
  // six Grothendieck fusion families, 20 samples each
  for (int t = 0; t < 20; ++t) {
    LevelPair lv = levels();
    const Rat &k = lv.k, &tk = lv.tk;
    {
      long ell = rng.flow();
      AffClassLabel a = atyp(lv, ell), b = typ(lv);
      GrothFusionElement want{{{AffKind::Typical, a.n + b.n - 2 * Rat(ell), b.e + Rat(ell) * k,
                                a.tn + b.tn, b.te + Rat(ell) * tk, 0, lv},
                               1}};
      require(verlinde(a, b).classes == want, "A x T family failed");
    }
    {
      long ell = rng.flow();
      AffClassLabel a = styp(lv, ell), b = typ(lv);
      GrothFusionElement want;
      for (Rat half : {rat(1, 2), rat(-1, 2)})
        want[{AffKind::Typical, a.n + b.n - 2 * Rat(ell) + half, a.e + b.e + Rat(ell) * k,
              a.tn + b.tn, b.te + Rat(ell) * tk, 0, lv}] = 1;
      require(verlinde(a, b).classes == want, "S x T family failed");
    }
    {
      AffClassLabel a = typ(lv), b = typ(lv);
      AffKind kind = is_integer((a.te + b.te) / tk) ? AffKind::VermaClass : AffKind::Typical;
      GrothFusionElement want;
      want[{kind, a.n + b.n + 1, a.e + b.e, a.tn + b.tn, a.te + b.te, 0, lv}] = 1;
      want[{kind, a.n + b.n, a.e + b.e, a.tn + b.tn, a.te + b.te, 0, lv}] = 2;
      want[{kind, a.n + b.n - 1, a.e + b.e, a.tn + b.tn, a.te + b.te, 0, lv}] = 1;
      require(verlinde(a, b).classes == want, "T x T family failed");
    }
    {
      long l1 = rng.flow(), l2 = rng.flow();
      AffClassLabel a = styp(lv, l1), b = styp(lv, l2);
      Rat L(l1 + l2);
      GrothFusionElement want{{{AffKind::VermaClass, a.n + b.n - 2 * L, a.e + b.e + L * k,
                                a.tn + b.tn, L * tk, 0, lv},
                               1}};
      require(verlinde(a, b).classes == want, "S x S family failed");
    }
    {
      long l1 = rng.flow(), l2 = rng.flow();
      AffClassLabel a = atyp(lv, l1), b = styp(lv, l2);
      GrothFusionElement want{
          {{AffKind::Semitypical, a.n + b.n, b.e, a.tn + b.tn, Rat(0), l1 + l2, lv}, 1}};
      require(verlinde(a, b).classes == want, "A x S family failed");
    }
    {
      long l1 = rng.flow(), l2 = rng.flow();
      AffClassLabel a = atyp(lv, l1), b = atyp(lv, l2);
      GrothFusionElement want{
          {{AffKind::Atypical, a.n + b.n, Rat(0), a.tn + b.tn, Rat(0), l1 + l2, lv}, 1}};
      require(verlinde(a, b).classes == want, "A x A family failed");
    }
    products += 6;
  }
  // unitarity
  {
    UnitarityResult u = unitarity_check();
    require(u.is_four_delta_identity, "unitarity is not the four-delta identity");
    require(s_matrix_symmetric(), "S pairing is not symmetric");
  }
  // ring axioms
  {
    LevelPair lv(rat(3, 2), Rat(1));
    auto rnd = [&]() -> AffClassLabel {
      std::uniform_int_distribution<int> kind(0, 2);
      switch (kind(rng.g)) {
        case 0: return atyp(lv, rng.flow());
        case 1: return styp(lv, rng.flow());
        default: return typ(lv);
      }
    };
    for (int t = 0; t < 20; ++t) {
      AffClassLabel a = rnd(), b = rnd();
      require(verlinde(a, b).classes == verlinde(b, a).classes, "commutativity failed");
    }
    for (int t = 0; t < 50; ++t) {
      AffClassLabel a = rnd(), b = rnd(), c = rnd();
      GrothFusionElement sc{{c, 1}}, sa{{a, 1}};
      require(verlinde_product(verlinde(a, b).classes, sc) ==
                  verlinde_product(sa, verlinde(b, c).classes),
              "associativity failed");
    }
    AffClassLabel vac{AffKind::Atypical, Rat(0), Rat(0), Rat(0), Rat(0), 0, lv};
    for (int t = 0; t < 10; ++t) {
      AffClassLabel x = rnd();
      require(verlinde(vac, x).classes == expand_irreducible(GrothFusionElement{{x, 1}}),
              "vacuum unit failed");
      AffClassLabel s = atyp(lv, rng.flow());
      AffClassLabel inv{AffKind::Atypical, -s.n, Rat(0), -s.tn, Rat(0), -s.flow, lv};
      require(verlinde(s, inv).classes == GrothFusionElement{{vac, 1}},
              "simple-current inverse failed");
    }
    products += 80;
  }
  // induced-ring consistency inside the te-window
  {
    LevelPair lv(Rat(2), Rat(2));
    auto to_affine = [&](const ClassLabel& l) -> AffClassLabel {
      switch (l.kind) {
        case FinKind::Atypical:
          return {AffKind::Atypical, l.weight.n, Rat(0), l.weight.tn, Rat(0), 0, lv};
        case FinKind::Semitypical:
          return {AffKind::Semitypical, l.weight.n, l.weight.e, l.weight.tn, Rat(0), 0, lv};
        default:
          return {AffKind::Typical, l.weight.n, l.weight.e, l.weight.tn, l.weight.te, 0, lv};
      }
    };
    auto random_finite = [&]() -> ClassLabel {
      std::uniform_int_distribution<int> kind(0, 2);
      switch (kind(rng.g)) {
        case 0: return {FinKind::Atypical, {rng.r(), Rat(0), rng.r(), Rat(0)}, 0};
        case 1: return {FinKind::Semitypical, {rng.r(), rng.r(-3, 3, 3, true), rng.r(), Rat(0)}, 0};
        default: {
          Rat te = rng.r(-1, 1, 3, true) * lv.tk / 2;
          while (te == 0 || te * 2 == lv.tk || te * 2 == -lv.tk)
            te = rng.r(-1, 1, 3, true) * lv.tk / 2;
          return {FinKind::Typical, {rng.r(), rng.r(), rng.r(), te}, 0};
        }
      }
    };
    for (int t = 0; t < 25; ++t) {
      ClassLabel a = random_finite(), b = random_finite();
      GrothElement fin = groth_product(a, b);
      GrothFusionElement affine = expand_irreducible(verlinde(to_affine(a), to_affine(b)).classes);
      GrothFusionElement mapped;
      for (const auto& [l, c] : fin.terms) mapped[to_affine(l)] += c;
      require(mapped == affine, "induced-ring consistency failed");
      products += 1;
    }
  }
  return std::to_string(products) + " products; unitarity; ring axioms; induced consistency";
}

}  // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr, int jobs = 1,
                                                   const std::set<int>& only = {}) {
  using namespace selftest_detail;
  struct Spec {
    int id;
    const char* name;
    std::function<std::string()> fn;
  };
  std::vector<Spec> specs = {
      {1, "jacobi suite (gl(1|1), sl2, u(1) and Takiff doubles)", c1_jacobi},
      {2, "finite tensor tables (50 samples per case)", c2_tensor_tables},
      {3, "jordan structure on GenTyp2", c3_jordan},
      {4, "affine weight multiplicities at cutoff 2", c4_multiplicities},
      {5, "singular vectors (band edge and te = 0)", c5_singular},
      {6, "sugawara: central charges, virasoro, primary", c6_sugawara},
      {7, "character identities", c7_characters},
      {8, "T-transformation at Im tau = 2", c8_t_transform},
      {9, "verlinde and the grothendieck fusion ring", c9_verlinde},
  };
  if (!only.empty()) {
    std::vector<Spec> filtered;
    for (auto& s : specs)
      if (only.count(s.id)) filtered.push_back(s);
    specs = std::move(filtered);
  }
  auto run_one = [](const Spec& s) {
    CriterionResult r;
    r.id = s.id;
    r.name = s.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = s.fn();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  std::vector<CriterionResult> results(specs.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < specs.size(); ++i) {
      results[i] = run_one(specs[i]);
      if (progress) {
        *progress << (results[i].pass ? "PASS" : "FAIL") << "  criterion " << results[i].id << ": "
                  << results[i].name << " [" << results[i].seconds << " s] " << results[i].detail
                  << "\n";
        progress->flush();
      }
    }
  } else {
    std::vector<std::future<CriterionResult>> futs;
    for (const auto& s : specs)
      futs.push_back(std::async(std::launch::async, [&run_one, &s] { return run_one(s); }));
    for (size_t i = 0; i < futs.size(); ++i) {
      results[i] = futs[i].get();
      if (progress)
        *progress << (results[i].pass ? "PASS" : "FAIL") << "  criterion " << results[i].id << ": "
                  << results[i].name << " [" << results[i].seconds << " s] " << results[i].detail
                  << "\n";
    }
  }
  return results;
}

}  // namespace takiff
