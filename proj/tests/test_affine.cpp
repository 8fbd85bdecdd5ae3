#include <catch2/catch.hpp>

#include <random>

#include "takiff/affine.hpp"

using namespace takiff;

namespace {

std::mt19937_64 rng(424242);

Rat random_rat(int lo = -4, int hi = 4, int maxden = 5) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
  return rat(num(rng), den(rng));
}

// oracle: coefficients of 4 * prod_{i>=1} (1+q^i)^4 / (1-q^i)^4 up to q^N
std::vector<long> verma_grade_dims(int N) {
  std::vector<long> s{1};
  s.resize(N + 1, 0);
  auto mul_factor = [&](int i, int sign4) {
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<long> t(N + 1, 0);
      if (sign4 > 0) {
        for (int a = 0; a <= N; ++a) {
          t[a] += s[a];
          if (a + i <= N) t[a + i] += s[a];
        }
      } else {
        // multiply by 1/(1-q^i) = 1 + q^i + q^{2i} + ...
        for (int a = 0; a <= N; ++a) {
          long acc = 0;
          for (int b = a; b >= 0; b -= i) acc += s[b];
          t[a] = acc;
        }
      }
      s = t;
    }
  };
  for (int i = 1; i <= N; ++i) {
    mul_factor(i, +1);
    mul_factor(i, -1);
  }
  for (auto& c : s) c *= 4;
  return s;
}

}  // namespace

TEST_CASE("graded verma dimensions match the generating function") {
  AffWeight w{rat(1, 3), rat(1), rat(0), rat(1, 2), LevelPair(Rat(1), Rat(1))};
  InducedModule gv = build_verma(w, 3);
  auto oracle = verma_grade_dims(3);
  CHECK(oracle[0] == 4);
  CHECK(oracle[1] == 32);
  CHECK(oracle[2] == 160);
  for (int g = 0; g <= 3; ++g) CHECK(long(gv.states_of_grade(g).size()) == oracle[g]);
}

TEST_CASE("weight multiplicities at the first three grades") {
  AffWeight w{rat(0), rat(0), rat(0), rat(0), LevelPair(Rat(1), Rat(1))};
  InducedModule gv = build_verma(w, 2);
  auto mult = multiplicities(gv, w.n);
  auto row = [&](int g, std::initializer_list<long> want) {
    // offsets descend from +(g+1) about the palindromic centre
    long off = g + 1;
    for (long m : want) {
      CHECK(mult[{g, Rat(off)}] == m);
      --off;
    }
  };
  row(0, {1, 2, 1});
  row(1, {2, 8, 12, 8, 2});
  row(2, {1, 12, 39, 56, 39, 12, 1});
}

TEST_CASE("multiplicities are palindromic in the N0 eigenvalue") {
  AffWeight w{rat(2, 3), rat(1), rat(1, 2), rat(1, 3), LevelPair(Rat(1), rat(2))};
  InducedModule gv = build_verma(w, 3);
  auto mult = multiplicities(gv, w.n);
  for (const auto& [key, m] : mult) CHECK(mult.at({key.first, -key.second}) == m);
}

TEST_CASE("apply_mode basics") {
  AffWeight w{rat(1, 2), rat(2), rat(1, 3), rat(3, 4), LevelPair(rat(3, 2), Rat(1))};
  InducedModule gv = build_verma(w, 2);
  auto hws = gv.basis_state(0);

  SECTION("raisers annihilate the hws") {
    CHECK(gv.apply_mode(gPsiP, 0, hws).empty());
    CHECK(gv.apply_mode(gtPsiP, 0, hws).empty());
    CHECK(gv.apply_mode(gN, 1, hws).empty());
    CHECK(gv.apply_mode(gtPsiM, 2, hws).empty());
  }
  SECTION("E0 is central with a fixed eigenvalue") {
    for (int g = 0; g <= 2; ++g)
      for (int s : gv.states_of_grade(g)) {
        auto r = gv.apply_mode(gE, 0, gv.basis_state(s));
        REQUIRE(r.size() == 1);
        CHECK(r.at(s) == w.e);
      }
  }
  SECTION("{psi+_1, tpsi-_-1} = tE_0 + tk on all grade <= 1 states") {
    for (int g = 0; g <= 1; ++g)
      for (int s : gv.states_of_grade(g)) {
        auto st = gv.basis_state(s);
        auto a = gv.apply_mode(gPsiP, 1, gv.apply_mode(gtPsiM, -1, st));
        auto b = gv.apply_mode(gtPsiM, -1, gv.apply_mode(gPsiP, 1, st));
        InducedModule::State sum = a;
        for (auto& [j, c] : b) {
          sum[j] += c;
          if (sum[j] == 0) sum.erase(j);
        }
        InducedModule::State want;
        Rat coeff = w.te + gv.levels().tk;
        if (coeff != 0) want[s] = coeff;
        CHECK(sum == want);
      }
  }
}

TEST_CASE("apply_mode composition agrees with affine_bracket on random pairs") {
  AffWeight w{rat(1, 3), rat(-1), rat(1), rat(2, 5), LevelPair(rat(2), rat(1, 2))};
  InducedModule gv = build_verma(w, 3);
  const auto& spec = gv.base();
  std::uniform_int_distribution<int> gen_d(0, 7), mode_d(-2, 2), grade_d(0, 1);
  int checked = 0;
  while (checked < 100) {
    int g1 = gen_d(rng), g2 = gen_d(rng);
    long n1 = mode_d(rng), n2 = mode_d(rng);
    int gr = grade_d(rng);
    // keep every intermediate grade within the cutoff
    if (gr - n1 - n2 < 0 || gr - n1 - n2 > 3) continue;
    if (gr - n1 < 0 || gr - n1 > 3 || gr - n2 < 0 || gr - n2 > 3) continue;
    const auto& states = gv.states_of_grade(gr);
    std::uniform_int_distribution<size_t> pick(0, states.size() - 1);
    auto st = gv.basis_state(states[pick(rng)]);

    auto xy = gv.apply_mode(g1, n1, gv.apply_mode(g2, n2, st));
    auto yx = gv.apply_mode(g2, n2, gv.apply_mode(g1, n1, st));
    int koszul = (gv.parity_of_gen(g1) && gv.parity_of_gen(g2)) ? 1 : -1;
    InducedModule::State comm = xy;
    for (auto& [j, c] : yx) {
      comm[j] += c * Rat(koszul);
      if (comm[j] == 0) comm.erase(j);
    }
    ModeElement x{g1 % 4, g1 >= 4, n1}, y{g2 % 4, g2 >= 4, n2};
    AffineBracket br = affine_bracket(spec.dim() == 4 ? spec : gl11(), x, y, gv.levels());
    InducedModule::State want;
    for (const auto& [m, coeff] : br.terms) {
      auto t = gv.apply_mode(m.base + (m.tilde ? 4 : 0), m.mode, st);
      for (auto& [j, c] : t) {
        want[j] += c * coeff;
        if (want[j] == 0) want.erase(j);
      }
    }
    if (br.central != 0)
      for (auto& [j, c] : st) {
        want[j] += c * br.central;
        if (want[j] == 0) want.erase(j);
      }
    CHECK(comm == want);
    ++checked;
  }
}

TEST_CASE("singular vectors of te/tk = 1/2 vermas are absent at grades 1..3") {
  AffWeight w{rat(1, 4), rat(2, 3), rat(-1), rat(1, 2), LevelPair(Rat(1), Rat(1))};
  InducedModule gv = build_verma(w, 3);
  for (int g = 0; g <= 3; ++g) CHECK(singular_vectors(gv, g).empty());
}

TEST_CASE("grade-0 singular vectors for te = 0") {
  LevelPair lv(Rat(1), Rat(1));
  SECTION("e != 0: exactly the tpsi-_0 descendant") {
    AffWeight w{rat(2), rat(3), rat(1, 2), Rat(0), lv};
    InducedModule gv = build_verma(w, 1);
    auto sv = singular_vectors(gv, 0);
    REQUIRE(sv.size() == 1);
    CHECK_FALSE(sv[0].generalized);
    CHECK(sv[0].n0 == w.n - 1);
    // the vector is tpsi-_0 |v>, i.e. the zero-sector state 2 of the finite Verma
    REQUIRE(sv[0].vec.size() == 1);
    CHECK(sv[0].vec.count(2) == 1);
  }
  SECTION("e = 0: psi-_0 |v> generalized; tpsi-_0 |v> and tpsi-_0 psi-_0 |v> singular") {
    AffWeight w{rat(2), Rat(0), rat(1, 2), Rat(0), lv};
    InducedModule gv = build_verma(w, 1);
    auto sv = singular_vectors(gv, 0);
    REQUIRE(sv.size() == 3);
    int count_gen = 0, count_sing = 0;
    bool saw_psi_descendant = false;
    for (const auto& v : sv) {
      if (v.generalized) {
        ++count_gen;
        CHECK(v.n0 == w.n - 1);
        CHECK(v.vec.count(1) == 1);
        saw_psi_descendant = true;
      } else {
        ++count_sing;
      }
    }
    CHECK(count_gen == 1);
    CHECK(count_sing == 2);
    CHECK(saw_psi_descendant);
  }
}

TEST_CASE("reduced raising set matches the full set at cutoff 3 (completeness)") {
  std::vector<AffWeight> samples = {
      {rat(1, 4), rat(2, 3), rat(-1), rat(1, 2), LevelPair(Rat(1), Rat(1))},
      {rat(2), rat(3), rat(1, 2), Rat(0), LevelPair(Rat(1), Rat(1))},
      {rat(0), rat(0), rat(0), rat(1, 3), LevelPair(rat(2), rat(3))},
  };
  for (const auto& w : samples) {
    InducedModule gv = build_verma(w, 3);
    for (int g = 0; g <= 3; ++g) {
      auto reduced = singular_vectors(gv, g, false);
      auto full = singular_vectors(gv, g, true);
      REQUIRE(reduced.size() == full.size());
      for (size_t i = 0; i < reduced.size(); ++i) {
        CHECK(reduced[i].n0 == full[i].n0);
        CHECK(reduced[i].generalized == full[i].generalized);
      }
    }
  }
}

TEST_CASE("random typical vermas have no singular vectors at grades <= 3 (evidence, not proof)") {
  int done = 0;
  while (done < 10) {
    Rat te = random_rat(-4, 4, 5);
    LevelPair lv(random_rat(1, 3, 2), random_rat(1, 3, 2));
    if (is_integer(te / lv.tk)) continue;
    AffWeight w{random_rat(), random_rat(), random_rat(), te, lv};
    InducedModule gv = build_verma(w, 3);
    for (int g = 0; g <= 3; ++g) {
      auto sv = singular_vectors(gv, g);
      CHECK(sv.empty());
      // Eq. Constraint guard: anything found at grade m >= 1 must sit at |nu| <= m+1
      for (const auto& v : sv)
        if (v.grade >= 1) {
          Rat off = v.n0 - w.n;
          CHECK(abs(off) <= Rat(v.grade + 1));
        }
    }
    ++done;
  }
}

TEST_CASE("classification of affine weights") {
  LevelPair lv(rat(2), rat(3));
  SECTION("typical when te/tk is not an integer") {
    AffClassLabel l = classify({rat(1), rat(5), rat(0), rat(1), lv});  // te/tk = 1/3
    CHECK(l.kind == AffKind::Typical);
    CHECK(l.flow == 0);
  }
  SECTION("semitypical at te = 0, e != 0") {
    AffClassLabel l = classify({rat(1), rat(5), rat(0), rat(0), lv});
    CHECK(l.kind == AffKind::Semitypical);
    CHECK(l.flow == 0);
    CHECK(l.n == rat(1));
  }
  SECTION("atypical at e/k = te/tk = 2") {
    AffClassLabel l = classify({rat(1), rat(4), rat(0), rat(6), lv});
    CHECK(l.kind == AffKind::Atypical);
    CHECK(l.flow == 2);
    // unflowed base label: n + 2 ell
    CHECK(l.n == rat(5));
    CHECK(l.e == 0);
  }
  SECTION("k = 0 with integral te/tk is unsupported") {
    LevelPair crit(Rat(0), Rat(1));
    CHECK_THROWS_AS(classify({rat(1), rat(1), rat(0), rat(2), crit}), std::invalid_argument);
    CHECK(classify({rat(1), rat(1), rat(0), rat(1, 2), crit}).kind == AffKind::Typical);
  }
}

TEST_CASE("spectral flow of weights and labels") {
  LevelPair lv(rat(3), rat(2));
  AffWeight w{rat(1), rat(2), rat(-1), rat(1, 3), lv};
  SECTION("one unit of flow shifts e and te by the levels") {
    AffWeight f = spectral_flow_weight(w, 1);
    CHECK(f.n == w.n);
    CHECK(f.e == w.e + lv.k);
    CHECK(f.tn == w.tn);
    CHECK(f.te == w.te + lv.tk);
    CHECK(spectral_flow_dim_shift(w, 1) == w.n);
  }
  SECTION("zero flow is the identity") {
    AffWeight f = spectral_flow_weight(w, 0);
    CHECK(f.e == w.e);
    CHECK(f.te == w.te);
    CHECK(spectral_flow_dim_shift(w, 0) == 0);
  }
  SECTION("label flow of typicals: n -> n - 2 ell with e, te shifted") {
    AffClassLabel t{AffKind::Typical, rat(1), rat(2), rat(-1), rat(1, 3), 0, lv};
    AffClassLabel f = spectral_flow_label(t, 2);
    CHECK(f.n == rat(-3));
    CHECK(f.e == rat(8));
    CHECK(f.te == rat(1, 3) + 2 * lv.tk);
  }
  SECTION("flows of S/A labels compose additively") {
    AffClassLabel s{AffKind::Semitypical, rat(1), rat(2), rat(-1), Rat(0), 1, lv};
    CHECK(spectral_flow_label(s, 2).flow == 3);
    CHECK(spectral_flow_label(spectral_flow_label(s, 2), -2) == s);
  }
}

TEST_CASE("conformal dimension formula") {
  SECTION("te = 0 reduces to tn e / tk") {
    LevelPair lv(rat(7), rat(3));
    AffWeight w{rat(5), rat(2), rat(9), Rat(0), lv};
    CHECK(conformal_dim(w) == w.tn * w.e / lv.tk);
  }
  SECTION("all-zero weight has dimension 0") {
    CHECK(conformal_dim({Rat(0), Rat(0), Rat(0), Rat(0), LevelPair(rat(2), rat(5))}) == 0);
  }
  SECTION("worked value: (1,2,3,1) at k = tk = 1 gives 5") {
    CHECK(conformal_dim({rat(1), rat(2), rat(3), rat(1), LevelPair(Rat(1), Rat(1))}) == rat(5));
  }
  SECTION("valid at k = 0 (no division by k)") {
    CHECK_NOTHROW(conformal_dim({rat(1), rat(2), rat(3), rat(1, 2), LevelPair(Rat(0), Rat(1))}));
  }
}

TEST_CASE("cutoff resource guard") {
  AffWeight w{rat(0), rat(0), rat(0), rat(0), LevelPair(Rat(1), Rat(1))};
  CHECK_THROWS_AS(build_verma(w, cutoff_ceiling() + 1), std::invalid_argument);
}
