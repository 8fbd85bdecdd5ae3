#include <catch2/catch.hpp>

#include "takiff/superalgebra.hpp"

using namespace takiff;

TEST_CASE("gl(1|1) bracket table") {
  auto g = gl11();
  int N = g.index_of("N"), E = g.index_of("E"), psip = g.index_of("psi+"), psim = g.index_of("psi-");

  // [N, psi+] = psi+
  CHECK(g.bracket(N, psip) == Combo{{psip, Rat(1)}});
  // E central
  CHECK(g.bracket(E, psip).empty());
  CHECK(g.bracket(E, N).empty());
  // bracket(x, x) = 0 for even x
  CHECK(g.bracket(N, N).empty());
  // {psi+, psi-} = E both orders (odd-odd symmetric)
  CHECK(g.bracket(psip, psim) == Combo{{E, Rat(1)}});
  CHECK(g.bracket(psim, psip) == Combo{{E, Rat(1)}});
  CHECK_THROWS_AS(g.bracket(0, 17), std::out_of_range);
}

TEST_CASE("check_jacobi passes on builtins and their doubles") {
  for (const auto& g : {gl11(), sl2(), u1()}) {
    CHECK(check_jacobi(g).pass);
    CHECK(check_jacobi(takiff_extend(g)).pass);
  }
}

TEST_CASE("abelian spec of any size passes jacobi") {
  for (int n : {1, 3, 5}) {
    std::vector<BasisElement> basis;
    for (int i = 0; i < n; ++i) basis.push_back({i, "a" + std::to_string(i), Parity::even});
    auto s = make_superalgebra(basis, {}, RatMat(n, n));
    CHECK(check_jacobi(s).pass);
  }
}

TEST_CASE("corrupted gl(1|1) fails jacobi at (psi+,psi-,psi+)") {
  // corrupt {psi+, psi-} = N instead of E; hand expansion of the Leibniz form
  // gives [psi+,[psi-,psi+]] - [[psi+,psi-],psi+] + [psi-,[psi+,psi+]] = -2 psi+.
  std::vector<BasisElement> basis = {
      {0, "N", Parity::even}, {1, "E", Parity::even}, {2, "psi+", Parity::odd}, {3, "psi-", Parity::odd}};
  std::map<std::pair<int, int>, Combo> br;
  br[{0, 2}] = {{2, Rat(1)}};
  br[{0, 3}] = {{3, Rat(-1)}};
  br[{2, 3}] = {{0, Rat(1)}};  // corrupted
  auto s = make_superalgebra(basis, br, RatMat(4, 4));
  auto rep = check_jacobi(s);
  REQUIRE_FALSE(rep.pass);
  // the spec's quoted triple fails...
  CHECK(jacobi_residual(s, 2, 3, 2) == Combo{{2, Rat(-2)}});
  // ...and the reported first violation (lexicographic scan) involves only psi's
  CHECK(rep.a == 2);
  CHECK(rep.b == 2);
  CHECK(rep.c == 3);
  CHECK_FALSE(rep.residual.empty());
}

TEST_CASE("takiff double of sl2") {
  auto d = takiff_extend(sl2());
  CHECK(d.dim() == 6);
  int E = d.index_of("E"), tE = d.index_of("tE"), H = d.index_of("H"), tH = d.index_of("tH");
  // [tH, E] = 2 tE = [H, tE]
  CHECK(d.bracket(tH, E) == Combo{{tE, Rat(2)}});
  CHECK(d.bracket(H, tE) == Combo{{tE, Rat(2)}});
  // tilde span is an abelian ideal
  for (int a = 0; a < 6; ++a)
    for (int b = 3; b < 6; ++b)
      for (const auto& [c, coeff] : d.bracket(a, b)) {
        (void)coeff;
        CHECK(c >= 3);
      }
  CHECK(check_jacobi(d).pass);
}

TEST_CASE("takiff double of gl(1|1)") {
  auto d = takiff_extend(gl11());
  int psip = d.index_of("psi+"), tpsim = d.index_of("tpsi-"), tpsip = d.index_of("tpsi+"),
      psim = d.index_of("psi-"), tE = d.index_of("tE");
  CHECK(d.bracket(psip, tpsim) == Combo{{tE, Rat(1)}});
  CHECK(d.bracket(tpsip, psim) == Combo{{tE, Rat(1)}});
  CHECK(d.bracket(tpsip, tpsim).empty());
  // parity of the partner matches
  CHECK(d.basis[tpsip].parity == Parity::odd);
  CHECK(d.basis[tE].parity == Parity::even);
}

TEST_CASE("takiff double of u(1) is abelian") {
  auto d = takiff_extend(u1());
  CHECK(d.dim() == 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(d.bracket(a, b).empty());
}

TEST_CASE("affine bracket of the Takiff gl(1|1) commutation table") {
  auto g = gl11();
  LevelPair lv(rat(3, 2), rat(5, 7));
  int N = 0, E = 1, psip = 2, psim = 3;

  SECTION("[psi+_r, tpsi-_s] = tE_{r+s} + r tk delta") {
    auto b = affine_bracket(g, {psip, false, 2}, {psim, true, -2}, lv);
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms[0].first == ModeElement{E, true, 0});
    CHECK(b.terms[0].second == 1);
    CHECK(b.central == Rat(2) * lv.tk);
    auto b2 = affine_bracket(g, {psip, false, 2}, {psim, true, -1}, lv);
    CHECK(b2.central == 0);
    REQUIRE(b2.terms.size() == 1);
    CHECK(b2.terms[0].first == ModeElement{E, true, 1});
  }
  SECTION("[N_r, E_s] = r k delta") {
    auto b = affine_bracket(g, {N, false, 3}, {E, false, -3}, lv);
    CHECK(b.terms.empty());
    CHECK(b.central == Rat(3) * lv.k);
  }
  SECTION("[tE_r, tE_s] = 0 and tilde-tilde pairing vanishes") {
    auto b = affine_bracket(g, {E, true, 1}, {E, true, -1}, lv);
    CHECK(b.terms.empty());
    CHECK(b.central == 0);
  }
  SECTION("mode-0 restriction reproduces the finite bracket") {
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        auto b = affine_bracket(g, {a, false, 0}, {c, false, 0}, lv);
        CHECK(b.central == 0);
        Combo got;
        for (auto& [m, coeff] : b.terms) {
          CHECK_FALSE(m.tilde);
          CHECK(m.mode == 0);
          got[m.base] = coeff;
        }
        CHECK(got == g.bracket(a, c));
      }
  }
  SECTION("graded antisymmetry including central terms") {
    std::vector<ModeElement> sample = {{0, false, 1}, {1, false, -1}, {2, true, 2}, {3, false, -2},
                                       {2, false, 0}, {3, true, -1},  {1, true, 1}};
    for (const auto& x : sample)
      for (const auto& y : sample) {
        auto xy = affine_bracket(g, x, y, lv);
        auto yx = affine_bracket(g, y, x, lv);
        int sign = (g.parity(x.base) && g.parity(y.base)) ? 1 : -1;  // -(-1)^{pq}
        std::map<std::pair<std::pair<int, int>, long>, Rat> lhs, rhs;
        for (auto& [m, c] : xy.terms) lhs[{{m.base, m.tilde}, m.mode}] = c;
        for (auto& [m, c] : yx.terms) rhs[{{m.base, m.tilde}, m.mode}] = c * Rat(sign);
        CHECK(lhs == rhs);
        CHECK(xy.central == yx.central * Rat(sign));
      }
  }
}

TEST_CASE("LevelPair rejects critical tk") {
  CHECK_THROWS_AS(LevelPair(Rat(1), Rat(0)), std::invalid_argument);
}

TEST_CASE("supertrace form of the gl(1|1) defining rep") {
  auto g = gl11();
  auto [rho, par] = gl11_defining_rep();
  RatMat kappa = supertrace_form(g, rho, par);
  CHECK(kappa.at(0, 1) == 1);   // kappa(N, E) = 1
  CHECK(kappa.at(2, 3) == 1);   // kappa(psi+, psi-) = 1
  CHECK(kappa.at(3, 2) == -1);  // kappa(psi-, psi+) = -1
  CHECK(kappa.at(1, 1) == 0);   // kappa(E, E) = 0
  CHECK(kappa == g.form);       // builtin form is exactly the supertrace form

  // evenness and supersymmetry of the output
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (g.parity(a) != g.parity(b)) CHECK(kappa.at(a, b) == 0);
      CHECK(kappa.at(a, b) == kappa.at(b, a) * Rat(g.koszul(a, b)));
    }

  // violated relations are rejected
  auto bad = rho;
  bad[2].at(0, 1) = 2;
  CHECK_THROWS_AS(supertrace_form(g, bad, par), std::invalid_argument);
}

TEST_CASE("takiff_extend validates input") {
  std::vector<BasisElement> basis = {
      {0, "N", Parity::even}, {1, "E", Parity::even}, {2, "psi+", Parity::odd}, {3, "psi-", Parity::odd}};
  std::map<std::pair<int, int>, Combo> br;
  br[{0, 2}] = {{2, Rat(1)}};
  br[{0, 3}] = {{3, Rat(-1)}};
  br[{2, 3}] = {{0, Rat(1)}};
  auto bad = make_superalgebra(basis, br, RatMat(4, 4));
  CHECK_THROWS_AS(takiff_extend(bad), std::invalid_argument);
}
