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
// Characters and supercharacters of affine Takiff gl(1|1) modules: product
// formulas, alternating Verma resolutions, theta/eta expansions, spectral-flow
// substitution, brute-force traces over truncated modules, and numerical
// evaluation at modular points.

#pragma once

#include <complex>
#include <vector>

#include "takiff/affine.hpp"
#include "takiff/series.hpp"

namespace takiff {

namespace detail {

// multiplies s by (1 + sign z^dz q^i)^pow, truncated at s.cutoff
inline FormalSeries mul_binomial(const FormalSeries& s, int sign, long dz, int i, int pow) {
  FormalSeries f = series_one(s.cutoff);
  f.add_to(dz, i, sign);
  FormalSeries out = s;
  for (int t = 0; t < pow; ++t) out = series_mul(out, f);
  return out;
}

// multiplies s by (1 - q^i)^{-pow}
inline FormalSeries mul_geometric(const FormalSeries& s, int i, int pow) {
  FormalSeries f = series_one(s.cutoff);
  for (int j = i; j <= s.cutoff; j += i) f.set(0, j, 1);
  FormalSeries out = s;
  for (int t = 0; t < pow; ++t) out = series_mul(out, f);
  return out;
}

}  // namespace detail

// Character of the Verma / typical module with average-N label weight w:
//   z^{n+1} q^{Delta} prod_i (1+z q^i)^2 (1+z^{-1} q^{i-1})^2 / (1-q^i)^4.
inline FormalSeries typical_character(const AffWeight& w, int cutoff) {
  FormalSeries s = series_one(cutoff, w.n + 1, conformal_dim(w));
  for (int i = 1; i <= cutoff + 1; ++i) {
    s = detail::mul_binomial(s, +1, +1, i, 2);
    s = detail::mul_binomial(s, +1, -1, i - 1, 2);
    if (i <= cutoff) s = detail::mul_geometric(s, i, 4);
  }
  return s;
}

// Flow-zero semitypical character (label n is the average of the two
// zero-grade N0 eigenvalues):
//   z^{n+1/2} q^{tn e/tk} prod_i (1+z q^i)^2 (1+z^{-1} q^i)(1+z^{-1} q^{i-1}) / (1-q^i)^4.
inline FormalSeries semitypical_character_direct(const Rat& n, const Rat& e, const Rat& tn,
                                                 const LevelPair& lv, int cutoff) {
  FormalSeries s = series_one(cutoff, n + rat(1, 2), tn * e / lv.tk);
  for (int i = 1; i <= cutoff + 1; ++i) {
    s = detail::mul_binomial(s, +1, +1, i, 2);
    s = detail::mul_binomial(s, +1, -1, i, 1);
    s = detail::mul_binomial(s, +1, -1, i - 1, 1);
    if (i <= cutoff) s = detail::mul_geometric(s, i, 4);
  }
  return s;
}

// Flow-zero atypical character:
//   z^n prod_i (1+z q^i)^2 (1+z^{-1} q^i)^2 / (1-q^i)^4.
inline FormalSeries atypical_character_direct(const Rat& n, int cutoff) {
  FormalSeries s = series_one(cutoff, n, Rat(0));
  for (int i = 1; i <= cutoff; ++i) {
    s = detail::mul_binomial(s, +1, +1, i, 2);
    s = detail::mul_binomial(s, +1, -1, i, 2);
    s = detail::mul_geometric(s, i, 4);
  }
  return s;
}

// Alternating Verma-resolution character of a flow-zero semitypical or
// atypical label, exact on the z-window [win_lo, win_hi] relative to the
// label's natural z-offset. Terms beyond the included range provably do not
// touch the window (each drops the top z-exponent by one).
inline FormalSeries resolution_character(const AffClassLabel& l, int cutoff, long win_lo,
                                         long win_hi) {
  if (l.flow != 0) throw std::invalid_argument("resolution_character expects a flow-zero label");
  bool atyp = l.kind == AffKind::Atypical;
  if (!atyp && l.kind != AffKind::Semitypical)
    throw std::invalid_argument("resolution_character expects S or A kind");
  // m-th Verma label: n - 1/2 - m (S, multiplicity 1) or n - 1 - m (A, mult m+1)
  long m_max = cutoff - win_lo + 1;
  FormalSeries acc;
  bool first = true;
  for (long m = 0; m <= m_max; ++m) {
    Rat nv = atyp ? l.n - 1 - Rat(m) : l.n - rat(1, 2) - Rat(m);
    FormalSeries term = typical_character({nv, l.e, l.tn, Rat(0), l.levels}, cutoff);
    Int mult = (m % 2 == 0 ? Int(1) : Int(-1)) * (atyp ? Int(m + 1) : Int(1));
    if (first) {
      acc = scale(term, mult);
      first = false;
    } else {
      acc = series_add(acc, term, mult);
    }
  }
  // window relative to the label's anchor (n + 1/2 for S, n for A)
  Rat anchor = atyp ? l.n : l.n + rat(1, 2);
  long shift = to_long(anchor - acc.z_offset);
  return restrict_window(std::move(acc), win_lo + shift, win_hi + shift);
}

// Character of any class label; semitypical/atypical flow-zero characters are
// computed from the product formula and asserted against the resolution sum,
// nonzero flows are reached by the exact substitution z -> z q^flow.
inline FormalSeries character(const AffClassLabel& label, int cutoff) {
  AffClassLabel l = normalize_label(label);
  switch (l.kind) {
    case AffKind::Typical:
    case AffKind::VermaClass:
      return typical_character({l.n, l.e, l.tn, l.te, l.levels}, cutoff);
    case AffKind::Semitypical:
    case AffKind::Atypical: {
      bool atyp = l.kind == AffKind::Atypical;
      // flowing by ell costs ell * window of q-depth; compute the base deeper
      long absl = l.flow < 0 ? -l.flow : l.flow;
      int base_cut = int(cutoff + absl * (cutoff + 2));
      FormalSeries direct = atyp ? atypical_character_direct(l.n, base_cut)
                                 : semitypical_character_direct(l.n, l.e, l.tn, l.levels, base_cut);
      AffClassLabel base = l;
      base.flow = 0;
      FormalSeries res = resolution_character(base, cutoff, -(cutoff + 2), cutoff);
      if (!series_equal(direct, res))
        throw std::logic_error("resolution sum disagrees with the product formula");
      if (l.flow == 0) return direct;
      return spectral_flow_series(direct, l.flow, -(cutoff + 2), cutoff + 2);
    }
  }
  throw std::invalid_argument("bad label");
}

// Exponent record of the variables that multiply a supercharacter as pure
// prefactors: x^k xt^tk y^{E0} yt^{tE0} zt^{tN0}.
struct CharPrefactor {
  Rat x, tx, y, ty, tz;
  bool operator==(const CharPrefactor& o) const = default;
};

struct Supercharacter {
  CharPrefactor pref;
  FormalSeries series;
};

// Supercharacter: z -> -z sign weave on the integer part of the character
// (highest-weight states are even; a state's fermion parity is its relative
// z-exponent mod 2), with the neglected variables carried exactly.
inline Supercharacter supercharacter(const AffClassLabel& l, int cutoff) {
  AffWeight w = label_weight(l);
  Supercharacter out;
  out.pref = {l.levels.k, l.levels.tk, w.e, w.te, w.tn};
  out.series = weave_signs(character(l, cutoff));
  return out;
}

// ---------------------------------------------------------------------------
// Theta and eta expansions. Convention: theta1 carries the phase e^{i pi/4}
// relative to the plain triple product, i.e.
//   theta1(z;q) = e^{i pi/4} q^{1/8} (z^{1/2} - z^{-1/2})
//                 prod_i (1-q^i)(1-z q^i)(1-z^{-1} q^i),
// so theta1^2 = -i q^{1/4} (z - 2 + z^{-1}) prod_i (...)^2 with the -i kept
// as an exact phase. This is the normalization in which the typical
// supercharacter equals i theta1^2 / eta^6 times its prefactor on the nose.

// (z^{1/2} - z^{-1/2}) prod_{i>=1} (1-q^i)(1-z q^i)(1-z^{-1} q^i)
inline FormalSeries theta1_product_part(int cutoff) {
  FormalSeries s;
  s.cutoff = cutoff;
  s.z_offset = rat(-1, 2);
  s.set(1, 0, 1);
  s.set(0, 0, -1);
  for (int i = 1; i <= cutoff; ++i) {
    s = detail::mul_binomial(s, -1, 0, i, 1);
    s = detail::mul_binomial(s, -1, +1, i, 1);
    s = detail::mul_binomial(s, -1, -1, i, 1);
  }
  return s;
}

inline PhasedSeries theta1_sq(int cutoff) {
  FormalSeries part = theta1_product_part(cutoff);
  return {3, shift(series_mul(part, part), Rat(0), rat(1, 4))};
}

// 1 / eta(q)^6 = q^{-1/4} prod (1-q^i)^{-6}
inline PhasedSeries eta_inv6(int cutoff) {
  FormalSeries s = series_one(cutoff, Rat(0), rat(-1, 4));
  for (int i = 1; i <= cutoff; ++i) s = detail::mul_geometric(s, i, 6);
  return {0, s};
}

// theta1(z;q)^2 / eta(q)^6 with the exact phase record.
inline PhasedSeries theta1_sq_over_eta6(int cutoff) {
  PhasedSeries t = theta1_sq(cutoff);
  PhasedSeries e = eta_inv6(cutoff);
  return {(t.i_pow + e.i_pow) % 4, series_mul(t.series, e.series)};
}

// ---------------------------------------------------------------------------
// Brute-force traces over truncated modules

// z^{N0} q^{L0} trace of a graded module, anchored at the hws data.
inline FormalSeries brute_force_character(const InducedModule& gv, const Rat& n_hws,
                                          const Rat& delta_hws) {
  FormalSeries s;
  s.cutoff = gv.cutoff();
  s.z_offset = n_hws;
  s.q_offset = delta_hws;
  for (int g = 0; g <= gv.cutoff(); ++g)
    for (int st : gv.states_of_grade(g)) s.add_to(to_long(gv.n0_of_state(st) - n_hws), g, 1);
  return s;
}

// Weight-space dimensions of the submodule generated by the given seed states.
// The seeds must be annihilated by the raising subalgebra (possibly up to the
// nilpotent part of tN0, as for generalized singular vectors), so the closure
// under lowering and zero modes is the full submodule.
inline std::map<std::pair<int, Rat>, int> submodule_dims(
    const InducedModule& gv, const std::vector<InducedModule::State>& seeds) {
  struct Space {
    std::vector<int> states;
    std::map<int, int> pos;
    SpanBasis span{0};
  };
  std::map<std::pair<int, Rat>, Space> spaces;
  for (int g = 0; g <= gv.cutoff(); ++g)
    for (int st : gv.states_of_grade(g)) {
      auto& sp = spaces[{g, gv.n0_of_state(st)}];
      sp.pos[st] = int(sp.states.size());
      sp.states.push_back(st);
    }
  for (auto& [key, sp] : spaces) sp.span = SpanBasis(int(sp.states.size()));

  auto key_of = [&](int st) { return std::make_pair(gv.grade_of_state(st), gv.n0_of_state(st)); };
  auto to_coords = [&](const InducedModule::State& v) {
    auto& sp = spaces[key_of(v.begin()->first)];
    RatVec coords(sp.states.size());
    for (const auto& [st, c] : v) coords[sp.pos.at(st)] = c;
    return std::pair<Space*, RatVec>(&sp, std::move(coords));
  };

  std::vector<InducedModule::State> frontier;
  for (const auto& s : seeds) {
    if (s.empty()) continue;
    auto [sp, coords] = to_coords(s);
    if (sp->span.insert(coords)) frontier.push_back(s);
  }
  while (!frontier.empty()) {
    std::vector<InducedModule::State> next;
    for (const auto& v : frontier)
      for (int gen = 0; gen < gv.doubled_dim(); ++gen)
        for (long n = -gv.cutoff(); n <= 0; ++n) {
          int g = gv.grade_of_state(v.begin()->first);
          if (g - n > gv.cutoff()) continue;
          auto img = gv.apply_mode(gen, n, v);
          if (img.empty()) continue;
          auto [sp, coords] = to_coords(img);
          if (sp->span.insert(coords)) next.push_back(img);
        }
    frontier = std::move(next);
  }
  std::map<std::pair<int, Rat>, int> dims;
  for (auto& [key, sp] : spaces)
    if (sp.span.size() > 0) dims[key] = sp.span.size();
  return dims;
}

// Character of the quotient of a Verma by the submodule the seeds generate.
inline FormalSeries quotient_character(const InducedModule& gv,
                                       const std::vector<InducedModule::State>& seeds,
                                       const Rat& n_hws, const Rat& delta_hws) {
  FormalSeries s = brute_force_character(gv, n_hws, delta_hws);
  for (const auto& [key, d] : submodule_dims(gv, seeds))
    s.add_to(to_long(key.second - n_hws), key.first, Int(-d));
  return s;
}

// ---------------------------------------------------------------------------
// Numerical evaluation

struct ModularPoint {
  std::complex<double> tau, nu, mu, tmu, tnu, t, tt;
};

struct EvalResult {
  std::complex<double> value;
  double tail_bound = 0;  // estimated truncation error
};

// Evaluates prefactor * series at the point; q = e^{2 pi i tau}, z = e^{2 pi i nu},
// fractional powers resolved through the additive variables. The tail bound
// extrapolates the last rows geometrically.
inline EvalResult eval_at(const Supercharacter& sc, const ModularPoint& p) {
  using cd = std::complex<double>;
  const cd two_pi_i(0.0, 2 * 3.14159265358979323846);
  auto cexp = [&](const cd& x) { return std::exp(two_pi_i * x); };
  const FormalSeries& s = sc.series;
  cd pref = cexp(p.t * rat_double(sc.pref.x) + p.tt * rat_double(sc.pref.tx) +
                 p.mu * rat_double(sc.pref.y) + p.tmu * rat_double(sc.pref.ty) +
                 p.tnu * rat_double(sc.pref.tz));
  cd total = 0;
  std::vector<double> row_mag(s.cutoff + 1, 0.0);
  for (const auto& [k, c] : s.coeff) {
    cd zpow = cexp(p.nu * (rat_double(s.z_offset) + double(k.first)));
    cd qpow = cexp(p.tau * (rat_double(s.q_offset) + double(k.second)));
    double cv = Int(c).convert_to<double>();
    total += cv * zpow * qpow;
    row_mag[k.second] += std::abs(cv * zpow * qpow);
  }
  EvalResult out;
  out.value = pref * total;
  double absq = std::abs(std::exp(two_pi_i * p.tau));
  double ratio = 0;
  for (int b = std::max(1, s.cutoff - 2); b <= s.cutoff; ++b)
    if (row_mag[b - 1] > 0) ratio = std::max(ratio, row_mag[b] / row_mag[b - 1] / absq);
  double rho = ratio * absq;
  double last = s.cutoff >= 0 ? row_mag[s.cutoff] : 0.0;
  out.tail_bound = (rho < 1 && rho > 0) ? std::abs(pref) * last * rho / (1 - rho)
                                        : std::numeric_limits<double>::infinity();
  if (last == 0) out.tail_bound = 0;
  return out;
}

}  // namespace takiff
