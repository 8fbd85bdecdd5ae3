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
// JSON (de)serialization of labels, weights, levels and series for the CLI.
// Rational literals are strings "p/q" throughout.

#pragma once

#include <string>

#include <json.hpp>

#include "takiff/characters.hpp"
#include "takiff/findim.hpp"
#include "takiff/verlinde.hpp"

namespace takiff {

using nlohmann::json;

inline Rat json_rat(const json& j, const char* key, const Rat& fallback = Rat(0)) {
  if (!j.contains(key)) return fallback;
  return parse_rat(j.at(key).get<std::string>());
}

inline LevelPair parse_levels(const json& j) {
  return LevelPair(json_rat(j, "k", Rat(1)), json_rat(j, "tk", Rat(1)));
}

inline json levels_to_json(const LevelPair& lv) {
  return json{{"k", rat_str(lv.k)}, {"tk", rat_str(lv.tk)}};
}

inline AffWeight parse_aff_weight(const json& j, const LevelPair& lv) {
  return {json_rat(j, "n"), json_rat(j, "e"), json_rat(j, "tn"), json_rat(j, "te"), lv};
}

inline json aff_weight_to_json(const AffWeight& w) {
  return json{{"n", rat_str(w.n)}, {"e", rat_str(w.e)}, {"tn", rat_str(w.tn)}, {"te", rat_str(w.te)}};
}

inline FinKind parse_fin_kind(const std::string& s) {
  if (s == "A") return FinKind::Atypical;
  if (s == "S") return FinKind::Semitypical;
  if (s == "T") return FinKind::Typical;
  if (s == "V") return FinKind::VermaReducible;
  if (s == "P") return FinKind::Projectivelike;
  if (s == "GenTyp2") return FinKind::GenTyp;
  throw std::invalid_argument("unknown class kind '" + s + "'");
}

inline ClassLabel parse_fin_label(const std::string& kind, const json& w) {
  ClassLabel l;
  l.kind = parse_fin_kind(kind);
  l.weight = {json_rat(w, "n"), json_rat(w, "e"), json_rat(w, "tn"), json_rat(w, "te")};
  if (l.kind == FinKind::GenTyp) l.gentyp_m = 2;
  return l;
}

inline json fin_label_to_json(const ClassLabel& l) {
  json j;
  j["kind"] = kind_str(l.kind);
  if (l.kind == FinKind::GenTyp) j["m"] = l.gentyp_m;
  j["n"] = rat_str(l.weight.n);
  j["e"] = rat_str(l.weight.e);
  j["tn"] = rat_str(l.weight.tn);
  j["te"] = rat_str(l.weight.te);
  return j;
}

inline AffKind parse_aff_kind(const std::string& s) {
  if (s == "A") return AffKind::Atypical;
  if (s == "S") return AffKind::Semitypical;
  if (s == "T") return AffKind::Typical;
  if (s == "V") return AffKind::VermaClass;
  throw std::invalid_argument("unknown affine class kind '" + s + "'");
}

inline AffClassLabel parse_aff_label(const json& j) {
  LevelPair lv = parse_levels(j.count("levels") ? j.at("levels") : json::object());
  AffClassLabel l{parse_aff_kind(j.at("kind").get<std::string>()),
                  json_rat(j, "n"),
                  json_rat(j, "e"),
                  json_rat(j, "tn"),
                  json_rat(j, "te"),
                  j.count("flow") ? j.at("flow").get<long>() : 0,
                  lv};
  if ((l.kind == AffKind::Semitypical || l.kind == AffKind::Atypical) && l.te != 0)
    throw std::invalid_argument("S/A labels carry te = 0 with an explicit flow");
  if (l.kind == AffKind::Atypical && l.e != 0)
    throw std::invalid_argument("atypical labels carry e = 0");
  return l;
}

inline json aff_label_to_json(const AffClassLabel& l) {
  json j;
  j["kind"] = aff_kind_str(l.kind);
  j["n"] = rat_str(l.n);
  j["e"] = rat_str(l.e);
  j["tn"] = rat_str(l.tn);
  j["te"] = rat_str(l.te);
  j["flow"] = l.flow;
  j["levels"] = levels_to_json(l.levels);
  return j;
}

inline json series_to_json(const FormalSeries& s) {
  json j;
  j["z_offset"] = rat_str(s.z_offset);
  j["q_offset"] = rat_str(s.q_offset);
  j["cutoff"] = s.cutoff;
  if (s.windowed()) j["z_window"] = {s.z_lo, s.z_hi};
  json terms = json::array();
  for (const auto& [k, c] : s.coeff) terms.push_back({k.first, k.second, c.str()});
  j["terms"] = terms;
  return j;
}

inline json prefactor_to_json(const CharPrefactor& p) {
  return json{{"x", rat_str(p.x)},
              {"tx", rat_str(p.tx)},
              {"y", rat_str(p.y)},
              {"ty", rat_str(p.ty)},
              {"tz", rat_str(p.tz)}};
}

inline json decomposition_to_json(const DecompositionReport& rep, bool full) {
  json j;
  json summands = json::array();
  for (const auto& s : rep.summands) {
    if (s.identified) {
      json e = fin_label_to_json(s.label);
      e["dim"] = s.dim;
      summands.push_back(e);
    } else {
      json e;
      e["kind"] = "unidentified";
      e["dim"] = s.dim;
      e["jordan_tN"] = s.jordan_tN;
      summands.push_back(e);
    }
  }
  j["summands"] = summands;
  json factors = json::array();
  for (const auto& [l, c] : rep.factors) {
    json e = fin_label_to_json(l);
    e["mult"] = c;
    factors.push_back(e);
  }
  j["factors"] = factors;
  j["fully_identified"] = rep.fully_identified;
  if (full) {
    // nothing extra beyond Jordan data, which unidentified entries already carry
    j["full_structure"] = true;
  }
  return j;
}

// "tau=re:im,nu=re:im,..." -> ModularPoint (missing entries default to 0)
inline ModularPoint parse_modular_point(const std::string& s) {
  ModularPoint p{};
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad --eval entry '" + item + "'");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    double re = 0, im = 0;
    auto colon = val.find(':');
    try {
      if (colon == std::string::npos) {
        re = std::stod(val);
      } else {
        re = std::stod(val.substr(0, colon));
        im = std::stod(val.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --eval value '" + val + "'");
    }
    std::complex<double> z(re, im);
    if (key == "tau")
      p.tau = z;
    else if (key == "nu")
      p.nu = z;
    else if (key == "mu")
      p.mu = z;
    else if (key == "tmu")
      p.tmu = z;
    else if (key == "tnu")
      p.tnu = z;
    else if (key == "t")
      p.t = z;
    else if (key == "tt")
      p.tt = z;
    else
      throw std::invalid_argument("unknown --eval variable '" + key + "'");
  }
  if (p.tau.imag() <= 0) throw std::invalid_argument("--eval requires Im tau > 0");
  return p;
}

}  // namespace takiff
