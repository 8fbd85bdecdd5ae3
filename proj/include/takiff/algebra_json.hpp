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
// On-disk algebra spec format. Rational literals are strings "p/q".

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "takiff/superalgebra.hpp"

namespace takiff {

using nlohmann::json;

inline SuperalgebraSpec spec_from_json(const json& j) {
  std::vector<BasisElement> basis;
  int idx = 0;
  for (const auto& b : j.at("basis")) {
    std::string p = b.at("parity").get<std::string>();
    if (p != "even" && p != "odd") throw std::invalid_argument("parity must be 'even' or 'odd'");
    basis.push_back({idx++, b.at("name").get<std::string>(), p == "odd" ? Parity::odd : Parity::even});
  }
  auto index_of = [&](const std::string& name) {
    for (const auto& b : basis)
      if (b.name == name) return b.index;
    throw std::invalid_argument("bracket refers to unknown basis element '" + name + "'");
  };
  std::map<std::pair<int, int>, Combo> brackets;
  if (j.count("brackets"))
    for (const auto& br : j.at("brackets")) {
      int a = index_of(br.at("a").get<std::string>());
      int b = index_of(br.at("b").get<std::string>());
      Combo combo;
      for (const auto& term : br.at("result"))
        combo_add(combo, index_of(term.at("c").get<std::string>()),
                  parse_rat(term.at("coeff").get<std::string>()));
      auto key = std::make_pair(a, b);
      if (brackets.count(key)) throw std::invalid_argument("duplicate bracket entry");
      brackets[key] = combo;
    }
  const auto& fj = j.at("form");
  int d = int(basis.size());
  if (int(fj.size()) != d) throw std::invalid_argument("form must be dim x dim");
  RatMat form(d, d);
  for (int r = 0; r < d; ++r) {
    if (int(fj[r].size()) != d) throw std::invalid_argument("form must be dim x dim");
    for (int c = 0; c < d; ++c) form.at(r, c) = parse_rat(fj[r][c].get<std::string>());
  }
  Rat h = j.count("dual_coxeter") ? parse_rat(j.at("dual_coxeter").get<std::string>()) : Rat(0);
  return make_superalgebra(basis, brackets, form, h);
}

inline json spec_to_json(const SuperalgebraSpec& s) {
  json j;
  j["basis"] = json::array();
  for (const auto& b : s.basis)
    j["basis"].push_back({{"name", b.name}, {"parity", b.parity == Parity::odd ? "odd" : "even"}});
  j["brackets"] = json::array();
  for (const auto& [key, combo] : s.structure) {
    auto [a, b] = key;
    // the reverse order is implied by graded antisymmetry; store one
    if (b < a && s.structure.count({b, a})) continue;
    json result = json::array();
    for (const auto& [c, coeff] : combo)
      result.push_back({{"c", s.basis[c].name}, {"coeff", rat_str(coeff)}});
    j["brackets"].push_back({{"a", s.basis[a].name}, {"b", s.basis[b].name}, {"result", result}});
  }
  j["form"] = json::array();
  for (int r = 0; r < s.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < s.dim(); ++c) row.push_back(rat_str(s.form.at(r, c)));
    j["form"].push_back(row);
  }
  j["dual_coxeter"] = rat_str(s.dual_coxeter);
  return j;
}

inline SuperalgebraSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
  json j = json::parse(in);  // parse_error carries the byte position
  return spec_from_json(j);
}

inline void save_spec_file(const SuperalgebraSpec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write spec file '" + path + "'");
  out << spec_to_json(s).dump(2) << "\n";
}

// Named builtins accepted wherever a spec file path is expected.
inline SuperalgebraSpec builtin_spec(const std::string& name) {
  if (name == "gl11") return gl11();
  if (name == "sl2") return sl2();
  if (name == "u1") return u1();
  if (name == "gl11-takiff") return takiff_extend(gl11());
  if (name == "sl2-takiff") return takiff_extend(sl2());
  if (name == "u1-takiff") return takiff_extend(u1());
  throw std::invalid_argument("unknown builtin spec '" + name + "'");
}

inline SuperalgebraSpec resolve_spec(const std::string& path_or_name) {
  try {
    return builtin_spec(path_or_name);
  } catch (const std::invalid_argument&) {
    return load_spec_file(path_or_name);
  }
}

}  // namespace takiff
