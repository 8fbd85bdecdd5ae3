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
// Batch command-line frontend. JSON in, JSON (or CSV) out, reproducible run
// manifests. Exit codes: 0 success, 1 verification failure, 2 usage error.

#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "takiff/algebra_json.hpp"
#include "takiff/cli_labels.hpp"
#include "takiff/selftest.hpp"

namespace takiff {

namespace cli_detail {

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Deterministic manifest: identical manifests imply bit-identical outputs.
// Timing is reported on the side channel, never in the payload.
inline json manifest(const std::vector<std::string>& argv, const json& payload) {
  std::string cmd;
  for (const auto& a : argv) {
    if (!cmd.empty()) cmd += " ";
    cmd += a;
  }
  json m;
  m["command"] = cmd;
  m["input_digest"] = hex64(fnv1a(cmd));
  m["exact_arithmetic"] = true;
  m["output_digest"] = hex64(fnv1a(payload.dump()));
  return m;
}

inline void emit(std::ostream& out, const std::vector<std::string>& argv, json payload,
                 bool pretty, const std::string& out_file) {
  payload["manifest"] = manifest(argv, payload);
  std::string text = pretty ? payload.dump(2) : payload.dump();
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw std::invalid_argument("cannot write '" + out_file + "'");
    f << text << "\n";
  } else {
    out << text << "\n";
  }
}

}  // namespace cli_detail

// Dispatches one CLI invocation; argv excludes the program name.
inline int cli_dispatch(const std::vector<std::string>& argv, std::ostream& out,
                        std::ostream& err) {
  using nlohmann::json;
  CLI::App app{"takiff: exact computations for Takiff superalgebras of gl(1|1)"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_file;
  bool pretty = false;
  int jobs = 1;
  app.add_option("--out", out_file, "write the JSON payload to a file");
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_option("--jobs", jobs, "parallel workers for selftest")->check(CLI::PositiveNumber);

  // check-jacobi
  auto* cj = app.add_subcommand("check-jacobi", "verify the graded Jacobi identity of a spec");
  std::string cj_spec;
  cj->add_option("--spec", cj_spec, "spec file or builtin name")->required();

  // extend
  auto* ex = app.add_subcommand("extend", "write the Takiff double of a spec");
  std::string ex_spec, ex_out;
  ex->add_option("--spec", ex_spec)->required();
  ex->add_option("--out-spec,--out", ex_out, "output spec file")->required();

  // tensor
  auto* tn = app.add_subcommand("tensor", "decompose a tensor product of finite classes");
  std::string tn_left, tn_right, tn_weights;
  bool tn_full = false;
  tn->add_option("--left", tn_left, "class kind: A, S, T, V, P, GenTyp2")->required();
  tn->add_option("--right", tn_right)->required();
  tn->add_option("--weights", tn_weights, R"(JSON {"left":{"n":..},"right":{..}})")->required();
  tn->add_flag("--full-structure", tn_full, "include Jordan data");

  // verma
  auto* vm = app.add_subcommand("verma", "build a graded affine Verma module");
  std::string vm_weight = "{}", vm_levels = "{}";
  int vm_cutoff = 2;
  bool vm_sing = false, vm_mult = false;
  vm->add_option("--weight", vm_weight, "hws weight JSON");
  vm->add_option("--levels", vm_levels, R"(JSON {"k":"1","tk":"1"})");
  vm->add_option("--cutoff", vm_cutoff)->required();
  vm->add_flag("--singular", vm_sing, "report singular vectors");
  vm->add_flag("--multiplicities", vm_mult, "emit CSV rows grade,n_offset,dimension");

  // sugawara-check
  auto* sg = app.add_subcommand("sugawara-check", "verify virasoro and primary relations");
  std::string sg_spec = "gl11", sg_levels = "{}", sg_weight = "{}";
  int sg_cutoff = 3;
  long sg_range = 1;
  sg->add_option("--spec", sg_spec, "base algebra: gl11, sl2, u1 or a spec file");
  sg->add_option("--levels", sg_levels);
  sg->add_option("--weight", sg_weight, "hws weight (gl11 only)");
  sg->add_option("--cutoff", sg_cutoff)->required();
  sg->add_option("--mode-range", sg_range)->required();

  // character
  auto* ch = app.add_subcommand("character", "character or supercharacter series of a label");
  std::string ch_label, ch_eval;
  int ch_cutoff = 6;
  bool ch_super = false;
  ch->add_option("--label", ch_label, "class label JSON")->required();
  ch->add_option("--cutoff", ch_cutoff)->required();
  ch->add_flag("--super", ch_super, "supercharacter instead of character");
  ch->add_option("--eval", ch_eval, "evaluate: tau=re:im,nu=re:im,... (super only)");

  // verlinde
  auto* vl = app.add_subcommand("verlinde", "grothendieck fusion via the continuum Verlinde formula");
  std::string vl_a, vl_b;
  vl->add_option("--a", vl_a, "class label JSON")->required();
  vl->add_option("--b", vl_b)->required();

  // fusion
  auto* fu = app.add_subcommand("fusion", "genuine fusion rules with indecomposable markers");
  std::string fu_a, fu_b;
  fu->add_option("--a", fu_a)->required();
  fu->add_option("--b", fu_b)->required();

  // selftest
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  std::string st_criteria;
  st->add_option("--criteria", st_criteria, "comma-separated criterion ids (default: all)");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*cj) {
      SuperalgebraSpec s = resolve_spec(cj_spec);
      JacobiReport r = check_jacobi(s);
      json payload;
      payload["pass"] = r.pass;
      if (!r.pass) {
        payload["triple"] = r.triple_names;
        json res;
        for (const auto& [idx, c] : r.residual) res[s.basis[idx].name] = rat_str(c);
        payload["residual"] = res;
      }
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return r.pass ? 0 : 1;
    }
    if (*ex) {
      SuperalgebraSpec s = resolve_spec(ex_spec);
      SuperalgebraSpec d = takiff_extend(s);
      save_spec_file(d, ex_out);
      json payload;
      payload["out"] = ex_out;
      payload["dim"] = d.dim();
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*tn) {
      json w = json::parse(tn_weights);
      FinModule left = from_label(parse_fin_label(tn_left, w.at("left")));
      FinModule right = from_label(parse_fin_label(tn_right, w.at("right")));
      DecompositionReport rep = decompose(tensor(left, right));
      json payload = decomposition_to_json(rep, tn_full);
      {
        std::string s;
        for (const auto& e : rep.summands) {
          if (!s.empty()) s += " + ";
          s += e.identified ? label_str(e.label) : ("unidentified(dim " + std::to_string(e.dim) + ")");
        }
        payload["summary"] = s;
      }
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*vm) {
      json jw = json::parse(vm_weight), jl = json::parse(vm_levels);
      LevelPair lv = parse_levels(jl);
      AffWeight w = parse_aff_weight(jw, lv);
      InducedModule gv = build_verma(w, vm_cutoff);
      if (vm_mult) {
        // CSV only; offsets descend within each grade
        auto mult = multiplicities(gv, w.n);
        std::map<int, std::vector<std::pair<Rat, int>>> rows;
        for (const auto& [key, m] : mult) rows[key.first].push_back({key.second, m});
        std::ostringstream csv;
        for (auto& [g, entries] : rows) {
          std::sort(entries.begin(), entries.end(),
                    [](const auto& a, const auto& b) { return b.first < a.first; });
          for (const auto& [off, m] : entries)
            csv << g << "," << rat_str(off) << "," << m << "\n";
        }
        if (!out_file.empty()) {
          std::ofstream f(out_file);
          f << csv.str();
        } else {
          out << csv.str();
        }
        return 0;
      }
      json payload;
      payload["weight"] = aff_weight_to_json(w);
      payload["levels"] = levels_to_json(lv);
      payload["cutoff"] = vm_cutoff;
      payload["delta_hws"] = rat_str(hws_conformal_dim(w));
      json dims = json::array();
      for (int g = 0; g <= vm_cutoff; ++g) dims.push_back(int(gv.states_of_grade(g).size()));
      payload["grade_dimensions"] = dims;
      if (vm_sing) {
        json sv = json::array();
        for (int g = 0; g <= vm_cutoff; ++g)
          for (const auto& v : singular_vectors(gv, g)) {
            json e;
            e["grade"] = v.grade;
            e["n0"] = rat_str(v.n0);
            e["generalized"] = v.generalized;
            json supp = json::array();
            for (const auto& [idx, c] : v.vec) supp.push_back({idx, rat_str(c)});
            e["support"] = supp;
            sv.push_back(e);
          }
        payload["singular_vectors"] = sv;
      }
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*sg) {
      json jl = json::parse(sg_levels);
      LevelPair lv = parse_levels(jl);
      SuperalgebraSpec base = resolve_spec(sg_spec);
      // gl(1|1) is not simple: it takes the Casimir-derived tensor on a Verma
      bool is_gl11 = spec_to_json(base).dump() == spec_to_json(gl11()).dump();
      json payload;
      std::unique_ptr<InducedModule> mod;
      EnergyOperator T;
      if (is_gl11) {
        AffWeight w = parse_aff_weight(json::parse(sg_weight), lv);
        mod = std::make_unique<InducedModule>(build_verma(w, sg_cutoff));
        T = build_T_gl11(lv);
      } else {
        mod = std::make_unique<InducedModule>(vacuum_module(base, lv, sg_cutoff));
        T = build_T_general(base, lv);
      }
      VirasoroRealization vir(*mod, T);
      auto v = check_virasoro(vir, sg_range, sg_range);
      auto p = check_primary(vir, sg_range, sg_range);
      payload["central_charge"] = rat_str(v.central_charge);
      payload["virasoro_pass"] = v.pass;
      payload["primary_pass"] = p.pass;
      payload["checked_identities"] = v.checked_states + p.checked_states;
      if (!v.pass) payload["virasoro_witness"] = v.witness;
      if (!p.pass) payload["primary_witness"] = p.witness;
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return (v.pass && p.pass) ? 0 : 1;
    }
    if (*ch) {
      AffClassLabel l = parse_aff_label(json::parse(ch_label));
      json payload;
      if (ch_super) {
        Supercharacter sc = supercharacter(l, ch_cutoff);
        payload["prefactor"] = prefactor_to_json(sc.pref);
        payload["series"] = series_to_json(sc.series);
        if (!ch_eval.empty()) {
          ModularPoint p = parse_modular_point(ch_eval);
          EvalResult r = eval_at(sc, p);
          payload["eval"] = {{"value_re", r.value.real()},
                             {"value_im", r.value.imag()},
                             {"tail_bound", r.tail_bound}};
        }
      } else {
        if (!ch_eval.empty()) throw std::invalid_argument("--eval requires --super");
        payload["series"] = series_to_json(character(l, ch_cutoff));
      }
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*vl) {
      AffClassLabel a = parse_aff_label(json::parse(vl_a));
      AffClassLabel b = parse_aff_label(json::parse(vl_b));
      VerlindeResult r = verlinde(a, b);
      json payload;
      json cl = json::array();
      for (const auto& [l, c] : r.classes) {
        json e = aff_label_to_json(l);
        e["mult"] = c;
        cl.push_back(e);
      }
      payload["classes"] = cl;
      payload["trace"] = r.trace;
      payload["status"] = "grothendieck-via-verlinde";
      {
        std::string s;
        for (const auto& [l, c] : r.classes) {
          if (!s.empty()) s += " + ";
          if (c != 1) s += std::to_string(c) + " ";
          s += "[" + aff_label_str(l) + "]";
        }
        payload["summary"] = s;
      }
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*fu) {
      AffClassLabel a = parse_aff_label(json::parse(fu_a));
      AffClassLabel b = parse_aff_label(json::parse(fu_b));
      FusionElement f = fusion_lift(a, b);
      json payload;
      json terms = json::array();
      for (const auto& [t, c] : f.terms) {
        json e = aff_label_to_json(t.label);
        e["marker"] = t.marker == 1 ? "P" : t.marker == 2 ? "GenTyp2" : "";
        e["mult"] = c;
        terms.push_back(e);
      }
      payload["terms"] = terms;
      payload["status"] = f.status;
      {
        std::string s;
        for (const auto& [t, c] : f.terms) {
          if (!s.empty()) s += " + ";
          if (c != 1) s += std::to_string(c) + " ";
          s += fusion_term_str(t);
        }
        payload["summary"] = s.empty() ? std::string("(grothendieck only)") : s;
      }
      json gr = json::array();
      for (const auto& [l, c] : f.grothendieck) {
        json e = aff_label_to_json(l);
        e["mult"] = c;
        gr.push_back(e);
      }
      payload["grothendieck"] = gr;
      cli_detail::emit(out, argv, payload, pretty, out_file);
      return 0;
    }
    if (*st) {
      std::set<int> only;
      if (!st_criteria.empty()) {
        std::stringstream ss(st_criteria);
        std::string tok;
        while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
      }
      auto results = run_acceptance(&out, jobs, only);
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      out << (all ? "selftest: all criteria passed" : "selftest: FAILURES PRESENT") << "\n";
      return all ? 0 : 1;
    }
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";  // carries the byte position
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace takiff
