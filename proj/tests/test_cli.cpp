#include <catch2/catch.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "takiff/cli.hpp"

using namespace takiff;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check-jacobi on builtins") {
  auto r = run({"check-jacobi", "--spec", "gl11-takiff"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["manifest"]["exact_arithmetic"] == true);
}

TEST_CASE("check-jacobi reports violations with exit 1") {
  // corrupted gl(1|1): {psi+, psi-} = N
  const char* path = "/tmp/takiff_cli_bad_spec.json";
  {
    std::ofstream f(path);
    f << R"({"basis":[{"name":"N","parity":"even"},{"name":"E","parity":"even"},
             {"name":"psi+","parity":"odd"},{"name":"psi-","parity":"odd"}],
             "brackets":[{"a":"N","b":"psi+","result":[{"c":"psi+","coeff":"1"}]},
                         {"a":"N","b":"psi-","result":[{"c":"psi-","coeff":"-1"}]},
                         {"a":"psi+","b":"psi-","result":[{"c":"N","coeff":"1"}]}],
             "form":[["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]],
             "dual_coxeter":"0"})";
  }
  auto r = run({"check-jacobi", "--spec", path});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["pass"] == false);
  CHECK(j.contains("triple"));
  std::remove(path);
}

TEST_CASE("extend writes a loadable double") {
  const char* path = "/tmp/takiff_cli_double.json";
  auto r = run({"extend", "--spec", "gl11", "--out-spec", path});
  REQUIRE(r.code == 0);
  SuperalgebraSpec d = load_spec_file(path);
  CHECK(d.dim() == 8);
  CHECK(check_jacobi(d).pass);
  std::remove(path);
}

TEST_CASE("verma multiplicities CSV contains the grade-2 central entry") {
  auto r = run({"verma", "--cutoff", "2", "--multiplicities"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2,0,56\n") != std::string::npos);
  CHECK(r.out.find("1,0,12\n") != std::string::npos);
  CHECK(r.out.find("0,1,1\n") != std::string::npos);
}

TEST_CASE("verma JSON output with singular vectors") {
  auto r = run({"verma", "--cutoff", "1", "--weight", R"({"n":"2","e":"3","tn":"1/2"})",
                "--singular"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["grade_dimensions"] == json::array({4, 32}));
  REQUIRE(j["singular_vectors"].size() == 1);
  CHECK(j["singular_vectors"][0]["generalized"] == false);
  CHECK(j["singular_vectors"][0]["n0"] == "1");
}

TEST_CASE("tensor emits a DecompositionReport") {
  auto r = run({"tensor", "--left", "S", "--right", "S", "--weights",
                R"({"left":{"n":"0","e":"1"},"right":{"n":"0","e":"-1"}})"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["summands"].size() == 1);
  CHECK(j["summands"][0]["kind"] == "P");
  CHECK(j["summands"][0]["n"] == "0");
  CHECK(j["factors"].size() == 3);
  CHECK(j["fully_identified"] == true);
}

TEST_CASE("sugawara-check measures the central charges") {
  auto r = run({"sugawara-check", "--spec", "sl2", "--cutoff", "2", "--mode-range", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["central_charge"] == "6");
  CHECK(j["virasoro_pass"] == true);
  CHECK(j["primary_pass"] == true);

  auto g = run({"sugawara-check", "--spec", "gl11", "--cutoff", "2", "--mode-range", "1"});
  REQUIRE(g.code == 0);
  json jj = json::parse(g.out);
  CHECK(jj["central_charge"] == "0");
}

TEST_CASE("character series and evaluation") {
  std::string label = R"({"kind":"T","n":"0","e":"1","tn":"0","te":"1/2",
                          "levels":{"k":"1","tk":"1"}})";
  auto r = run({"character", "--label", label, "--cutoff", "2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["series"]["z_offset"] == "1");
  // q^0 row (1, 2, 1)
  int found = 0;
  for (const auto& t : j["series"]["terms"])
    if (t[1] == 0) ++found;
  CHECK(found == 3);

  auto s = run({"character", "--label", label, "--cutoff", "8", "--super", "--eval",
                "tau=0.3:2.0,nu=0.1"});
  REQUIRE(s.code == 0);
  json js = json::parse(s.out);
  CHECK(js.contains("prefactor"));
  CHECK(js["eval"].contains("value_re"));
  CHECK(js["eval"]["tail_bound"].get<double>() < 1e-6);
}

TEST_CASE("verlinde and fusion subcommands") {
  std::string a = R"({"kind":"S","n":"1","e":"2","tn":"0","levels":{"k":"1","tk":"1"}})";
  std::string b = R"({"kind":"S","n":"0","e":"-2","tn":"1","levels":{"k":"1","tk":"1"}})";
  auto r = run({"verlinde", "--a", a, "--b", b});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["classes"].size() == 1);
  CHECK(j["classes"][0]["kind"] == "V");
  CHECK(j["classes"][0]["mult"] == 1);
  CHECK(j["trace"].size() >= 5);

  auto f = run({"fusion", "--a", a, "--b", b});
  REQUIRE(f.code == 0);
  json jf = json::parse(f.out);
  CHECK(jf["status"] == "genuine");
  REQUIRE(jf["terms"].size() == 1);
  CHECK(jf["terms"][0]["marker"] == "P");
}

TEST_CASE("byte-identical output across repeated invocations") {
  std::vector<std::string> args = {"verlinde", "--a",
                                   R"({"kind":"A","n":"1","levels":{"k":"1","tk":"1"}})", "--b",
                                   R"({"kind":"T","n":"0","e":"1","te":"1/3","levels":{"k":"1","tk":"1"}})"};
  auto r1 = run(args), r2 = run(args);
  CHECK(r1.out == r2.out);
  CHECK(r1.code == 0);
}

TEST_CASE("malformed JSON exits with code 2 and a position diagnostic") {
  auto r = run({"verlinde", "--a", "{\"kind\":", "--b", "{}"});
  CHECK(r.code == 2);
  CHECK(r.err.find("input error") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  auto r = run({"tensor", "--left", "S"});
  CHECK(r.code == 2);
  auto q = run({"frobnicate"});
  CHECK(q.code == 2);
}

TEST_CASE("selftest runs a filtered criterion") {
  auto r = run({"selftest", "--criteria", "1,4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  criterion 1") != std::string::npos);
  CHECK(r.out.find("PASS  criterion 4") != std::string::npos);
  CHECK(r.out.find("criterion 6") == std::string::npos);
}

TEST_CASE("cutoff ceiling guard surfaces as a usage error") {
  auto r = run({"verma", "--cutoff", "40", "--multiplicities"});
  CHECK(r.code == 2);
  CHECK(r.err.find("ceiling") != std::string::npos);
}

TEST_CASE("shipped data files load and match the builtins") {
  for (const char* name : {"gl11", "sl2", "u1", "gl11_takiff", "sl2_takiff", "u1_takiff"}) {
    std::string path = std::string(TAKIFF_DATA_DIR) + "/" + name + ".json";
    SuperalgebraSpec s = load_spec_file(path);
    CHECK(check_jacobi(s).pass);
    std::string base(name);
    auto tpos = base.find("_takiff");
    SuperalgebraSpec builtin =
        (tpos == std::string::npos) ? builtin_spec(base)
                                    : takiff_extend(builtin_spec(base.substr(0, tpos)));
    CHECK(spec_to_json(s).dump() == spec_to_json(builtin).dump());
  }
}

TEST_CASE("--out writes the payload to a file; --full-structure accepted") {
  const char* path = "/tmp/takiff_cli_out.json";
  auto r = run({"tensor", "--left", "A", "--right", "A", "--weights",
                R"({"left":{"n":"1"},"right":{"n":"2"}})", "--full-structure", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  json j = json::parse(f);
  CHECK(j["summands"][0]["kind"] == "A");
  CHECK(j["full_structure"] == true);
  std::remove(path);
}
