#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "quadradyn/cli.hpp"
#include "quadradyn/report.hpp"

using namespace quadradyn;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify emits the full JSON envelope") {
  RunResult r = run({"classify", "--family", "I", "--c", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("version") == "quadradyn 0.1.0");
  CHECK(j.at("spec").at("family") == "I");
  CHECK(j.at("spec").at("c") == 1.0);
  CHECK(j.at("thresholds").at("tau0") == 1e-12);
  CHECK(j.at("thresholds").at("series_order") == 12);
  const auto& pts = j.at("result").at("critical_points");
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].at("label") == "Cusp");
  CHECK(pts[0].at("trace") == "Thm2.2(1.ii)");
  CHECK(pts[0].at("series").at("m") == 2);
  CHECK(pts[0].at("series").at("a") == -1.0);
}

TEST_CASE("classify --infinity includes equator points and deviations") {
  RunResult r = run({"classify", "--family", "I", "--c", "1", "--infinity"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  const auto& inf = j.at("result").at("infinite_points");
  REQUIRE(inf.size() == 1);
  CHECK(inf[0].at("chart") == "U2");
  CHECK(inf[0].at("label") == "NonHypUnstableNode");
  CHECK(!j.at("notes").empty());
}

TEST_CASE("exit codes distinguish spec, usage, and help paths") {
  CHECK(run({"classify", "--family", "I"}).code == 2);   // c = 0 invalid
  CHECK(run({"bogus"}).code == 64);
  CHECK(run({"classify", "--family", "VI", "--c", "1"}).code == 2);
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("classify") != std::string::npos);
  // Errors go to the error stream, not stdout.
  RunResult bad = run({"classify", "--family", "I"});
  CHECK(bad.out.empty());
  CHECK(!bad.err.empty());
}

TEST_CASE("sweep CSV header is the documented column order") {
  RunResult r = run({"sweep", "--b", "0", "--c", "1", "--d", "2", "--param",
                     "b", "--from", "-1", "--to", "1", "--steps", "5"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "param,region,p1_label,p2_label,p2_x,p1_lambda1_re,p1_lambda1_im,"
        "p1_lambda2_re,p1_lambda2_im,p2_lambda1_re,p2_lambda1_im,"
        "p2_lambda2_re,p2_lambda2_im,collision");
  int lines = 0;
  for (std::string l; std::getline(is, l);) ++lines;
  CHECK(lines == 5);
}

TEST_CASE("sweep output is deterministic across runs and thread settings") {
  std::vector<std::string> args = {"sweep", "--b", "0",    "--c",   "1",
                                   "--d",   "2", "--param", "b",    "--from",
                                   "-1",    "--to", "1",   "--steps", "101"};
  setenv("QUADRADYN_THREADS", "1", 1);
  RunResult a = run(args);
  setenv("QUADRADYN_THREADS", "4", 1);
  RunResult b = run(args);
  unsetenv("QUADRADYN_THREADS");
  RunResult c = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("spec JSON file reproduces the flag-based run") {
  RunResult direct =
      run({"classify", "--family", "V", "--b", "1", "--c", "1", "--s", "2"});
  REQUIRE(direct.code == 0);
  json spec = json::parse(direct.out).at("spec");
  std::string path = "/tmp/quadradyn_spec_test.json";
  {
    std::ofstream f(path);
    f << spec.dump();
  }
  RunResult via = run({"classify", "--spec-json", path});
  CHECK(via.code == 0);
  CHECK(via.out == direct.out);
}

TEST_CASE("events reports the saddle-focus-saddle crossing") {
  RunResult r = run({"events", "--b", "1", "--c", "0", "--d", "2", "--param",
                     "c", "--from", "-1", "--to", "1", "--steps", "41"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  const auto& evs = j.at("result");
  REQUIRE(evs.size() == 1);
  CHECK(evs[0].at("kind") == "SaddleFocusSaddle");
  CHECK(std::abs(evs[0].at("parameter_value").get<double>()) <= 1e-8);
}

TEST_CASE("solve CSV modes") {
  RunResult r = run({"solve", "--family", "II", "--b", "1", "--x0", "0",
                     "--y0", "1", "--t-max", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,x,y\n", 0) == 0);

  RunResult cf = run({"solve", "--family", "II", "--b", "1", "--x0", "0",
                      "--y0", "1", "--t-max", "0.5", "--closed-form"});
  REQUIRE(cf.code == 0);
  std::istringstream is(cf.out);
  std::string header, last, line;
  std::getline(is, header);
  CHECK(header == "t,x_closed,y_closed,x_rk4,y_rk4,abs_err");
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  double abs_err = std::stod(last.substr(last.rfind(',') + 1));
  CHECK(abs_err <= 1e-9);
}

TEST_CASE("portrait writes an SVG file") {
  std::string path = "/tmp/quadradyn_portrait_test.svg";
  RunResult r = run({"portrait", "--family", "I", "--c", "1", "--disk",
                     "--seeds", "3", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str().find("<svg") != std::string::npos);
  CHECK(buf.str().find("class=\"equator\"") != std::string::npos);
}

TEST_CASE("integrals reports the integral and its numeric residual") {
  RunResult r = run({"integrals", "--family", "II", "--b", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("result").at("kind") == "LinearInY");
  CHECK(j.at("result").at("conservation_residual").get<double>() <= 1e-10);
  // Dissipative member: spec-level refusal.
  CHECK(run({"integrals", "--family", "V", "--b", "1", "--c", "1"}).code == 2);
}

TEST_CASE("verify prints one status line per check") {
  RunResult r = run({"verify"});
  CHECK(r.code == 0);
  int pass = 0;
  std::istringstream is(r.out);
  for (std::string l; std::getline(is, l);)
    if (l.rfind("PASS ", 0) == 0) ++pass;
  CHECK(pass == 4);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("poly JSON round trip and double formatting") {
  Poly2 p = Poly2::monomial(2, 1, -0.1) + Poly2::constant(1.0 / 3.0);
  CHECK(poly_from_json(poly_to_json(p)) == p);
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("spec JSON round trip keeps only the relevant parameters") {
  FamilySpec spec;
  spec.tag = Family::V;
  spec.b = 1.5;
  spec.c = -2.0;
  spec.s = 3;
  json j = spec_to_json(spec);
  CHECK(j.contains("b"));
  CHECK(j.contains("c"));
  CHECK(j.contains("s"));
  CHECK(!j.contains("a"));
  CHECK(!j.contains("p"));
  FamilySpec back = spec_from_json(j);
  CHECK(back.tag == Family::V);
  CHECK(back.b == 1.5);
  CHECK(back.c == -2.0);
  CHECK(back.s == 3);
}
