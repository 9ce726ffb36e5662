// End-to-end checks of the command-line front end driven in process: report
// schema and key order, exact/sampled modes, error handling and the
// byte-identical reproducibility guarantee.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsl/cli.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = qsl::cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parsed(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("run report: schema fields in documented order") {
  const CliResult r = invoke({"run", "--algorithm", "bv", "--s", "1011", "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r.out);
  CHECK(j["algorithm"] == "bv");
  CHECK(j["params"]["n"] == 4);
  CHECK(j["params"]["s"] == "1011");
  CHECK(j["mode"] == "exact");
  CHECK(j["seed"] == 0);
  CHECK(j["queries"] == 1);
  CHECK(j["distribution"].size() == 1);
  CHECK(j["distribution"]["1011"] == 1.0);
  CHECK(j["num/den"]["1011"] == "1/1");
  CHECK(j["verdict"] == "1011");
  CHECK(j["metrics"]["entropy"] == 0.0);

  const auto pos = [&](const char* key) {
    return r.out.find(std::string("\"") + key + "\"");
  };
  CHECK(pos("algorithm") < pos("params"));
  CHECK(pos("params") < pos("mode"));
  CHECK(pos("mode") < pos("seed"));
  CHECK(pos("seed") < pos("queries"));
  CHECK(pos("queries") < pos("distribution"));
  CHECK(pos("distribution") < pos("num/den"));
  CHECK(pos("num/den") < pos("verdict"));
  CHECK(pos("verdict") < pos("metrics"));
}

TEST_CASE("run report: grover one-round distribution and overlap metric") {
  const CliResult r = invoke(
      {"run", "--algorithm", "grover", "--n", "3", "--xstar", "101", "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r.out);
  CHECK(j["distribution"]["101"] == 0.625);
  CHECK(j["distribution"]["001"] == 0.125);
  CHECK(j["distribution"]["100"] == 0.125);
  CHECK(j["distribution"]["111"] == 0.125);
  CHECK(j["distribution"].size() == 4);
  CHECK(j["num/den"]["101"] == "5/8");
  CHECK(j["verdict"] == "101");
  const double sso = j["metrics"]["sso"].get<double>();
  CHECK(std::abs(sso - 0.785) < 0.001);
}

TEST_CASE("run report: simon variants") {
  const CliResult sub = invoke({"run", "--algorithm", "simon", "--s", "110", "--mode",
                                "exact", "--seed", "3"});
  REQUIRE(sub.code == 0);
  auto j = parsed(sub.out);
  CHECK(j["distribution"].size() == 4);
  CHECK(j["distribution"]["000"] == 0.25);
  CHECK(j["distribution"]["110"] == 0.25);
  CHECK(j["verdict"] == "two-to-one:110");

  const CliResult det = invoke(
      {"run", "--algorithm", "simon", "--s", "101", "--variant", "deterministic"});
  REQUIRE(det.code == 0);
  j = parsed(det.out);
  CHECK(j["verdict"] == "two-to-one:101");
  CHECK(j["queries"] == 4);  // n scans plus the final classical check
  CHECK(j["distribution"]["101"] == 1.0);

  const CliResult one = invoke(
      {"run", "--algorithm", "simon", "--s", "11", "--b", "0", "--seed", "5"});
  REQUIRE(one.code == 0);
  CHECK(parsed(one.out)["verdict"] == "one-to-one");
}

TEST_CASE("run report: dj forms") {
  const CliResult thr = invoke({"run", "--algorithm", "dj", "--n", "2", "--a", "2"});
  REQUIRE(thr.code == 0);
  auto j = parsed(thr.out);
  CHECK(j["verdict"] == "not-constant");
  CHECK(j["distribution"]["0"] == 1.0);

  const CliResult prom = invoke(
      {"run", "--algorithm", "dj", "--n", "3", "--b0", "0", "--b1", "1", "--perm", "random"});
  REQUIRE(prom.code == 0);
  j = parsed(prom.out);
  CHECK(j["verdict"] == "not-balanced");
  CHECK(j["distribution"]["1"] == 1.0);
  CHECK(j["params"]["perm"] == "random");

  const CliResult maj = invoke({"run", "--algorithm", "dj", "--variant", "A"});
  REQUIRE(maj.code == 0);
  j = parsed(maj.out);
  CHECK(j["num/den"]["0"] == "3/4");
  CHECK(j["num/den"]["1"] == "1/4");

  const CliResult cat = invoke({"run", "--algorithm", "dj", "--function", "01101001"});
  REQUIRE(cat.code == 0);
  CHECK(parsed(cat.out)["distribution"]["0"] == 1.0);
}

TEST_CASE("run report: shor15 subroutine distribution") {
  const CliResult r = invoke({"run", "--algorithm", "shor15", "--a", "8", "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r.out);
  CHECK(j["num/den"]["000"] == "5/16");
  CHECK(j["num/den"]["010"] == "5/16");
  CHECK(j["num/den"]["100"] == "3/16");
  CHECK(j["num/den"]["110"] == "3/16");
  const double sso = j["metrics"]["sso"].get<double>();
  CHECK(std::abs(sso - 0.984) < 0.01);
}

TEST_CASE("csv format prints the distribution table") {
  const CliResult r = invoke(
      {"run", "--algorithm", "bv", "--s", "1011", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "outcome,probability,num/den\n1011,1,1/1\n");

  const CliResult s = invoke({"run", "--algorithm", "bv", "--s", "10", "--mode", "sample",
                              "--trials", "64", "--format", "csv", "--seed", "1"});
  REQUIRE(s.code == 0);
  CHECK(s.out == "outcome,probability\n10,1\n");
}

TEST_CASE("byte-identical reports for identical configuration and seed") {
  const std::vector<std::string> args = {"run",  "--algorithm", "dj",     "--n",
                                         "4",    "--perm",      "random", "--mode",
                                         "sample", "--trials",  "500",    "--seed", "11"};
  const CliResult a = invoke(args);
  const CliResult b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const CliResult c = invoke({"run", "--algorithm", "grover", "--xstar", "11"});
  const CliResult d = invoke({"run", "--algorithm", "grover", "--xstar", "11"});
  CHECK(c.out == d.out);
}

TEST_CASE("seed resolution: flag beats QSL_SEED beats zero") {
  REQUIRE(setenv("QSL_SEED", "42", 1) == 0);
  const CliResult env = invoke({"run", "--algorithm", "bv", "--s", "1"});
  CHECK(parsed(env.out)["seed"] == 42);
  const CliResult flag = invoke({"run", "--algorithm", "bv", "--s", "1", "--seed", "7"});
  CHECK(parsed(flag.out)["seed"] == 7);

  REQUIRE(setenv("QSL_SEED", "pony", 1) == 0);
  const CliResult bad = invoke({"run", "--algorithm", "bv", "--s", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("QSL_SEED") != std::string::npos);
  REQUIRE(unsetenv("QSL_SEED") == 0);

  const CliResult none = invoke({"run", "--algorithm", "bv", "--s", "1"});
  CHECK(parsed(none.out)["seed"] == 0);
}

TEST_CASE("configuration errors exit 2 with a diagnostic") {
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"bogus"}).err.find("Usage") != std::string::npos);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"run", "--algorithm", "nope", "--s", "1"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "bv", "--s", "1021"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "bv"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "simon", "--s", "00"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "grover", "--xstar", "1"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "dj", "--n", "2", "--a", "9"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "dj", "--n", "2", "--a", "2", "--variant", "A"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "dj", "--n", "2", "--perm", "0,1,2"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "dj", "--n", "2", "--perm", "0,1,2,2"}).code == 2);
  CHECK(invoke({"run", "--algorithm", "dj", "--function", "11111110"}).code == 2);

  const CliResult trials = invoke(
      {"run", "--algorithm", "bv", "--s", "1", "--mode", "exact", "--trials", "10"});
  CHECK(trials.code == 2);
  CHECK(trials.err.find("--trials") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const CliResult top = invoke({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("Usage") != std::string::npos);
  const CliResult sub = invoke({"run", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--algorithm") != std::string::npos);
}

TEST_CASE("catalog dj3 lists all 72 functions") {
  const CliResult r = invoke({"catalog", "dj3"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r.out);
  CHECK(j["catalog"] == "dj3");
  CHECK(j["count"] == 72);
  REQUIRE(j["entries"].size() == 72);
  CHECK(j["entries"][0]["function"] == "00000000");
  CHECK(j["entries"][0]["toffolis"] == 0);
  CHECK(j["entries"][0]["cnots"] == 0);
  CHECK(j["entries"][0]["balanced"] == false);
  CHECK(j["entries"][71]["function"] == "11101000");
  CHECK(j["entries"][71]["toffolis"] == 1);
  CHECK(j["entries"][71]["cnots"] == 5);
  CHECK(j["entries"][71]["balanced"] == true);

  const CliResult csv = invoke({"catalog", "dj3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  size_t lines = 0;
  for (char c : csv.out) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 73);
  CHECK(csv.out.rfind("function,toffolis,cnots,balanced\n", 0) == 0);
  CHECK(csv.out.find("11101000,1,5,true\n") != std::string::npos);
}

TEST_CASE("sso and entropy consume distribution files") {
  {
    std::ofstream f("cli_test_uniform4.json");
    f << R"({"00":0.25,"01":0.25,"10":0.25,"11":0.25})";
  }
  {
    std::ofstream f("cli_test_report.json");
    f << invoke({"run", "--algorithm", "bv", "--s", "1011"}).out;
  }

  const CliResult ent = invoke({"entropy", "--in", "cli_test_uniform4.json"});
  REQUIRE(ent.code == 0);
  CHECK(parsed(ent.out)["entropy"] == 2.0);

  const CliResult same = invoke({"sso", "--observed", "cli_test_report.json", "--ideal",
                                 "cli_test_report.json"});
  REQUIRE(same.code == 0);
  CHECK(parsed(same.out)["sso"] == 1.0);

  // A full report and a bare map mix freely; disjoint supports overlap to 0.
  const CliResult mixed = invoke({"sso", "--observed", "cli_test_report.json", "--ideal",
                                  "cli_test_uniform4.json"});
  REQUIRE(mixed.code == 0);
  CHECK(parsed(mixed.out)["sso"] == 0.0);

  CHECK(invoke({"sso", "--observed", "no_such_file.json", "--ideal",
                "cli_test_uniform4.json"}).code == 2);
  CHECK(invoke({"entropy", "--in", "no_such_file.json"}).code == 2);
}

TEST_CASE("shor15 factors 15") {
  const CliResult r = invoke({"shor15", "--a", "2", "--seed", "0"});
  REQUIRE(r.code == 0);
  const auto j = parsed(r.out);
  CHECK(j["algorithm"] == "shor15");
  CHECK(j["params"]["a"] == 2);
  CHECK(j["success"] == true);
  CHECK(j["order"] == 4);
  CHECK(j["factors"][0] == 3);
  CHECK(j["factors"][1] == 5);
  CHECK(j["ys"].size() == j["samples"].get<size_t>());

  CHECK(invoke({"shor15", "--a", "3"}).code == 2);
}

TEST_CASE("demo subcommands report the protocol facts") {
  const auto singlet = parsed(invoke({"demo", "singlet"}).out);
  CHECK(singlet["zz"] == -1);
  CHECK(singlet["xx"] == -1);
  CHECK(singlet["yy"] == 1);

  const auto ghz = parsed(invoke({"demo", "ghz"}).out);
  CHECK(ghz["toffoli"]["conditional_entropy_bits"] == 0.0);
  CHECK(ghz["cnot"]["conditional_entropy_bits"] == 1.0);
  CHECK(ghz["toffoli"]["zzz"]["000"] == 0.5);
  CHECK(ghz["toffoli"]["zzz"]["111"] == 0.5);

  const auto sd = parsed(invoke({"demo", "superdense"}).out);
  CHECK(sd["all_decoded"] == true);
  REQUIRE(sd["messages"].size() == 4);
  CHECK(sd["messages"][2]["message"] == "10");
  CHECK(sd["messages"][2]["decoded"] == "10");

  const auto tp = parsed(invoke({"demo", "teleport"}).out);
  CHECK(tp["identity_channel"] == true);
  REQUIRE(tp["inputs"].size() == 7);
  for (const auto& entry : tp["inputs"]) {
    CHECK(entry["identity"] == true);
    CHECK(entry["sender_outcomes_uniform"] == true);
  }

  const auto bb = parsed(invoke({"demo", "bb84", "--seed", "5"}).out);
  CHECK(bb["exact"]["clean"]["qber"] == 0.0);
  CHECK(bb["exact"]["tapped"]["qber"] == 0.25);
  CHECK(bb["exact"]["tapped"]["sifted"] == 64);
  CHECK(bb["exact"]["tapped"]["errors"] == 16);
  const double sampled = bb["sampled"]["tapped"]["qber"].get<double>();
  CHECK(sampled > 0.225);
  CHECK(sampled < 0.275);
  CHECK(bb["sampled"]["clean"]["errors"] == 0);
}
