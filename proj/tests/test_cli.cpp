#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "binomid/catalog.hpp"
#include "binomid/dsl.hpp"
#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "binomid");
  std::ostringstream out, err;
  int code = binomid::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("verify chugen as json") {
  Result r = run({"verify", "--identity", "chugen", "--range", "*=0..5", "--jobs", "4", "--format", "json"});
  CHECK(r.code == 0);
  auto js = json_lines(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["identity"] == "chugen");
  CHECK(js[0]["instances"] == 7776);
  CHECK(js[0]["failures"].empty());
  CHECK(js[0]["grid"]["n"] == nlohmann::json::array({0, 5}));
}

TEST_CASE("named ranges override the wildcard") {
  Result r = run({"verify", "-i", "gould", "-r", "*=0..2", "-r", "x=0..4", "--format", "json"});
  CHECK(r.code == 0);
  auto js = json_lines(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["instances"] == 3 * 3 * 5);
  CHECK(js[0]["grid"]["x"] == nlohmann::json::array({0, 4}));
}

TEST_CASE("text and json carry the same counts") {
  Result t = run({"verify", "--identity", "takacs"});
  Result j = run({"verify", "--identity", "takacs", "--format", "json"});
  CHECK(t.code == 0);
  CHECK(j.code == 0);
  auto js = json_lines(j.out);
  REQUIRE(js.size() == 1);
  CHECK(t.out.find("instances=" + std::to_string(js[0]["instances"].get<int>())) != std::string::npos);
}

TEST_CASE("verify all identities") {
  Result r = run({"verify", "--format", "json", "--no-timing"});
  CHECK(r.code == 0);
  CHECK(json_lines(r.out).size() == 26);
}

TEST_CASE("bound sensitivity flag") {
  Result r = run({"verify", "-i", "chugen", "-r", "*=0..3", "--bound-window", "3", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json_lines(r.out)[0]["bound_sensitive"] == false);
}

TEST_CASE("prove the second script") {
  Result r = run({"prove", "--script", "proof-eq2", "--range", "*=0..3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("instances=480") != std::string::npos);
  CHECK(r.out.find("480 passed, 0 failed") != std::string::npos);
}

TEST_CASE("prove with json and trace") {
  Result r = run({"prove", "-s", "proof-eq1", "-r", "*=0..1", "--format", "json", "--dump-trace"});
  CHECK(r.code == 0);
  auto js = json_lines(r.out);
  REQUIRE(js.size() == 1);
  CHECK(js[0]["passed"] == true);
  CHECK(js[0]["first_failure"].is_null());
  CHECK(js[0]["steps"].size() == 10);
  CHECK(js[0]["trace"].get<std::string>().find("window") != std::string::npos);
}

TEST_CASE("specialize one claim") {
  Result r = run({"specialize", "--claim", "nanjundiah1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("structural=match") != std::string::npos);
  Result j = run({"specialize", "--claim", "nanjundiah1", "--format", "json"});
  CHECK(json_lines(j.out)[0]["structural"] == "match");
}

TEST_CASE("specialize every claim") {
  Result r = run({"specialize", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json_lines(r.out).size() == 10);
}

TEST_CASE("fuzz is reproducible") {
  std::vector<std::string> args{"fuzz", "-i", "chugen", "--seed", "1", "--trials", "1000", "-r", "*=0..8",
                                "--format", "json", "--no-timing"};
  Result a = run(args);
  Result b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto js = json_lines(a.out);
  CHECK(js[0]["seed"] == 1);
  CHECK(js[0]["instances"] == 1000);
}

TEST_CASE("arithmetic invariants") {
  Result r = run({"check-arith"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pascal: checked 3721, failed 0") != std::string::npos);
  CHECK(run({"check-arith", "--bound", "5", "--format", "json"}).code == 0);
}

TEST_CASE("catalog inspection") {
  Result l = run({"catalog", "list"});
  CHECK(l.code == 0);
  CHECK(l.out.find("identity chugen (a, b, c, d, n)") != std::string::npos);
  CHECK(l.out.find("script proof-eq1 proves eq1") != std::string::npos);
  Result p = run({"catalog", "print", "gould"});
  CHECK(p.code == 0);
  binomid::Identity I = binomid::parse_identity(p.out);
  CHECK(I.name == "gould");
  CHECK(run({"catalog", "print", "stanres"}).out.rfind("lemma", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  Result r = run({"verify", "--identity", "nosuch"});
  CHECK(r.code == 2);
  CHECK(r.err.find("nosuch") != std::string::npos);
  CHECK(r.err.find("chugen") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--range", "a=3"}).code == 2);
  CHECK(run({"verify", "--range", "a=3..1"}).code == 2);
  CHECK(run({"verify", "-i", "chugen", "--range", "zz=0..1"}).code == 2);
  CHECK(run({"verify", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "--jobs", "0"}).code == 2);
  CHECK(run({"fuzz", "--range", "a=0..3"}).code == 2);
  CHECK(run({"specialize", "--claim", "eq1"}).code == 2);
  CHECK(run({"prove", "--script", "nosuch"}).code == 2);
  CHECK(run({"catalog"}).code == 2);
  CHECK(run({"catalog", "print", "nosuch"}).code == 2);
}

TEST_CASE("help exits with 0") {
  Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("mathematical failures exit with 1") {
  std::ifstream in(binomid::Catalog::builtin_catalog_path());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str() + "identity wrong params(n) :: C(n,1) == C(n,2)\n";
  auto p = std::filesystem::temp_directory_path() / "binomid_cli_wrong.bid";
  std::ofstream(p) << text;
  ::setenv("BINOMID_CATALOG", p.string().c_str(), 1);
  Result r = run({"verify", "--identity", "wrong", "--format", "json"});
  Result ok = run({"verify", "--identity", "chugen", "-r", "*=0..2"});
  ::unsetenv("BINOMID_CATALOG");
  std::filesystem::remove(p);
  CHECK(r.code == 1);
  auto js = json_lines(r.out);
  REQUIRE(js.size() == 1);
  CHECK_FALSE(js[0]["failures"].empty());
  CHECK(ok.code == 0);
}

TEST_CASE("a corrupted catalog is a usage error") {
  auto p = std::filesystem::temp_directory_path() / "binomid_cli_corrupt.bid";
  std::ofstream(p) << "identity broken params(a) :: C(a,\n";
  ::setenv("BINOMID_CATALOG", p.string().c_str(), 1);
  Result r = run({"verify"});
  ::unsetenv("BINOMID_CATALOG");
  std::filesystem::remove(p);
  CHECK(r.code == 2);
  CHECK(r.err.find("binomid_cli_corrupt.bid") != std::string::npos);
}
