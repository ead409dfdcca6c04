#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "recur/cli.hpp"

using namespace recur;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("recur_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string spec(const std::string& name, const std::string& coeffs, const std::string& initial) {
  return write(name, "{\"order\": " + std::to_string(std::count(coeffs.begin(), coeffs.end(), ',') + 1) +
                         ", \"coeffs_p0_first\": [" + coeffs + "], \"initial_terms\": [" + initial + "]}");
}

const std::string kTrib = spec("trib.json", "1, 1, 1", "0, 1, 1");
const std::string kTribBack = spec("trib_back.json", "1, -1, -1", "0, 0, 1");
const std::string kPow2 = spec("pow2.json", "2", "1");
const std::string kPlus4 = spec("plus4.json", "-4, 0", "2, 0");

}  // namespace

TEST_CASE("analyze") {
  Run r = run({"analyze", kTrib});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["dominance"]["kind"] == "RealDominant");
  CHECK(r.json()["char_poly"] == "X^3 - X^2 - X - 1");
  r = run({"analyze", kPlus4});
  CHECK(r.json()["dominance"]["kind"] == "ComplexPairDominant");
  r = run({"analyze", write("bad.json", "{\"order\": 2, ")});
  CHECK(r.code == kExitInput);
  CHECK(!r.err.empty());
  CHECK(run({"analyze", write("zero.json", "{\"order\": 1, \"coeffs_p0_first\": [0], \"initial_terms\": [1]}")}).code ==
        kExitInput);
}

TEST_CASE("certify exit codes") {
  Run ok = run({"certify", kTrib, kTribBack});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.json()["dependence"]["delta"] == "2");
  Run again = run({"certify", kTrib, kTribBack});
  CHECK(again.out == ok.out);

  Run rej = run({"certify", kPow2, kPlus4});
  CHECK(rej.code == kExitHypothesis);
  CHECK(rej.json()["hypothesis"] == "beta2_over_beta1_not_root_of_unity");

  Run unknown = run({"certify", kPow2, spec("b3.json", "-3, 1", "0, 1")});
  CHECK(unknown.code == kExitUndecided);
  CHECK(unknown.err.find("dependence not found up to bound") != std::string::npos);

  std::string five = spec("five.json", "5", "1");
  std::string pair5 = spec("pair5.json", "-5, 2", "0, 1");
  CHECK(run({"certify", five, pair5}).code == kExitOk);
  CHECK(run({"certify", five, pair5, "--mode", "paper_faithful"}).code == kExitInput);
  CHECK(run({"certify", kTrib, kTribBack, "--mode", "loose"}).code == kExitInput);
  CHECK(run({"certify", kTrib, kTribBack, "--precision-bits", "8"}).code == kExitInput);
}

TEST_CASE("search and self") {
  Run r = run({"search", kPow2, kPlus4, "--rangeA", "20", "--rangeB", "20"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["hits"].size() == 5);
  CHECK(r.json()["hits"][1]["value"] == "32");

  r = run({"self", kTrib, "--N", "8"});
  REQUIRE(r.code == kExitOk);
  nlohmann::json groups = r.json()["groups"];
  REQUIRE(groups.size() == 4);
  CHECK(groups[0]["value"] == "0");
  CHECK(groups[0]["indices"] == nlohmann::json({-4, -1, 0}));
  CHECK(groups[3]["indices"] == nlohmann::json({-8, 4}));
  CHECK(run({"self", kPow2, "--N", "3"}).code == kExitInput);

  std::string cert = (workdir() / "trib_cert.json").string();
  REQUIRE(run({"certify", kTrib, kTribBack, "--out", cert}).code == kExitOk);
  r = run({"search", kTrib, kTribBack, "--rangeA", "40", "--rangeB", "80", "--certificate", cert});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["hit_law"]["gap_violations"] == 0);
  CHECK(r.json().contains("certificate_hash"));
}

TEST_CASE("family") {
  Run r = run({"family", "case-ii", "--a", "1", "--b", "-1"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["char_poly_a"] == "X^3 + X^2 - X + 1");
  std::string prefix = (workdir() / "c2").string();
  r = run({"family", "case-ii", "--a", "1", "--b", "-1", "--out", prefix});
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(prefix + ".a.json"));
  CHECK(fs::exists(prefix + ".b.json"));
  CHECK(run({"certify", prefix + ".a.json", prefix + ".b.json"}).code == kExitOk);

  r = run({"family", "case-i", "--a", "0", "--b", "2", "--q", "3"});
  CHECK(r.code == kExitHypothesis);
  CHECK(r.json()["clause"] == "parity");
  r = run({"family", "bravo", "--a", "1", "--b", "1"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["char_poly_b"] == "X^3 + X^2 + X - 1");
  CHECK(run({"family", "case-x"}).code == kExitInput);
  std::string params = write("params.json", "{\"a\": 1, \"b\": 3, \"p\": 1, \"q\": 2, \"pad_a\": [-1, 1]}");
  r = run({"family", "case-i", "--params", params});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["char_poly_a"] == "X^2 - 4X + 3");
}

TEST_CASE("verify") {
  std::string cert = (workdir() / "verify_cert.json").string();
  REQUIRE(run({"certify", kTrib, kTribBack, "--out", cert}).code == kExitOk);
  Run r = run({"verify", cert, "--rangeA", "30", "--rangeB", "30"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["reproduced"] == true);
  CHECK(r.json()["inequality"]["consistent"] == true);

  nlohmann::json tampered = nlohmann::json::parse(std::ifstream(cert));
  tampered["ledger"]["constants"]["c0"]["mid"] = "1";
  std::string bad = write("tampered.json", tampered.dump());
  r = run({"verify", bad});
  CHECK(r.code == kExitHypothesis);
  CHECK(r.json()["reproduced"] == false);
  CHECK(run({"verify", kTrib}).code == kExitInput);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"certify", kTrib}).code == kExitInput);
  CHECK(run({"certify", kTrib, (workdir() / "missing.json").string()}).code == kExitInput);
  Run help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("certify") != std::string::npos);
}
