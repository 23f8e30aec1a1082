#include <sstream>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"

using ttq::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("quantize prints the tuned oscillator") {
  const auto r = invoke({"quantize", "--map", "tt2", "--n", "1", "--expr", "p1^2/(2*m) + (m*omega^2*q1^2)/2"});
  CHECK(r.code == 0);
  CHECK(r.out == "(1/2)*m*omega^2*q1^2 - (hbar^2/(2*m))*(d2/dq1^2 + d2/dp1^2)\n");
}

TEST_CASE("quantize prints the prequantized position") {
  const auto r = invoke({"quantize", "--map", "ks", "--n", "1", "--expr", "q1"});
  CHECK(r.code == 0);
  CHECK(r.out == "q1 + i*hbar*d/dp1\n");
}

TEST_CASE("commute verifies the angular momentum relation") {
  const auto r = invoke({"commute", "--map", "tt2", "--n", "3", "--a", "L1", "--b", "L2", "--expect", "i*hbar*TT2(L3)"});
  CHECK(r.code == 0);
  CHECK(r.out == "PASS\n");
  const auto wrong = invoke({"commute", "--map", "tt2", "--n", "3", "--a", "L1", "--b", "L2", "--expect", "TT2(L3)"});
  CHECK(wrong.code == 1);
  CHECK(wrong.out.rfind("FAIL", 0) == 0);
  const auto canonical = invoke({"commute", "--map", "tt2", "--a", "q1", "--b", "p1", "--expect", "i*hbar"});
  CHECK(canonical.code == 0);
  const auto free = invoke({"commute", "--map", "tt2", "--n", "3", "--a", "L3", "--b", "H_FP", "--expect", "0"});
  CHECK(free.code == 0);
}

TEST_CASE("operator expressions compose") {
  // [TT2(q1)^2, TT2(p1)] = 2 i hbar q1.
  const auto r = invoke({"commute", "--a", "TT2(q1)*TT2(q1)", "--b", "TT2(p1)", "--expect", "2*i*hbar*q1"});
  CHECK(r.code == 0);
  const auto pow = invoke({"commute", "--a", "TT2(q1)^2", "--b", "TT2(p1)", "--expect", "2*i*hbar*q1"});
  CHECK(pow.code == 0);
  const auto plain = invoke({"commute", "--map", "ks", "--a", "q1", "--b", "p1"});
  CHECK(plain.out == "i*hbar\n");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  const auto bad = invoke({"quantize", "--expr", "q1 +"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("position") != std::string::npos);
  CHECK(invoke({"quantize", "--map", "weyl", "--expr", "q1"}).code == 2);
  CHECK(invoke({"quantize", "--n", "2", "--expr", "L1"}).code == 2);
  CHECK(invoke({"quantize"}).code == 2);
  CHECK(invoke({"spectrum", "--grid", "2"}).code == 2);
  CHECK(invoke({"transform", "--transform", "polar"}).code == 2);
  CHECK(invoke({"quantize", "--help"}).code == 0);
}

TEST_CASE("json output mirrors the report") {
  const auto r = invoke({"quantize", "--map", "tt2", "--expr", "H_SHO", "--json", "--strict"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["operator"] == "(1/2)*m*omega^2*q1^2 - (hbar^2/(2*m))*(d2/dq1^2 + d2/dp1^2)");
  CHECK(j["polarized"] == "(1/2)*m*omega^2*q1^2 - (hbar^2/(2*m))*d2/dq1^2");
  CHECK(j["preserves_polarization"] == true);
  CHECK(j["tuning"]["tt2_quadratic"] == 1);
  CHECK(j["terms"].size() == 3);
}

TEST_CASE("transform reports the chart dependence of canonical quantization") {
  const auto c = invoke({"transform", "--map", "c", "--transform", "shear", "--expr", "p1*p2", "--expect", "differs"});
  CHECK(c.code == 0);
  CHECK(c.out.find("diagram: differs") != std::string::npos);
  CHECK(c.out.find("tautological field invariant: yes") != std::string::npos);
  const auto ks = invoke({"transform", "--map", "ks", "--transform", "shear", "--expr", "p1*p2", "--expect", "commutes"});
  CHECK(ks.code == 0);
  const auto wrong = invoke({"transform", "--map", "ks", "--transform", "rotate2d(1/3)", "--expr", "q1*p2", "--expect", "differs"});
  CHECK(wrong.code == 1);
  const auto j = nlohmann::json::parse(invoke({"transform", "--transform", "scale(3)", "--json"}).out);
  CHECK(j["new_momenta"][0] == "(1/3)*p1");
  CHECK(j["tautological_invariant"] == true);
}

TEST_CASE("spectrum emits the report") {
  const auto r = invoke({"spectrum", "--grid", "2000", "--domain", "10", "--params", "hbar=1,m=1,omega=1", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["grid"]["N"] == 2000);
  REQUIRE(j["eigenvalues"].size() == 6);
  for (int n = 0; n < 6; ++n) CHECK(j["rel_errors"][n].get<double>() < 1e-3);
  CHECK(invoke({"spectrum", "--map", "ks"}).code == 2);
}

TEST_CASE("check-suite passes and is deterministic") {
  const auto a = invoke({"check-suite", "--seed", "7", "--json"});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  for (const auto& row : j) {
    INFO(row["check"]);
    CHECK(row["pass"] == true);
  }
  const auto first = invoke({"quantize", "--map", "tt1", "--n", "3", "--expr", "L3"});
  const auto second = invoke({"quantize", "--map", "tt1", "--n", "3", "--expr", "L3"});
  CHECK(first.out == second.out);
}
