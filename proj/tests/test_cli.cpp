#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qbailey/cli.hpp"

using namespace qbailey;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("verify euler at level 3") {
  auto r = run({"verify", "euler", "--N", "3", "--trunc", "100"});
  CHECK(r.code == 0);
  auto reports = lines(r.out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["status"] == "pass");
  CHECK(reports[0]["T"] == 100);
  CHECK(reports[0]["D"] == 6);
}

TEST_CASE("verify lemma3") {
  auto r = run({"verify", "lemma3", "--N", "2", "--M", "6", "--ell", "1", "--trunc", "60"});
  CHECK(r.code == 0);
  REQUIRE(lines(r.out).size() == 1);
}

TEST_CASE("lemma3 without M sweeps M in parameter order") {
  auto r = run({"verify", "lemma3", "--N", "2", "--ell", "0", "--trunc", "20", "--jobs", "3"});
  CHECK(r.code == 0);
  auto reports = lines(r.out);
  REQUIRE(reports.size() == 9);
  for (int M = 0; M <= 8; ++M) CHECK(reports[static_cast<std::size_t>(M)]["params"]["M"] == M);
}

TEST_CASE("perturbed rhs fails at the perturbed exponent") {
  auto r = run({"verify", "agn", "--N", "2", "--k", "1", "--trunc", "0", "--perturb", "exponent=3"});
  CHECK(r.code == 1);
  auto reports = lines(r.out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["status"] == "fail");
  CHECK(reports[0]["T"] == 60);
  CHECK(reports[0]["first_mismatch"]["exponent"] == "3");
}

TEST_CASE("perturbation on a fractional exponent") {
  auto r = run({"verify", "euler-levelN", "--N", "2", "--trunc", "10", "--perturb", "exponent=1/2"});
  CHECK(r.code == 1);
  CHECK(lines(r.out)[0]["first_mismatch"]["exponent"] == "1/2");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "ag", "--bogus", "1"}).code == 2);
  CHECK(run({"verify", "ag", "--r", "1"}).code == 2);
  CHECK(run({"verify", "ag", "--k", "0"}).code == 2);
  CHECK(run({"verify", "lemma3", "--N", "2", "--ell", "3"}).code == 2);
  CHECK(run({"verify", "euler", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "euler", "--trunc", "-1"}).code == 2);
  CHECK(run({"verify", "agn", "--perturb", "3"}).code == 2);
  CHECK(run({"verify", "agn", "--trunc", "10", "--perturb", "exponent=11"}).code == 2);
  CHECK(run({"verify", "rho-check", "--rho1", "x"}).code == 2);
  CHECK(run({"suite", "--profile", "huge"}).code == 2);
  auto r = run({"verify", "nonsense"});
  CHECK(r.out.empty());
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("each identity runs from the command line") {
  CHECK(run({"verify", "euler", "--ell", "2", "--trunc", "40"}).code == 0);
  CHECK(run({"verify", "ag", "--k", "2", "--ell", "1", "--trunc", "30"}).code == 0);
  CHECK(run({"verify", "pair-check", "--ell", "1", "--k", "2", "--L", "6", "--trunc", "30"}).code == 0);
  CHECK(run({"verify", "rho-check", "--rho1", "-1", "--rho2", "q^3", "--M", "3", "--trunc", "30"}).code == 0);
  CHECK(run({"verify", "rho-check", "--rho1", "q^(1/2)", "--rho2", "inf", "--M", "2", "--trunc", "20"}).code == 0);
  CHECK(run({"verify", "triple-product", "--r", "1", "--s", "4", "--trunc", "30"}).code == 0);
  auto both_inf = run({"verify", "rho-check", "--rho1", "inf", "--rho2", "inf", "--ell", "0", "--trunc", "20"});
  CHECK(both_inf.code == 0);
  CHECK(lines(both_inf.out).size() == 9);
}

TEST_CASE("json output is byte-identical across runs and job counts") {
  std::vector<std::string> args = {"verify", "lemma3", "--N", "3", "--trunc", "15", "--jobs", "1"};
  auto a = run(args);
  args.back() = "4";
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("csv of the quick suite is deterministic and all pass") {
  auto a = run({"suite", "--profile", "quick", "--format", "csv", "--jobs", "2"});
  auto b = run({"suite", "--profile", "quick", "--format", "csv"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("identity,", 0) == 0);
}

TEST_CASE("out writes to a file") {
  std::string path = "qbailey_cli_test_out.json";
  auto r = run({"verify", "triple-product", "--trunc", "20", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(lines(ss.str()).size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("failing tasks become error reports") {
  Task t;
  t.report.identity = "ag";
  t.body = [](IdentityReport&) { throw std::runtime_error("boom"); };
  auto out = run_tasks({t}, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0].status == Status::error);
  CHECK(out[0].message == "boom");
  CHECK_FALSE(out[0].first_mismatch);
}
