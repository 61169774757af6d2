#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lyapna/cli.hpp"

using namespace lyapna;
using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_tmp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/lyapna_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

const char* kSchrodinger = R"([generator v0]
weight = 1/2
a = 2/t
b = -1
c = 1
d = 0

[generator v1]
weight = 1/2
a = 1/t
b = -1
c = 1
d = 0
)";

const char* kNonelem = R"([generator g]
weight = 1/2
a = 1/t
b = 0
c = 0
d = t

[generator hgh]
weight = 1/2
a = 2/t - t
b = t - 1/t
c = 2/t - 2*t
d = 2*t - 1/t
)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("chi-na on the schrodinger family") {
  std::string spec = write_tmp("sch.cfg", kSchrodinger);
  std::string out = "/tmp/lyapna_test_chi_na.json";
  int rc = cli_run({"--spec", spec, "--seed", "7", "--out", out, "chi-na", "--n", "20", "--S", "10"});
  CHECK(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["result"]["value"] == 1.0);
  CHECK(j["result"]["stderr"] == 0.0);
  CHECK(j["seed"] == 7);
  CHECK(j["spec_hash"].get<std::string>().size() == 16);
}

TEST_CASE("classify produces a verified witness") {
  std::string spec = write_tmp("ne.cfg", kNonelem);
  std::string out = "/tmp/lyapna_test_classify.json";
  int rc = cli_run({"--spec", spec, "--out", out, "classify"});
  CHECK(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["class"] == "NonElementaryCertified");
  CHECK(j["witness_verified"] == true);
  CHECK(j["witness"].size() == 2);
}

TEST_CASE("sweep emits the documented CSV columns") {
  std::string spec = write_tmp("sch2.cfg", kSchrodinger);
  std::string out = "/tmp/lyapna_test_sweep.csv";
  int rc = cli_run({"--spec", spec, "--seed", "3", "--out", out, "sweep", "--t", "1e-2,1e-3",
                    "--n", "200", "--S", "20", "--na-n", "20", "--na-S", "10"});
  CHECK(rc == 0);
  std::string body = slurp(out);
  CHECK(body.find("t,chi,chi_ratio,chi_na,abs_error,n,S,seed") != std::string::npos);
  CHECK(body.find("# tool=lyapna") != std::string::npos);
}

TEST_CASE("byte-identical reruns with the same seed") {
  std::string spec = write_tmp("ne2.cfg", kNonelem);
  std::string out1 = "/tmp/lyapna_test_rep1.json";
  std::string out2 = "/tmp/lyapna_test_rep2.json";
  std::string out3 = "/tmp/lyapna_test_rep3.json";
  CHECK(cli_run({"--spec", spec, "--seed", "11", "--out", out1, "chi-na", "--n", "40", "--S",
                 "12"}) == 0);
  CHECK(cli_run({"--spec", spec, "--seed", "11", "--out", out2, "chi-na", "--n", "40", "--S",
                 "12"}) == 0);
  CHECK(slurp(out1) == slurp(out2));
  // the thread count must not show up in the sampled values
  CHECK(cli_run({"--spec", spec, "--seed", "11", "--threads", "1", "--out", out3, "chi-na",
                 "--n", "40", "--S", "12"}) == 0);
  nlohmann::json j1 = nlohmann::json::parse(slurp(out1));
  nlohmann::json j3 = nlohmann::json::parse(slurp(out3));
  CHECK(j1["result"] == j3["result"]);
}

TEST_CASE("seed precedence: flag over environment over default") {
  std::string spec = write_tmp("ne3.cfg", kNonelem);
  std::string out = "/tmp/lyapna_test_seed.json";
  setenv(kSeedEnvVar, "99", 1);
  CHECK(cli_run({"--spec", spec, "--out", out, "chi-na", "--n", "5", "--S", "3"}) == 0);
  CHECK(json::parse(slurp(out))["seed"] == 99);
  CHECK(cli_run({"--spec", spec, "--seed", "4", "--out", out, "chi-na", "--n", "5", "--S", "3"}) == 0);
  CHECK(json::parse(slurp(out))["seed"] == 4);
  unsetenv(kSeedEnvVar);
  CHECK(cli_run({"--spec", spec, "--out", out, "chi-na", "--n", "5", "--S", "3"}) == 0);
  CHECK(json::parse(slurp(out))["seed"] == 0);
}

TEST_CASE("exit codes") {
  // usage: missing spec file
  CHECK(cli_run({"--spec", "/tmp/lyapna_does_not_exist.cfg", "classify"}) == 1);
  // usage: determinant failure in the config
  std::string bad = write_tmp("bad.cfg", "[generator g]\nweight = 1\na = 1/t\nb = 0\nc = 0\nd = 1/t\n");
  CHECK(cli_run({"--spec", bad, "classify"}) == 1);
  // computational: enumeration cap exceeded
  std::string spec = write_tmp("sch3.cfg", kSchrodinger);
  CHECK(cli_run({"--spec", spec, "chi-exact", "--n", "40"}) == 2);
}

TEST_CASE("kak subcommand reconstructs") {
  std::string spec = write_tmp("ne4.cfg", kNonelem);
  std::string out = "/tmp/lyapna_test_kak.json";
  CHECK(cli_run({"--spec", spec, "--out", out, "kak", "--word", "0,1,0,0"}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["reconstructs"] == true);
  CHECK(j["m_integral"] == true);
  CHECK(j["n_integral"] == true);
}

TEST_CASE("hybrid-check emits a deviation table") {
  std::string spec = write_tmp("ne5.cfg", kNonelem);
  std::string out = "/tmp/lyapna_test_hyb.csv";
  CHECK(cli_run({"--spec", spec, "--seed", "2", "--out", out, "hybrid-check", "--t",
                 "1e-2,1e-3", "--points", "2"}) == 0);
  std::string body = slurp(out);
  CHECK(body.find("generator,point,t,sigma_arch,sigma_na,deviation") != std::string::npos);
}

TEST_CASE("residual subcommand reports atoms") {
  std::string spec = write_tmp("ne6.cfg", kNonelem);
  std::string out = "/tmp/lyapna_test_res.json";
  CHECK(cli_run({"--spec", spec, "--seed", "5", "--out", out, "residual", "--n", "20", "--S",
                 "40"}) == 0);
  json j = json::parse(slurp(out));
  CHECK(j["atoms"].size() >= 2);
  double mass = 0.0;
  for (const auto& a : j["atoms"]) mass += a["mass"].get<double>();
  CHECK(mass <= 1.0 + 1e-12);
}

}  // TEST_SUITE
