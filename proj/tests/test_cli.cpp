#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "divis_cli_tests";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args, const std::string& stdin_text = {}) {
  static int counter = 0;
  auto dir = scratch_dir();
  auto out = dir / ("out" + std::to_string(counter) + ".txt");
  auto err = dir / ("err" + std::to_string(counter) + ".txt");
  auto in = dir / ("in" + std::to_string(counter) + ".txt");
  ++counter;

  std::string cmd = std::string("\"") + DIVIS_BIN + "\" " + args;
  if (!stdin_text.empty()) {
    std::ofstream(in, std::ios::binary) << stdin_text;
    cmd += " < \"" + in.string() + "\"";
  }
  cmd += " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";

  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string spec_path(const std::string& name) {
  return (fs::path(DIVIS_SPEC_DIR) / name).string();
}

std::string golden(const std::string& name) {
  return slurp(fs::path(DIVIS_GOLDEN_DIR) / name);
}

}  // namespace

TEST_CASE("analyze on a zero-bearing spec reports the t0 bound") {
  auto r = run_cli("analyze \"" + spec_path("bernoulli_pm1.json") + "\"");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["command"] == "analyze");
  CHECK(doc["admissibility"]["admissible"] == false);
  CHECK(std::abs(doc["zero_bound"]["t0"].get<double>() - 1.0) < 1e-9);
  auto again = run_cli("analyze \"" + spec_path("bernoulli_pm1.json") + "\"");
  CHECK(again.out == r.out);
}

TEST_CASE("lambda-scan maps the biased coin to the integers") {
  auto r = run_cli("--t-max 2 --n-max 4 --mesh 0.25 lambda-scan \"" +
                   spec_path("biased_bernoulli.json") + "\"");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["lambda"]["summary"]["min_member"].get<double>() == 1.0);
  CHECK(doc["lambda"]["summary"]["all_member"] == false);
  for (const auto& p : doc["lambda"]["points"]) {
    double t = p["t"].get<double>();
    bool integer = std::abs(t - std::round(t)) < 1e-9;
    CHECK((p["verdict"] == "MEMBER") == integer);
  }
}

TEST_CASE("winding output is byte-stable against the golden file") {
  auto r = run_cli("winding \"" + spec_path("delta3.json") + "\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == golden("winding_delta3.json"));
  auto doc = json::parse(r.out);
  CHECK(doc["winding"] == 3);
  CHECK(doc["constraints"]["denominator_divisors"] == json::array({1, 3}));
}

TEST_CASE("roots respects the group") {
  auto even = run_cli("roots --n 2 \"" + spec_path("z2_alpha03.json") + "\"");
  REQUIRE(even.exit_code == 0);
  auto doc = json::parse(even.out);
  CHECK(doc["count"] == 0);
  CHECK(doc["exhaustive"] == true);

  auto z = run_cli("roots --n 2 \"" + spec_path("square_bernoulli.json") + "\"");
  REQUIRE(z.exit_code == 0);
  auto zdoc = json::parse(z.out);
  CHECK(zdoc["root"]["atoms"][0]["weight"].get<double>() ==
        doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("z2 and delta1 match their golden outputs") {
  auto z = run_cli("z2 --alpha 0.3 --n 2");
  REQUIRE(z.exit_code == 0);
  CHECK(z.out == golden("z2_alpha03_n2.json"));

  auto d = run_cli("delta1 --modulus 3 --q 1/2");
  REQUIRE(d.exit_code == 0);
  CHECK(d.out == golden("delta1_n3_q12.json"));
  auto doc = json::parse(d.out);
  CHECK(doc["brute"] == true);
  CHECK(doc["congruence_rule"] == false);
}

TEST_CASE("specs can arrive on stdin") {
  std::string spec = slurp(spec_path("delta3.json"));
  auto r = run_cli("winding -", spec);
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["winding"] == 3);
}

TEST_CASE("domain errors exit 2, usage errors exit 1") {
  auto no_zeros = run_cli("t0 \"" + spec_path("biased_bernoulli.json") + "\"");
  CHECK(no_zeros.exit_code == 2);
  auto doc = json::parse(no_zeros.out);
  CHECK(doc["error"]["code"] == "no_zeros");

  auto bad = scratch_dir() / "broken.json";
  std::ofstream(bad) << "{nope";
  auto parse = run_cli("analyze \"" + bad.string() + "\"");
  CHECK(parse.exit_code == 1);

  auto missing = run_cli("analyze \"" + (scratch_dir() / "missing.json").string() + "\"");
  CHECK(missing.exit_code == 1);

  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("--bogus-flag analyze x").exit_code == 1);
  CHECK(run_cli("frobnicate x").exit_code == 1);
  CHECK(run_cli("z2 --alpha 2.0 --n 2").exit_code == 1);
  CHECK(run_cli("delta1 --modulus 3 --q nonsense").exit_code == 1);
}

TEST_CASE("help is a success") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("analyze --help").exit_code == 0);
}

TEST_CASE("text mode renders a readable projection") {
  auto r = run_cli("--text winding \"" + spec_path("delta3.json") + "\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("command: winding") != std::string::npos);
  CHECK(r.out.find("winding: 3") != std::string::npos);
}

TEST_CASE("lattice specs work end to end") {
  auto r = run_cli("analyze \"" + spec_path("lattice_cos.json") + "\"");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["admissibility"]["admissible"] == false);
  CHECK(doc["admissibility"]["failure"] == "has_zeros");
  // zeros of cos(h y) with h = 0.5 sit at y = pi and 3*pi
  auto zeros = doc["admissibility"]["zeros"];
  REQUIRE(zeros.size() == 2);
  CHECK(std::abs(zeros[0]["location"].get<double>() - 3.14159265) < 1e-6);
}
