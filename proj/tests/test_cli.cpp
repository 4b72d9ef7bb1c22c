#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hs/cli.hpp"
#include "hs/io.hpp"
#include "support/golden_cases.hpp"
#include "support/oracles.hpp"

using namespace hs;

namespace {

const std::string kFixtures = HS_FIXTURE_DIR;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/measures/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden files are reproduced byte for byte") {
  for (const auto& c : test::golden_cases()) {
    CAPTURE(c.name);
    const Outcome r = run_cli(test::golden_argv(c, kFixtures));
    CHECK(r.code == 0);
    CHECK(r.out == slurp(kFixtures + "/golden/" + c.name + ".json"));
  }
}

TEST_CASE("documented examples") {
  const Outcome eval = run_cli({"herglotz", "eval", "--measure", fixture("delta0.json"), "--z", "0,1"});
  CHECK(eval.code == 0);
  const auto j = ojson::parse(eval.out);
  CHECK(j["value"] == "0+1i");
  CHECK(j["meta"]["tool"] == "hs");
  CHECK(j["meta"].contains("generated_at"));

  const auto map = ojson::parse(run_cli({"couple", "map", "--alpha", "1", "--c", "0"}).out);
  CHECK(map["theta"].get<double>() == doctest::Approx(0.785398163397448).epsilon(1e-14));
  CHECK(map["gamma"].get<double>() == -1.0);
  CHECK(map["v"] == "0-1i");

  const Outcome oracle = run_cli({"oracle", "verify", "--seed", "1", "--dim", "4", "--alphas", "0.1,1,10"});
  CHECK(oracle.code == 0);
  const auto o = ojson::parse(oracle.out);
  CHECK(o["schema"] == "oracle-suite/1");
  CHECK(o["max_deviation"].get<double>() < 1e-8);
}

TEST_CASE("inverse coupling map") {
  const auto j = ojson::parse(run_cli({"couple", "map", "--theta", "0.78539816339744828", "--c", "0"}).out);
  CHECK(std::abs(j["alpha"].get<double>() - 1.0) < 1e-14);
  CHECK(run_cli({"couple", "map", "--theta", "0", "--c", "2"}).code == 3);
}

TEST_CASE("exit codes") {
  const Outcome unknown = run_cli({"herglotz", "eval", "--bogus"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({}).code == 1);

  CHECK(run_cli({"measure", "validate", "--measure", fixture("negative_weight.json")}).code == 2);
  CHECK(run_cli({"herglotz", "eval", "--measure", fixture("negative_weight.json"), "--z", "0,1"}).code == 2);
  CHECK(run_cli({"herglotz", "eval", "--measure", fixture("missing.json"), "--z", "0,1"}).code == 2);
  CHECK(run_cli({"herglotz", "eval", "--measure", fixture("delta0.json"), "--z", "0,-1"}).code == 2);
  CHECK(run_cli({"scan", "energies", "--measure", fixture("delta0.json"), "--window", "1,0"}).code == 2);

  const Outcome forbidden = run_cli({"spectrum", "energy2theta", "--measure", fixture("delta0.json"), "--y", "0"});
  CHECK(forbidden.code == 3);
  CHECK(ojson::parse(forbidden.err)["error"] == "ForbiddenEnergy");
  CHECK(run_cli({"herglotz", "boundary", "--measure", fixture("uniform01.json"), "--y", "0.5"}).code == 3);
  CHECK(run_cli({"spectrum", "extension", "--measure", fixture("delta0.json"), "--theta", "1.5707963267948966",
                 "--window", "-1,1"})
            .code == 3);
}

TEST_CASE("determinism: re-runs and worker counts give identical bytes") {
  const std::vector<std::string> base{"scan",    "energies", "--measure", fixture("two_atom.json"),
                                      "--window", "-2,2",     "--grid",    "501",
                                      "--theta-count", "7",   "--no-meta"};
  const Outcome first = run_cli(base);
  REQUIRE(first.code == 0);
  CHECK(run_cli(base).out == first.out);
  auto par = base;
  par.insert(par.end(), {"--parallel", "4"});
  CHECK(run_cli(par).out == first.out);

  const std::vector<std::string> oracle{"oracle", "verify", "--seed", "5", "--models", "3", "--no-meta"};
  CHECK(run_cli(oracle).out == run_cli(oracle).out);
}

TEST_CASE("scan reports: json schema and csv columns") {
  const Outcome json = run_cli({"scan", "energies", "--measure", fixture("delta0.json"), "--window", "-1,1", "--grid",
                                "3", "--thetas", "0.78539816339744828", "--no-meta"});
  REQUIRE(json.code == 0);
  const auto j = ojson::parse(json.out);
  CHECK(j["schema"] == "ad-scan/1");
  CHECK(j["forbidden_fraction"].get<double>() == doctest::Approx(1.0 / 3.0));

  const Outcome csv = run_cli({"scan", "energies", "--measure", fixture("delta0.json"), "--window", "-1,1", "--grid",
                               "3", "--thetas", "0.78539816339744828", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.starts_with("y,class,I_or_cap,theta,alpha,near_atom\n"));
}

TEST_CASE("measure validate accepts every serialized measure") {
  const auto dir = std::filesystem::temp_directory_path() / "hs_cli_roundtrip";
  std::filesystem::create_directories(dir);
  std::mt19937_64 gen(13);
  for (int i = 0; i < 30; ++i) {
    const Measure m = test::random_measure(gen);
    const auto path = (dir / ("m" + std::to_string(i) + ".json")).string();
    std::ofstream(path) << dump_json(measure_to_json(m)) << '\n';
    const Outcome r = run_cli({"measure", "validate", "--measure", path, "--no-meta"});
    CHECK(r.code == 0);
    CHECK(ojson::parse(r.out)["valid"] == true);
  }
  std::filesystem::remove_all(dir);
}
