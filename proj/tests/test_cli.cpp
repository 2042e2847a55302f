#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rpcm/runner.hpp"

using namespace rpcm;
namespace fs = std::filesystem;

namespace {

ExperimentConfig low_slope_config() {
  io::json j;
  j["schema_version"] = 1;
  j["family"] = "linear-low-slope";
  j["nu_a"] = {{"type", "dirac"}, {"value", 0.0}};
  j["nu_b"]["type"] = "discrete";
  j["nu_b"]["atoms"] = io::json::array(
      {{{"param", 1.0}, {"weight", 0.5}}, {{"param", 2.0}, {"weight", 0.5}}});
  j["seed"] = 7;
  return ExperimentConfig::from_json(j);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("rpcm_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config round-trips through json") {
  ExperimentConfig cfg = low_slope_config();
  io::json j = cfg.to_json();
  ExperimentConfig back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);
}

TEST_CASE("unknown config fields are rejected with their path") {
  io::json j = low_slope_config().to_json();
  j["mystery"] = 1;
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                       doctest::Contains("/mystery"), ConfigError);
  j.erase("mystery");
  j["ulam"]["typo_knob"] = 3;
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                       doctest::Contains("/ulam/typo_knob"), ConfigError);
}

TEST_CASE("schema version and measures are mandatory") {
  io::json j = low_slope_config().to_json();
  j["schema_version"] = 2;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
  j["schema_version"] = 1;
  j.erase("nu_b");
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
}

TEST_CASE("sequences command emits the closed-form x column") {
  ExperimentConfig cfg = low_slope_config();
  cfg.sequences.n_terms = 6;
  cfg.sequences.m_terms = 5;
  cfg.sequences.beta = 2.0;
  fs::path out = fresh_dir("seq");
  std::ostringstream log;
  int rc = run_command("sequences", cfg, {.out_dir = out.string()}, log);
  CHECK(rc == 0);
  std::string csv = slurp(out / "sequences_beta2.csv");
  CHECK(csv.find("n,x_n,y_n,predicted_mu_Xn\r\n") == 0);
  CHECK(csv.find("1,0.5,1,") != std::string::npos);
  CHECK(csv.find("2,0.25,0.75,") != std::string::npos);
  CHECK(csv.find("3,0.125,") != std::string::npos);
  CHECK(csv.find("6,0.015625,") != std::string::npos);
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
  ExperimentConfig cfg = low_slope_config();
  cfg.simulate.steps = 50000;
  cfg.simulate.n_cells = 6;
  cfg.sequences.n_terms = 20;
  cfg.sequences.m_terms = 10;
  cfg.sequences.beta = 1.0;

  fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  std::ostringstream log;
  REQUIRE(run_command("simulate", cfg, {.out_dir = a.string()}, log) == 0);
  REQUIRE(run_command("simulate", cfg, {.out_dir = b.string()}, log) == 0);
  CHECK(slurp(a / "occupation.csv") == slurp(b / "occupation.csv"));

  REQUIRE(run_command("sequences", cfg, {.out_dir = a.string()}, log) == 0);
  REQUIRE(run_command("sequences", cfg, {.out_dir = b.string()}, log) == 0);
  CHECK(slurp(a / "sequences_beta1.csv") == slurp(b / "sequences_beta1.csv"));

  // manifests agree apart from the timestamp field
  auto strip_created = [](const fs::path& p) {
    io::json j = io::json::parse(slurp(p));
    j.erase("created_unix_ms");
    return j;
  };
  CHECK(strip_created(a / "manifest.json") == strip_created(b / "manifest.json"));

  // a different seed changes the simulated artifact
  fs::path c = fresh_dir("det_c");
  REQUIRE(run_command("simulate", cfg, {.seed = 999, .out_dir = c.string()}, log) == 0);
  CHECK(slurp(a / "occupation.csv") != slurp(c / "occupation.csv"));
}

TEST_CASE("manifest hashes match the files on disk") {
  ExperimentConfig cfg = low_slope_config();
  cfg.sequences.n_terms = 10;
  cfg.sequences.m_terms = 5;
  cfg.sequences.beta = 1.0;
  fs::path out = fresh_dir("hash");
  std::ostringstream log;
  REQUIRE(run_command("sequences", cfg, {.out_dir = out.string()}, log) == 0);
  io::json man = io::json::parse(slurp(out / "manifest.json"));
  REQUIRE(man.contains("files"));
  REQUIRE(!man["files"].empty());
  for (const auto& f : man["files"]) {
    fs::path p = out / f["name"].get<std::string>();
    CHECK(io::hex64(io::fnv1a_file(p)) == f["fnv1a64"].get<std::string>());
    CHECK(fs::file_size(p) == f["bytes"].get<std::uint64_t>());
  }
}

TEST_CASE("validate command reports the counterexample's failing condition") {
  io::json j;
  j["schema_version"] = 1;
  j["family"] = "counterexample";
  j["nu_a"] = {{"type", "dirac"}, {"value", 0.0}};
  j["nu_b"] = {{"type", "dirac"}, {"value", 0.8}};
  ExperimentConfig cfg = ExperimentConfig::from_json(j);
  fs::path out = fresh_dir("validate");
  std::ostringstream log;
  REQUIRE(run_command("validate", cfg, {.out_dir = out.string()}, log) == 0);
  io::json rep = io::json::parse(slurp(out / "conditions.json"));
  CHECK(rep["bounded_slope_a"]["status"] == "fail");
  CHECK(rep["integrable_gap_b"]["status"] == "pass");
  CHECK(rep["all_pass"] == false);
}

TEST_CASE("unknown commands and examples are rejected") {
  ExperimentConfig cfg = low_slope_config();
  std::ostringstream log;
  CHECK(run_command("explode", cfg, {.out_dir = fresh_dir("bad").string()}, log) == 2);
  CHECK(run_command("reproduce", cfg,
                    {.out_dir = fresh_dir("bad2").string(), .example_id = "nope"},
                    log) == 2);
}
