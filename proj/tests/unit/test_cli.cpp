#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "boltzgap_cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kRoot);
  const fs::path p = kRoot / (name + ".toml");
  std::ofstream(p) << text;
  return p;
}

// Runs the tool; stderr goes to <out>/stderr.txt.
int run(const std::string& sub, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  fs::create_directories(out);
  const std::string cmd = std::string(BOLTZGAP_EXE) + " " + sub + " --config " + config.string() + " --out " +
                          out.string() + " " + extra + " > " + (out / "stdout.txt").string() + " 2> " +
                          (out / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kHard = std::string(BOLTZGAP_CONFIG_DIR) + "/hard.toml";

}  // namespace

TEST_CASE("unknown key is a configuration error naming the key") {
  const fs::path cfg = write_config("unknown", "[grid]\nn_radial = 64\nspacing = 2\n");
  const fs::path out = kRoot / "unknown";
  CHECK(run("assemble", cfg, out) == 2);
  const json j = json::parse(slurp(out / "stderr.txt"));
  CHECK(j["error"]["key"] == "grid.spacing");
  CHECK(j["error"]["exit_code"] == 2);
}

TEST_CASE("too coarse a grid is a configuration error") {
  const fs::path cfg = write_config("coarse", "[grid]\nn_radial = 4\n");
  const fs::path out = kRoot / "coarse";
  CHECK(run("assemble", cfg, out) == 2);
  const json j = json::parse(slurp(out / "error.json"));
  CHECK(j["error"]["key"] == "grid.n_radial");
}

TEST_CASE("missing matrix and missing config") {
  const fs::path cfg = write_config("nomatrix", "[assemble]\nmatrix = \"/nonexistent/matrix\"\n");
  CHECK(run("spectrum", cfg, kRoot / "nomatrix") == 2);
  CHECK(run("spectrum", kRoot / "absent.toml", kRoot / "absent") == 2);
  const int status = std::system((std::string(BOLTZGAP_EXE) + " spectrum > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("numerical failures exit with 3") {
  const fs::path cfg = write_config("rescale", "[assemble]\nnormalization = \"column-stochastic\"\nmax_rescale = 1e-9\n");
  const fs::path out = kRoot / "rescale";
  CHECK(run("assemble", cfg, out) == 3);
  const json j = json::parse(slurp(out / "error.json"));
  CHECK(j["error"]["code"] == "discretization-inconsistent");
}

TEST_CASE("hard-sphere pipeline") {
  const fs::path out = kRoot / "hard";
  fs::remove_all(out);
  REQUIRE(run("assemble", kHard, out) == 0);
  const json a = json::parse(slurp(out / "assemble.json"));
  CHECK(a["column_identity"]["max_rel_error_interior"].get<double>() < 1e-4);
  CHECK(slurp(out / "assemble.csv").rfind("r,weight,sigma,", 0) == 0);

  REQUIRE(run("spectrum", kHard, out) == 0);
  const json s = json::parse(slurp(out / "spectrum.json"));
  CHECK(s["lambda_star"].get<double>() > 0.0);
  CHECK(s["lambda_star"].get<double>() < s["eta"].get<double>());
  CHECK(s["zero_count"] == 1);
  CHECK(s["no_gap"] == false);

  const fs::path cfg = write_config("hard_evolve", slurp(kHard) + "\n[evolve]\nspectrum = \"" +
                                                     (out / "spectrum.json").string() + "\"\n");
  // The appended section repeats [evolve]; duplicate sections are fine, duplicate keys are not.
  REQUIRE(run("evolve", cfg, out) == 0);
  const json e = json::parse(slurp(out / "evolve.json"));
  CHECK(e["rate_check"]["passed"] == true);
  CHECK(e["rate_check"]["rel_error"].get<double>() < 0.05);

  REQUIRE(run("verify", kHard, out) == 0);
  const json v = json::parse(slurp(out / "verify.json"));
  CHECK(v["passed"] == true);
  const json unit = json::parse(slurp(out / "dp_tail_unit.json"));
  CHECK(unit["expected_fail"] == true);

  REQUIRE(run("report", kHard, out) == 0);
  CHECK(slurp(out / "report.md").find("lambda_star") != std::string::npos);
}

TEST_CASE("verification failure exits with 1") {
  const fs::path base = kRoot / "strict";
  fs::remove_all(base);
  REQUIRE(run("spectrum", kHard, base) == 0);
  std::string text = slurp(kHard);
  text.replace(text.find("rate_tol = 0.05"), 15, "rate_tol = 1e-9");
  const fs::path cfg = write_config("strict", text + "\n[evolve]\nspectrum = \"" + (base / "spectrum.json").string() + "\"\n");
  CHECK(run("evolve", cfg, base) == 1);
}

TEST_CASE("outputs are deterministic") {
  const fs::path a = kRoot / "det_a", b = kRoot / "det_b";
  REQUIRE(run("spectrum", kHard, a) == 0);
  REQUIRE(run("spectrum", kHard, b) == 0);
  CHECK(slurp(a / "spectrum.json") == slurp(b / "spectrum.json"));
  CHECK(slurp(a / "eigenvalues.csv") == slurp(b / "eigenvalues.csv"));
  const fs::path cfg = write_config("det_verify", "[verify]\nchecks = [\"detailed_balance\"]\nn_samples = 50\n");
  REQUIRE(run("verify", cfg, a, "--seed 9") == 0);
  REQUIRE(run("verify", cfg, b, "--seed 9") == 0);
  CHECK(slurp(a / "detailed_balance.csv") == slurp(b / "detailed_balance.csv"));
  REQUIRE(run("verify", cfg, b, "--seed 10") == 0);
  CHECK(slurp(a / "detailed_balance.csv") != slurp(b / "detailed_balance.csv"));
}
