#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "rigc/experiment.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "rigc_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(RIGC_CLI_PATH) + " " + args + " >" + (kWork / "stdout.txt").string() +
                          " 2>" + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = kWork / name;
  std::ofstream(p) << text;
  return p;
}

const std::string kEstar =
    R"("inputs": {"l_pmf": {"pmf": [[1, 0.5], [3, 0.5]]}, "catalog": [{"graph": "K3", "weight": 1.0}]})";

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~Workspace() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE("theory subcommand") {
  Workspace ws;
  const auto cfg = write_config("theory.json", R"({"schema_version": 1, "mode": "theory", )" + kEstar + "}");
  CHECK(run("theory --config " + cfg.string() + " --out-dir " + (kWork / "out").string()) == 0);
  const auto text = slurp(kWork / "out" / "theory.json");
  const auto j = rigc::Json::parse(text);
  CHECK(std::abs(j["eta_l"].get<double>() - 0.0640478) < 1e-6);
  CHECK(std::abs(j["xi_l"].get<double>() - 0.9678448) < 1e-6);
  CHECK(text == j.dump(2) + "\n");
  CHECK(run("run --config " + cfg.string() + " --out-dir " + (kWork / "again").string()) == 0);
  CHECK(slurp(kWork / "again" / "theory.json") == text);
}

TEST_CASE("excluded regime exits with the runtime code") {
  Workspace ws;
  const auto cfg = write_config(
      "excluded.json",
      R"({"schema_version": 1, "mode": "theory", "inputs": {"l_pmf": {"pmf": [[2, 1]]}, "catalog": [{"graph": "K2", "weight": 1}]}})");
  CHECK(run("theory --config " + cfg.string() + " --out-dir " + (kWork / "out").string()) == 3);
  const auto err = slurp(kWork / "stderr.txt");
  CHECK(err.find("ExcludedRegime") != std::string::npos);
  CHECK(err.find("further assume that p₂+q₂<2") != std::string::npos);
}

TEST_CASE("validation errors exit with code 2") {
  Workspace ws;
  const auto no_seed =
      write_config("noseed.json", R"({"schema_version": 1, "mode": "giant", "N": 100, )" + kEstar + "}");
  CHECK(run("giant --config " + no_seed.string()) == 2);
  CHECK(slurp(kWork / "stderr.txt").find("seed") != std::string::npos);
  CHECK(run("giant --config " + no_seed.string() + " --seed 3 --out-dir " + (kWork / "ok").string()) == 0);

  const auto broken = write_config("broken.json", "{not json");
  CHECK(run("theory --config " + broken.string()) == 2);
  CHECK(run("theory --config " + (kWork / "missing.json").string()) == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("giant") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("giant runs are byte-identical on rerun") {
  Workspace ws;
  const auto cfg = write_config(
      "giant.json", R"({"schema_version": 1, "mode": "giant", "N": 200000, "replicas": 5, "seed": 7, )" + kEstar + "}");
  CHECK(run("giant --config " + cfg.string() + " --out-dir " + (kWork / "a").string()) == 0);
  CHECK(run("giant --config " + cfg.string() + " --threads 3 --out-dir " + (kWork / "b").string()) == 0);
  const auto a = slurp(kWork / "a" / "giant.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(kWork / "b" / "giant.csv"));
  CHECK(slurp(kWork / "a" / "joint_in_giant.csv") == slurp(kWork / "b" / "joint_in_giant.csv"));

  const auto theory = write_config("theory.json", R"({"schema_version": 1, "mode": "theory", )" + kEstar + "}");
  CHECK(run("theory --config " + theory.string() + " --out-dir " + (kWork / "t").string()) == 0);
  CHECK(run("compare --theory " + (kWork / "t" / "theory.json").string() + " --empirical " +
            (kWork / "a" / "giant.csv").string() + " --out " + (kWork / "cmp.json").string()) == 0);
  const auto cmp = rigc::Json::parse(slurp(kWork / "cmp.json"));
  CHECK(cmp["all_pass"].get<bool>());
  CHECK(cmp["quantities"]["c1_fraction"]["deviation"].get<double>() < 0.01);

  std::ofstream(kWork / "empty.csv");
  CHECK(run("compare --theory " + (kWork / "t" / "theory.json").string() + " --empirical " +
            (kWork / "empty.csv").string()) == 2);
  CHECK(slurp(kWork / "stderr.txt").find("KeyMismatch") != std::string::npos);
}

TEST_CASE("every mode runs from the command line") {
  Workspace ws;
  const std::vector<std::pair<std::string, std::string>> modes{
      {"generate", R"("N": 500, "seed": 1,)"},
      {"percolate", R"("N": 500, "seed": 1, "pi": 0.5,)"},
      {"pi-c", ""},
      {"explore", R"("N": 500, "seed": 1, "replicas": 2,)"},
      {"sweep", R"("N": 500, "seed": 1, "pi_grid": [0.1, 0.6],)"},
  };
  for (const auto& [mode, extra] : modes) {
    const auto cfg = write_config(mode + ".json",
                                  R"({"schema_version": 1, "mode": ")" + mode + "\", " + extra + kEstar + "}");
    CHECK(run(mode + " --config " + cfg.string() + " --out-dir " + (kWork / mode).string()) == 0);
    CHECK(!fs::is_empty(kWork / mode));
  }
}
