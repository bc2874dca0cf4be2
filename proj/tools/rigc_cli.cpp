#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rigc/error.hpp"
#include "rigc/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kRuntime = 3;

bool is_validation(rigc::ErrorCode c) {
  using rigc::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::KeyMismatch:
      return true;
    default:
      return false;
  }
}

struct RunArgs {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replicas;
  unsigned threads = 1;
};

void add_run_flags(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config, "JSON experiment config")->required();
  cmd->add_option("--out-dir", args.out_dir, "directory for output files");
  cmd->add_option("--seed", args.seed, "overrides the config seed");
  cmd->add_option("--replicas", args.replicas, "overrides the config replica count");
  cmd->add_option("--threads", args.threads, "worker threads for replicas")->check(CLI::PositiveNumber);
}

int run_mode(const std::optional<std::string>& mode, const RunArgs& args) {
  rigc::ConfigOverrides ov{mode, args.seed, args.replicas};
  const auto cfg = rigc::load_config(args.config, ov);
  for (const auto& path : rigc::run_experiment(cfg, args.out_dir, args.threads)) std::cout << path.string() << '\n';
  return kOk;
}

int run_compare(const std::string& theory_path, const std::string& empirical_path, const std::string& out_path,
                std::optional<double> tolerance) {
  std::ifstream tj(theory_path);
  if (!tj) throw rigc::Error(rigc::ErrorCode::InvalidConfig, "cannot open " + theory_path);
  rigc::Json theory;
  try {
    theory = rigc::Json::parse(tj);
  } catch (const rigc::Json::exception& e) {
    throw rigc::Error(rigc::ErrorCode::InvalidConfig, theory_path + ": " + e.what());
  }
  std::ifstream ec(empirical_path);
  if (!ec) throw rigc::Error(rigc::ErrorCode::InvalidConfig, "cannot open " + empirical_path);
  const auto table = rigc::CsvTable::read(ec);
  const auto report = rigc::compare_reports(theory, table, tolerance);
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    os << text;
  }
  return report["all_pass"].get<bool>() ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random intersection graphs with communities: theory, simulation and diagnostics"};
  app.require_subcommand(1);

  RunArgs args;
  std::optional<std::string> mode;
  for (const auto& m : rigc::experiment_modes()) {
    auto* cmd = app.add_subcommand(m, "run the '" + m + "' pipeline");
    add_run_flags(cmd, args);
    cmd->callback([&mode, m] { mode = m; });
  }
  auto* run = app.add_subcommand("run", "run the pipeline named by the config's mode field");
  add_run_flags(run, args);

  std::string theory_path;
  std::string empirical_path;
  std::string out_path;
  std::optional<double> tolerance;
  auto* compare = app.add_subcommand("compare", "compare an empirical CSV with a theory report");
  compare->add_option("--theory", theory_path, "theory.json")->required();
  compare->add_option("--empirical", empirical_path, "empirical CSV")->required();
  compare->add_option("--out", out_path, "write the report here instead of stdout");
  compare->add_option("--tolerance", tolerance, "overrides every per-quantity tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (compare->parsed()) return run_compare(theory_path, empirical_path, out_path, tolerance);
    return run_mode(mode, args);
  } catch (const rigc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_validation(e.code()) ? kValidation : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
