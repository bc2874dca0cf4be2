#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rigc/io.hpp"
#include "rigc/model.hpp"
#include "rigc/theory.hpp"

namespace rigc {

inline constexpr int kSchemaVersion = 1;

/// Model inputs from a config: either limiting laws (l-degree pmf and
/// community catalog) or an explicit parameter set.
struct ModelInputs {
  bool explicit_params = false;
  Pmf l_pmf;
  CommunityCatalog catalog;
  std::optional<ModelParams> params;

  /// Limiting laws, or the empirical laws of the explicit parameters.
  TheoryInputs theory() const;
  /// Samples parameters of size about n_target, or returns the explicit ones.
  ModelParams instance(std::int64_t n_target, Rng& rng) const;
};

struct ExperimentConfig {
  std::string mode;
  ModelInputs inputs;
  std::int64_t n_target = 0;
  std::int64_t replicas = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> pi;
  std::vector<double> pi_grid;
  double t0 = 2.0;
  std::vector<double> c_grid;
  double pi_c_tol = 1e-10;
  std::int64_t trajectory_replicas = 1;
};

struct ConfigOverrides {
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replicas;
};

/// All known modes, in the order they are documented.
const std::vector<std::string>& experiment_modes();

/// Validates a config document. Violations raise InvalidConfig with the
/// offending field path in the message.
ExperimentConfig parse_config(const Json& doc, const ConfigOverrides& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Theory report for the given inputs (no randomness).
Json theory_report(const TheoryInputs& in);

/// Runs the configured pipeline and writes its outputs into out_dir. Returns
/// the files written, in a fixed order.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir,
                                                  unsigned threads = 1);

/// Per-quantity deviations between a theory report and an empirical CSV whose
/// columns name measured quantities. Throws KeyMismatch when the CSV has no
/// rows or no column matches a theory quantity.
Json compare_reports(const Json& theory, const CsvTable& empirical,
                     std::optional<double> tolerance = std::nullopt);

}  // namespace rigc
