#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "bhw/config.hpp"

namespace bhw::cli {

// Exit codes, stable for scripting.
inline constexpr int kOk = 0;
inline constexpr int kGenericError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalFailure = 3;
inline constexpr int kSignDisagreement = 4;

struct CommonOptions {
  std::optional<std::string> out_directory;
  std::optional<std::uint64_t> rng_seed;
  std::optional<DerivativeMode> mode;
};

struct GradcheckOptions {
  CommonOptions common;
  std::optional<double> duration;
};

struct SweepOptions {
  CommonOptions common;
  int n_seeds = 1;
  std::string variant = "kass";  // kass | player | hilo
};

struct OptimizeOptions {
  CommonOptions common;
  std::optional<double> duration;
  std::optional<std::string> solution_file;  // seed from file instead
};

struct AnalyzeOptions {
  std::string report = "table";  // amplitude | heatmap | strategies | table
  std::optional<std::string> config_path;
  std::optional<std::string> out_directory;
  double heatmap_duration = 0.17;
};

struct SeedOptions {
  CommonOptions common;
  int count = 1;
  std::optional<double> duration;
};

int cmd_gradcheck(const RunConfig& config, const GradcheckOptions& options);
int cmd_sweep(const RunConfig& config, const SweepOptions& options);
int cmd_optimize(const RunConfig& config, const OptimizeOptions& options);
int cmd_analyze(const std::string& results_directory, const AnalyzeOptions& options);
int cmd_seed(const RunConfig& config, const SeedOptions& options);

/// Maps thrown errors onto the exit codes above.
int run_guarded(const std::function<int()>& body);

}  // namespace bhw::cli
