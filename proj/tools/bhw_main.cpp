#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bhw/cli_commands.hpp"
#include "bhw/config.hpp"

namespace {

using namespace bhw;
using namespace bhw::cli;

void add_common(CLI::App* cmd, std::optional<std::string>& out,
                std::optional<std::uint64_t>& rng_seed,
                std::optional<std::string>& mode) {
  cmd->add_option("--out", out, "Output directory (overrides config)");
  cmd->add_option("--rng-seed", rng_seed, "RNG seed (overrides config)");
  cmd->add_option("--mode", mode,
                  "Derivative mode: correct | sign_flipped_amplitude");
}

CommonOptions resolve_common(const std::optional<std::string>& out,
                             const std::optional<std::uint64_t>& rng_seed,
                             const std::optional<std::string>& mode) {
  CommonOptions common;
  common.out_directory = out;
  common.rng_seed = rng_seed;
  if (mode) common.mode = parse_mode(*mode);
  return common;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BringHomeWater quantum control toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out, mode;
  std::optional<std::uint64_t> rng_seed;

  auto* gradcheck = app.add_subcommand(
      "gradcheck", "Compare analytic and finite-difference gradients");
  gradcheck->add_option("config", config_path, "Run configuration file")->required();
  std::optional<double> gc_duration;
  gradcheck->add_option("--duration", gc_duration, "Control duration for the check");
  add_common(gradcheck, out, rng_seed, mode);

  auto* sweep = app.add_subcommand("sweep", "Run duration sweeps from N seeds");
  sweep->add_option("config", config_path, "Run configuration file")->required();
  int n_seeds = 1;
  std::string variant = "kass";
  sweep->add_option("--seeds", n_seeds, "Number of independent seeds");
  sweep->add_option("--variant", variant, "Protocol: kass | player | hilo");
  add_common(sweep, out, rng_seed, mode);

  auto* optimize = app.add_subcommand("optimize", "Optimize at a single duration");
  optimize->add_option("config", config_path, "Run configuration file")->required();
  std::optional<double> opt_duration;
  std::optional<std::string> solution_file;
  optimize->add_option("--duration", opt_duration, "Duration (default: sweep t_start)");
  optimize->add_option("--solution", solution_file, "Seed from a solution file");
  add_common(optimize, out, rng_seed, mode);

  auto* analyze = app.add_subcommand("analyze", "Produce reports from stored results");
  std::string results_dir;
  AnalyzeOptions analyze_options;
  analyze->add_option("results", results_dir, "Results directory")->required();
  analyze->add_option("--report", analyze_options.report,
                      "amplitude | heatmap | strategies | table");
  analyze->add_option("--config", analyze_options.config_path,
                      "Config for bounds (default: effective_config.cfg in results)");
  analyze->add_option("--out", analyze_options.out_directory, "Report directory");
  analyze->add_option("--duration", analyze_options.heatmap_duration,
                      "Heatmap resample duration");

  auto* seed = app.add_subcommand("seed", "Emit seed control files");
  seed->add_option("config", config_path, "Run configuration file")->required();
  int count = 1;
  std::optional<double> seed_duration;
  seed->add_option("--count", count, "Number of seeds");
  seed->add_option("--duration", seed_duration, "Duration (default: sweep t_start)");
  add_common(seed, out, rng_seed, mode);

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    if (analyze->parsed()) return cmd_analyze(results_dir, analyze_options);

    const RunConfig config = parse_config_file(config_path);
    if (gradcheck->parsed()) {
      GradcheckOptions o;
      o.common = resolve_common(out, rng_seed, mode);
      o.duration = gc_duration;
      return cmd_gradcheck(config, o);
    }
    if (sweep->parsed()) {
      SweepOptions o;
      o.common = resolve_common(out, rng_seed, mode);
      o.n_seeds = n_seeds;
      o.variant = variant;
      return cmd_sweep(config, o);
    }
    if (optimize->parsed()) {
      OptimizeOptions o;
      o.common = resolve_common(out, rng_seed, mode);
      o.duration = opt_duration;
      o.solution_file = solution_file;
      return cmd_optimize(config, o);
    }
    if (seed->parsed()) {
      SeedOptions o;
      o.common = resolve_common(out, rng_seed, mode);
      o.count = count;
      o.duration = seed_duration;
      return cmd_seed(config, o);
    }
    return kGenericError;
  });
}
