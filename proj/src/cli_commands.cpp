#include "bhw/cli_commands.hpp"

#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "bhw/analysis.hpp"
#include "bhw/errors.hpp"
#include "bhw/io.hpp"
#include "bhw/seeding.hpp"

namespace bhw::cli {

namespace fs = std::filesystem;

namespace {

RunConfig apply_common(RunConfig config, const CommonOptions& common) {
  if (common.out_directory) config.output_directory = *common.out_directory;
  if (common.rng_seed) config.seeding.rng_seed = *common.rng_seed;
  if (common.mode) config.optimizer.mode = *common.mode;
  return config;
}

fs::path prepare_output(const RunConfig& config) {
  fs::path dir(config.output_directory);
  fs::create_directories(dir);
  std::ofstream echo(dir / "effective_config.cfg");
  write_config(echo, config);
  return dir;
}

}  // namespace

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGenericError;
  }
}

int cmd_gradcheck(const RunConfig& raw_config, const GradcheckOptions& options) {
  const RunConfig config = apply_common(raw_config, options.common);
  const fs::path out = prepare_output(config);
  const Problem problem = config.build_problem();

  const double duration = options.duration.value_or(config.sweep.t_start);
  const ControlSequence controls =
      make_seed(config.seeding, duration, config.problem.physics.dt, problem);

  FidelityEngine engine(problem);
  const GradcheckReport report =
      engine.gradcheck(controls, config.optimizer.mode);

  std::ofstream file(out / "gradcheck.txt");
  write_gradcheck_report(file, report);
  write_gradcheck_report(std::cout, report);

  return report.has_sign_disagreement() ? kSignDisagreement : kOk;
}

int cmd_sweep(const RunConfig& raw_config, const SweepOptions& options) {
  const RunConfig config = apply_common(raw_config, options.common);
  if (options.variant != "kass" && options.variant != "player" &&
      options.variant != "hilo")
    throw Error("unknown sweep variant '" + options.variant + "'");

  const fs::path out = prepare_output(config);
  const Problem problem = config.build_problem();
  const double dt = config.problem.physics.dt;

  auto run_one = [&](int index) -> SweepResult {
    SeedConfig seed_cfg = config.seeding;
    seed_cfg.rng_seed = config.seeding.rng_seed + static_cast<std::uint64_t>(index);
    ControlSequence seed;
    if (options.variant == "hilo")
      seed = hilo_heuristic_seed(config.sweep.t_start, dt, problem);
    else
      seed = make_seed(seed_cfg, config.sweep.t_start, dt, problem);

    if (options.variant == "player")
      return player_variant_sweep(seed, problem, config.optimizer, config.sweep);
    return kass_sweep(seed, problem, config.optimizer, config.sweep);
  };

  std::vector<SweepResult> results(static_cast<std::size_t>(options.n_seeds));
  const unsigned workers = std::max(1u, std::min<unsigned>(
      std::thread::hardware_concurrency(), static_cast<unsigned>(options.n_seeds)));
  if (workers <= 1) {
    for (int i = 0; i < options.n_seeds; ++i) results[i] = run_one(i);
  } else {
    std::vector<std::future<SweepResult>> futures;
    futures.reserve(static_cast<std::size_t>(options.n_seeds));
    for (int i = 0; i < options.n_seeds; ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (int i = 0; i < options.n_seeds; ++i) results[i] = futures[i].get();
  }

  for (int i = 0; i < options.n_seeds; ++i) {
    std::ostringstream name;
    name << "sweep_" << std::setw(3) << std::setfill('0') << i;
    write_sweep(out / name.str(), results[i]);
  }

  std::ofstream table(out / "fidelity_table.tsv");
  write_fidelity_table(table, fidelity_duration_table(results));

  for (int i = 0; i < options.n_seeds; ++i) {
    const auto& r = results[i];
    std::cout << "sweep " << i << ": " << r.entries.size() << " durations, stopped at "
              << r.termination_duration << (r.aborted ? " (aborted)" : "") << "\n";
  }
  return kOk;
}

int cmd_optimize(const RunConfig& raw_config, const OptimizeOptions& options) {
  const RunConfig config = apply_common(raw_config, options.common);
  const fs::path out = prepare_output(config);
  const Problem problem = config.build_problem();
  const double dt = config.problem.physics.dt;

  ControlSequence seed;
  if (options.solution_file) {
    seed = read_solution_file(*options.solution_file, config.problem.tweezer);
  } else {
    const double duration = options.duration.value_or(config.sweep.t_start);
    seed = make_seed(config.seeding, duration, dt, problem);
  }

  const RunRecord record = optimize_fixed_duration(seed, problem, config.optimizer);

  std::ofstream rec(out / "record.tsv");
  write_run_record(rec, record);
  write_solution_file(out / "controls.sol", record.final_controls);

  std::cout << "duration " << seed.duration << ": fidelity "
            << record.final_fidelity() << " after " << record.iterations
            << " iterations (" << to_string(record.termination) << ")\n";
  return record.termination == Termination::kNumericalFailure ? kNumericalFailure
                                                              : kOk;
}

int cmd_analyze(const std::string& results_directory, const AnalyzeOptions& options) {
  const fs::path root(results_directory);
  RunConfig config;
  if (options.config_path) {
    config = parse_config_file(*options.config_path);
  } else if (fs::exists(root / "effective_config.cfg")) {
    config = parse_config_file((root / "effective_config.cfg").string());
  }
  const fs::path out = options.out_directory ? fs::path(*options.out_directory) : root;
  fs::create_directories(out);

  const auto dirs = list_sweep_dirs(root);
  std::vector<SweepResult> sweeps;
  std::vector<std::string> skipped;
  for (const auto& dir : dirs) {
    try {
      sweeps.push_back(read_sweep(dir, config.problem.tweezer));
    } catch (const std::exception& e) {
      skipped.push_back(dir.string() + ": " + e.what());
    }
  }
  for (const auto& s : skipped) std::cerr << "skipped " << s << "\n";
  if (sweeps.empty()) {
    std::cerr << "no records in " << results_directory << "\n";
    return kGenericError;
  }

  const double dt = config.problem.physics.dt;

  if (options.report == "table") {
    std::ofstream os(out / "fidelity_table.tsv");
    write_fidelity_table(os, fidelity_duration_table(sweeps));
  } else if (options.report == "amplitude") {
    std::ofstream os(out / "amplitude_traces.tsv");
    os << "sweep\tduration\tmean_amplitude\tat_target\n";
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      const auto trace =
          mean_amplitude_trace(sweeps[i], config.optimizer.fidelity_target);
      for (const auto& pt : trace.points) {
        const bool marked = trace.last_duration_at_target &&
                            *trace.last_duration_at_target == pt.key;
        os << i << "\t" << format_full(pt.key) << "\t"
           << format_full(pt.mean_amplitude) << "\t" << (marked ? "yes" : "no")
           << "\n";
      }
    }
  } else if (options.report == "strategies") {
    std::ofstream os(out / "strategies.tsv");
    os << "sweep\tduration\tfidelity\tlabel\tmax_position\n";
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      // Best solution: the smallest duration that still reached the
      // fidelity target, else the last recorded entry.
      const SweepEntry* chosen = nullptr;
      for (const auto& e : sweeps[i].entries)
        if (e.best_fidelity >= config.optimizer.fidelity_target) chosen = &e;
      if (!chosen && !sweeps[i].entries.empty()) chosen = &sweeps[i].entries.back();
      if (!chosen) continue;
      const StrategyLabel label =
          classify_strategy(chosen->final_controls, config.problem.atom_position,
                            0.02, config.problem.home_position);
      os << i << "\t" << format_full(chosen->duration) << "\t"
         << format_full(chosen->best_fidelity) << "\t" << to_string(label) << "\t"
         << format_full(max_position(chosen->final_controls)) << "\n";
    }
  } else if (options.report == "heatmap") {
    std::vector<ControlSequence> finals;
    for (const auto& s : sweeps)
      if (!s.entries.empty()) finals.push_back(s.entries.back().final_controls);
    const Heatmap map =
        heatmap(finals, options.heatmap_duration, dt, config.problem.tweezer);
    write_heatmap(out, map);
  } else {
    throw Error("unknown report '" + options.report + "'");
  }
  return kOk;
}

int cmd_seed(const RunConfig& raw_config, const SeedOptions& options) {
  const RunConfig config = apply_common(raw_config, options.common);
  const fs::path out = prepare_output(config);
  const Problem problem = config.build_problem();
  const double duration = options.duration.value_or(config.sweep.t_start);

  for (int i = 0; i < options.count; ++i) {
    SeedConfig seed_cfg = config.seeding;
    seed_cfg.rng_seed = config.seeding.rng_seed + static_cast<std::uint64_t>(i);
    const ControlSequence seed =
        make_seed(seed_cfg, duration, config.problem.physics.dt, problem);
    std::ostringstream name;
    name << "seed_" << std::setw(3) << std::setfill('0') << i << ".sol";
    write_solution_file(out / name.str(), seed);
  }
  std::cout << "wrote " << options.count << " seed(s) to " << out.string() << "\n";
  return kOk;
}

}  // namespace bhw::cli
