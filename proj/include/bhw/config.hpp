#pragma once

#include <iosfwd>
#include <string>

#include "bhw/optimizer.hpp"
#include "bhw/problem.hpp"
#include "bhw/seeding.hpp"

namespace bhw {

/// Aggregated run configuration, one section per subsystem. The file
/// format is flat `key = value` under `[section]` headers; unknown keys
/// and sections are hard errors so typos cannot silently revert a knob
/// to its default.
struct RunConfig {
  ProblemSetup problem;   // includes grid, physics, tweezer, state specs
  OptimizerConfig optimizer;
  SweepConfig sweep;
  SeedConfig seeding;
  std::string output_directory = "out";

  Problem build_problem() const { return problem.build(); }
};

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<string>");
RunConfig parse_config_file(const std::string& path);

/// Fully resolved configuration, every key materialized; parsing it back
/// reproduces the same RunConfig.
void write_config(std::ostream& os, const RunConfig& config);
std::string config_to_string(const RunConfig& config);

DerivativeMode parse_mode(const std::string& text);
SeedKind parse_seed_kind(const std::string& text);

}  // namespace bhw
