#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhw/controls.hpp"
#include "bhw/optimizer.hpp"

namespace bhw {

enum class StrategyLabel { kYellow, kBlue, kUndetermined };

std::string to_string(StrategyLabel label);

/// Yellow: the tweezer approaches but stays short of the atom.
/// Blue: it is moved past the atom before coming back. Decided on the
/// position channel alone, with a dead band of +-margin around the atom.
StrategyLabel classify_strategy(const ControlSequence& controls,
                                double atom_position = 0.6, double margin = 0.02,
                                double home_position = 0.0);

struct AmplitudeTracePoint {
  double key;  // iteration index or duration
  double mean_amplitude;
};

/// Per-iteration mean amplitude of an optimization run.
std::vector<AmplitudeTracePoint> mean_amplitude_trace(const RunRecord& record);

struct SweepAmplitudeTrace {
  std::vector<AmplitudeTracePoint> points;  // keyed by duration, sweep order
  /// Last (smallest) duration whose best fidelity reached the target.
  std::optional<double> last_duration_at_target;
};

SweepAmplitudeTrace mean_amplitude_trace(const SweepResult& sweep,
                                         double fidelity_target = 0.999);

struct Heatmap {
  double duration = 0.0;
  std::size_t n_steps = 0;
  std::size_t n_bins = 0;
  std::size_t n_solutions = 0;
  double position_min = 0.0, position_max = 0.0;
  double amplitude_min = 0.0, amplitude_max = 0.0;
  /// counts[step][bin], one grid per channel.
  std::vector<std::vector<std::uint64_t>> position_counts;
  std::vector<std::vector<std::uint64_t>> amplitude_counts;
};

/// Per-time-step histogram of control values, after resampling every
/// solution to the target duration.
Heatmap heatmap(const std::vector<ControlSequence>& solutions,
                double target_duration, double dt, const TweezerParams& bounds,
                std::size_t n_bins = 64);

struct TrajectoryStats {
  std::vector<double> mean_position, std_position;
  std::vector<double> mean_amplitude, std_amplitude;
};

struct ClusterResult {
  std::vector<int> labels;  // 0 or 1 per input solution
  TrajectoryStats group[2];
  std::size_t sizes[2] = {0, 0};
  bool degenerate = false;  // a group ended up empty or singleton
};

/// Deterministic 2-means on resampled position trajectories. Seeded with
/// the min- and max-peak solutions (ties by input index); equidistant
/// points go to group 0.
ClusterResult cluster_two(const std::vector<ControlSequence>& solutions,
                          double target_duration, double dt);

struct FidelityDurationTable {
  std::vector<double> durations;  // descending
  /// fidelities[row][seed]; NaN marks a missing entry (aborted sweep).
  std::vector<std::vector<double>> fidelities;
  std::vector<double> best;  // per row
};

FidelityDurationTable fidelity_duration_table(const std::vector<SweepResult>& results);

}  // namespace bhw
