#include "bhw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bhw/errors.hpp"
#include "bhw/seeding.hpp"

namespace bhw {

std::string to_string(StrategyLabel label) {
  switch (label) {
    case StrategyLabel::kYellow: return "yellow";
    case StrategyLabel::kBlue: return "blue";
    case StrategyLabel::kUndetermined: return "undetermined";
  }
  return "unknown";
}

StrategyLabel classify_strategy(const ControlSequence& controls,
                                double atom_position, double margin,
                                double home_position) {
  if (controls.n_steps() == 0) return StrategyLabel::kUndetermined;
  const double peak = max_position(controls);
  if (peak > atom_position + margin) return StrategyLabel::kBlue;
  if (peak > home_position && peak <= atom_position - margin)
    return StrategyLabel::kYellow;
  return StrategyLabel::kUndetermined;
}

std::vector<AmplitudeTracePoint> mean_amplitude_trace(const RunRecord& record) {
  std::vector<AmplitudeTracePoint> out;
  out.reserve(record.mean_amplitude_trace.size());
  for (std::size_t i = 0; i < record.mean_amplitude_trace.size(); ++i)
    out.push_back({static_cast<double>(i), record.mean_amplitude_trace[i]});
  return out;
}

SweepAmplitudeTrace mean_amplitude_trace(const SweepResult& sweep,
                                         double fidelity_target) {
  SweepAmplitudeTrace out;
  for (const auto& e : sweep.entries) {
    out.points.push_back({e.duration, mean_amplitude(e.final_controls)});
    if (e.best_fidelity >= fidelity_target)
      out.last_duration_at_target = e.duration;
  }
  return out;
}

Heatmap heatmap(const std::vector<ControlSequence>& solutions,
                double target_duration, double dt, const TweezerParams& bounds,
                std::size_t n_bins) {
  Heatmap h;
  h.duration = target_duration;
  h.n_bins = n_bins;
  h.n_solutions = solutions.size();
  h.position_min = bounds.position_min;
  h.position_max = bounds.position_max;
  h.amplitude_min = bounds.amplitude_min;
  h.amplitude_max = bounds.amplitude_max;
  if (solutions.empty()) return h;

  h.n_steps = steps_for(target_duration, dt);
  h.position_counts.assign(h.n_steps, std::vector<std::uint64_t>(n_bins, 0));
  h.amplitude_counts.assign(h.n_steps, std::vector<std::uint64_t>(n_bins, 0));

  auto bin_of = [n_bins](double v, double lo, double hi) {
    const double t = (v - lo) / (hi - lo);
    const auto b = static_cast<long>(std::floor(t * static_cast<double>(n_bins)));
    return static_cast<std::size_t>(std::clamp<long>(b, 0, static_cast<long>(n_bins) - 1));
  };

  for (const auto& s : solutions) {
    const ControlSequence r = resample(s, target_duration, dt);
    for (std::size_t j = 0; j < h.n_steps; ++j) {
      h.position_counts[j][bin_of(r.positions[j], h.position_min, h.position_max)]++;
      h.amplitude_counts[j][bin_of(r.amplitudes[j], h.amplitude_min, h.amplitude_max)]++;
    }
  }
  return h;
}

namespace {

TrajectoryStats group_stats(const std::vector<ControlSequence>& resampled,
                            const std::vector<int>& labels, int group,
                            std::size_t n_steps) {
  TrajectoryStats st;
  st.mean_position.assign(n_steps, 0.0);
  st.std_position.assign(n_steps, 0.0);
  st.mean_amplitude.assign(n_steps, 0.0);
  st.std_amplitude.assign(n_steps, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < resampled.size(); ++i) {
    if (labels[i] != group) continue;
    ++count;
    for (std::size_t j = 0; j < n_steps; ++j) {
      st.mean_position[j] += resampled[i].positions[j];
      st.mean_amplitude[j] += resampled[i].amplitudes[j];
    }
  }
  if (count == 0) return st;
  for (std::size_t j = 0; j < n_steps; ++j) {
    st.mean_position[j] /= static_cast<double>(count);
    st.mean_amplitude[j] /= static_cast<double>(count);
  }
  for (std::size_t i = 0; i < resampled.size(); ++i) {
    if (labels[i] != group) continue;
    for (std::size_t j = 0; j < n_steps; ++j) {
      const double dp = resampled[i].positions[j] - st.mean_position[j];
      const double da = resampled[i].amplitudes[j] - st.mean_amplitude[j];
      st.std_position[j] += dp * dp;
      st.std_amplitude[j] += da * da;
    }
  }
  for (std::size_t j = 0; j < n_steps; ++j) {
    st.std_position[j] = std::sqrt(st.std_position[j] / static_cast<double>(count));
    st.std_amplitude[j] = std::sqrt(st.std_amplitude[j] / static_cast<double>(count));
  }
  return st;
}

}  // namespace

ClusterResult cluster_two(const std::vector<ControlSequence>& solutions,
                          double target_duration, double dt) {
  if (solutions.size() < 2)
    throw DegenerateError("cluster_two: need at least 2 solutions");

  const std::size_t n_steps = steps_for(target_duration, dt);
  std::vector<ControlSequence> resampled;
  resampled.reserve(solutions.size());
  for (const auto& s : solutions) resampled.push_back(resample(s, target_duration, dt));

  // Seed centroids from the extreme peak positions.
  std::size_t lo_idx = 0, hi_idx = 0;
  for (std::size_t i = 1; i < resampled.size(); ++i) {
    if (max_position(resampled[i]) < max_position(resampled[lo_idx])) lo_idx = i;
    if (max_position(resampled[i]) > max_position(resampled[hi_idx])) hi_idx = i;
  }
  std::vector<double> centroid[2] = {resampled[lo_idx].positions,
                                     resampled[hi_idx].positions};

  auto dist2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = a[j] - b[j];
      acc += d * d;
    }
    return acc;
  };

  std::vector<int> labels(resampled.size(), 0);
  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < resampled.size(); ++i) {
      const double d0 = dist2(resampled[i].positions, centroid[0]);
      const double d1 = dist2(resampled[i].positions, centroid[1]);
      const int label = d1 < d0 ? 1 : 0;  // ties to group 0
      if (label != labels[i]) {
        labels[i] = label;
        changed = true;
      }
    }
    if (!changed && pass > 0) break;

    for (int group = 0; group < 2; ++group) {
      std::vector<double> mean(n_steps, 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < resampled.size(); ++i) {
        if (labels[i] != group) continue;
        ++count;
        for (std::size_t j = 0; j < n_steps; ++j) mean[j] += resampled[i].positions[j];
      }
      if (count == 0) continue;  // keep old centroid
      for (double& v : mean) v /= static_cast<double>(count);
      centroid[group] = std::move(mean);
    }
    if (!changed) break;
  }

  ClusterResult res;
  res.labels = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) res.sizes[labels[i]]++;
  res.group[0] = group_stats(resampled, labels, 0, n_steps);
  res.group[1] = group_stats(resampled, labels, 1, n_steps);
  res.degenerate = res.sizes[0] <= 1 || res.sizes[1] <= 1;
  return res;
}

FidelityDurationTable fidelity_duration_table(const std::vector<SweepResult>& results) {
  FidelityDurationTable table;

  // Key durations by step count at a common reference dt to avoid
  // floating-point drift between sweeps.
  double dt_ref = 0.0;
  for (const auto& r : results)
    for (const auto& e : r.entries)
      if (e.final_controls.dt > 0) dt_ref = e.final_controls.dt;
  if (dt_ref == 0.0) return table;

  std::map<long long, double, std::greater<>> rows;
  for (const auto& r : results)
    for (const auto& e : r.entries)
      rows.emplace(std::llround(e.duration / dt_ref), e.duration);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, duration] : rows) {
    table.durations.push_back(duration);
    std::vector<double> row(results.size(), nan);
    for (std::size_t s = 0; s < results.size(); ++s) {
      for (const auto& e : results[s].entries) {
        if (std::llround(e.duration / dt_ref) == key) {
          row[s] = e.best_fidelity;
          break;
        }
      }
    }
    double best = nan;
    for (double v : row)
      if (!std::isnan(v) && (std::isnan(best) || v > best)) best = v;
    table.fidelities.push_back(std::move(row));
    table.best.push_back(best);
  }
  return table;
}

}  // namespace bhw
