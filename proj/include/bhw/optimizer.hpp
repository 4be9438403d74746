#pragma once

#include <string>
#include <vector>

#include "bhw/controls.hpp"
#include "bhw/gradient.hpp"
#include "bhw/problem.hpp"

namespace bhw {

/// Fixed-learning-rate gradient ascent. Learning rates act on the
/// per-unit-time gradient density (dF/d sample divided by dt), so the
/// same rate means the same thing at every dt and duration; per-sample
/// updates are capped in magnitude before the bound clamp.
struct OptimizerConfig {
  double lr_position = 1e-3;
  double lr_amplitude = 0.1;
  double cap_position = 0.01;
  double cap_amplitude = 1.0;
  int max_iterations = 800;
  double fidelity_target = 0.999;
  DerivativeMode mode = DerivativeMode::kCorrect;
  bool amplitude_frozen = false;

  void validate() const;
};

struct SweepConfig {
  double t_start = 0.4;
  double t_end = 0.068;
  double t_decrement = 0.004;
  double abort_fidelity = 0.2;
  /// Overrides OptimizerConfig::max_iterations inside a sweep when > 0.
  int iteration_budget_per_duration = 0;

  void validate(double dt) const;
};

enum class Termination { kTargetReached, kBudgetExhausted, kNumericalFailure };

std::string to_string(Termination t);

struct RunRecord {
  std::vector<double> fidelity_trace;        // length iterations + 1
  std::vector<double> mean_amplitude_trace;  // same length
  ControlSequence final_controls;
  int iterations = 0;
  Termination termination = Termination::kBudgetExhausted;
  std::string diagnostic;  // set on numerical failure

  double best_fidelity() const;
  double final_fidelity() const;
};

struct SweepEntry {
  double duration = 0.0;
  double best_fidelity = 0.0;
  ControlSequence final_controls;
  RunRecord record;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  double termination_duration = 0.0;
  bool aborted = false;  // stopped by the abort_fidelity rule
};

/// One ascent update: controls += clamp(lr * gradient / dt, +-cap),
/// then clamp to the control bounds. Frozen amplitudes pass through
/// bit-exact.
ControlSequence ascend_step(const ControlSequence& controls,
                            const GradientPair& gradient,
                            const OptimizerConfig& cfg,
                            const TweezerParams& params);

/// Iterate gradient evaluation + ascend_step until the fidelity target
/// or the iteration budget. The traces record fidelity and mean
/// amplitude at every visited iterate, including the seed.
RunRecord optimize_fixed_duration(const ControlSequence& seed,
                                  FidelityEngine& engine,
                                  const OptimizerConfig& cfg);

RunRecord optimize_fixed_duration(const ControlSequence& seed,
                                  const Problem& problem,
                                  const OptimizerConfig& cfg);

/// The duration sweep: optimize at t_start, truncate the trailing steps
/// of the optimized controls to seed the next (shorter) duration, repeat
/// until t_end or until the best fidelity at some duration falls below
/// abort_fidelity.
SweepResult kass_sweep(const ControlSequence& seed, const Problem& problem,
                       const OptimizerConfig& opt_cfg, const SweepConfig& sweep_cfg);

/// The player-solution treatment: a sweep that starts at the seed's own
/// duration, never changes amplitudes, and runs a 25% larger iteration
/// budget (1000) per duration.
SweepResult player_variant_sweep(const ControlSequence& seed,
                                 const Problem& problem,
                                 const OptimizerConfig& base_cfg,
                                 const SweepConfig& sweep_cfg);

}  // namespace bhw
