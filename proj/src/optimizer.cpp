#include "bhw/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "bhw/errors.hpp"

namespace bhw {

void OptimizerConfig::validate() const {
  if (!amplitude_frozen && !(lr_amplitude > 0))
    throw BoundsError("lr_amplitude must be positive unless amplitudes are frozen");
  if (!(lr_position >= 0)) throw BoundsError("lr_position must be non-negative");
  if (!(cap_position > 0) || !(cap_amplitude > 0))
    throw BoundsError("update caps must be positive");
  if (max_iterations < 0) throw BoundsError("max_iterations must be non-negative");
  if (!(fidelity_target > 0) || fidelity_target > 1)
    throw BoundsError("fidelity_target must lie in (0, 1]");
}

void SweepConfig::validate(double dt) const {
  if (!(t_start > 0) || !(t_end > 0) || t_end > t_start)
    throw BoundsError("sweep requires 0 < t_end <= t_start");
  if (!(t_decrement > 0)) throw BoundsError("t_decrement must be positive");
  const double steps = t_decrement / dt;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    throw BoundsError("t_decrement must be an integer multiple of dt");
  if (!(abort_fidelity >= 0 && abort_fidelity < 1))
    throw BoundsError("abort_fidelity must lie in [0, 1)");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kTargetReached: return "target_reached";
    case Termination::kBudgetExhausted: return "budget_exhausted";
    case Termination::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

double RunRecord::best_fidelity() const {
  if (fidelity_trace.empty()) return 0.0;
  return *std::max_element(fidelity_trace.begin(), fidelity_trace.end());
}

double RunRecord::final_fidelity() const {
  return fidelity_trace.empty() ? 0.0 : fidelity_trace.back();
}

ControlSequence ascend_step(const ControlSequence& controls,
                            const GradientPair& gradient,
                            const OptimizerConfig& cfg,
                            const TweezerParams& params) {
  if (gradient.d_positions.size() != controls.n_steps() ||
      gradient.d_amplitudes.size() != controls.n_steps())
    throw BoundsError("ascend_step: gradient/control shape mismatch");

  const double inv_dt = 1.0 / controls.dt;
  ControlSequence out = controls;
  for (std::size_t j = 0; j < controls.n_steps(); ++j) {
    const double dp = std::clamp(cfg.lr_position * gradient.d_positions[j] * inv_dt,
                                 -cfg.cap_position, cfg.cap_position);
    out.positions[j] = std::clamp(controls.positions[j] + dp,
                                  params.position_min, params.position_max);
    if (!cfg.amplitude_frozen) {
      const double da =
          std::clamp(cfg.lr_amplitude * gradient.d_amplitudes[j] * inv_dt,
                     -cfg.cap_amplitude, cfg.cap_amplitude);
      out.amplitudes[j] = std::clamp(controls.amplitudes[j] + da,
                                     params.amplitude_min, params.amplitude_max);
    }
  }
  return out;
}

RunRecord optimize_fixed_duration(const ControlSequence& seed,
                                  FidelityEngine& engine,
                                  const OptimizerConfig& cfg) {
  cfg.validate();
  seed.validate(engine.problem().tweezer);

  RunRecord record;
  record.final_controls = seed;
  ControlSequence current = seed;

  try {
    for (int it = 0;; ++it) {
      double f = 0.0;
      GradientPair g = engine.fidelity_gradient(current, cfg.mode, &f);
      record.fidelity_trace.push_back(f);
      record.mean_amplitude_trace.push_back(mean_amplitude(current));
      record.iterations = it;
      record.final_controls = current;
      if (f >= cfg.fidelity_target) {
        record.termination = Termination::kTargetReached;
        return record;
      }
      if (it == cfg.max_iterations) {
        record.termination = Termination::kBudgetExhausted;
        return record;
      }
      current = ascend_step(current, g, cfg, engine.problem().tweezer);
    }
  } catch (const NumericalError& err) {
    record.termination = Termination::kNumericalFailure;
    record.diagnostic = err.what();
    return record;
  }
}

RunRecord optimize_fixed_duration(const ControlSequence& seed,
                                  const Problem& problem,
                                  const OptimizerConfig& cfg) {
  FidelityEngine engine(problem);
  return optimize_fixed_duration(seed, engine, cfg);
}

namespace {

SweepResult run_sweep(const ControlSequence& seed, const Problem& problem,
                      const OptimizerConfig& opt_cfg, const SweepConfig& sweep_cfg,
                      double start_duration) {
  sweep_cfg.validate(seed.dt);

  OptimizerConfig cfg = opt_cfg;
  if (sweep_cfg.iteration_budget_per_duration > 0)
    cfg.max_iterations = sweep_cfg.iteration_budget_per_duration;

  const std::size_t steps_per_decrement = steps_for(sweep_cfg.t_decrement, seed.dt);
  const std::size_t end_steps = steps_for(sweep_cfg.t_end, seed.dt);

  if (steps_for(start_duration, seed.dt) != seed.n_steps())
    throw BoundsError("sweep: seed is not defined at the sweep's start duration");

  FidelityEngine engine(problem);
  SweepResult result;
  ControlSequence current = seed;

  while (true) {
    RunRecord record = optimize_fixed_duration(current, engine, cfg);
    SweepEntry entry;
    entry.duration = current.duration;
    entry.best_fidelity = record.best_fidelity();
    entry.final_controls = record.final_controls;
    entry.record = std::move(record);
    const double best = entry.best_fidelity;
    const bool failed = entry.record.termination == Termination::kNumericalFailure;
    result.entries.push_back(std::move(entry));
    result.termination_duration = current.duration;

    if (failed) break;
    if (best < sweep_cfg.abort_fidelity) {
      result.aborted = true;
      break;
    }
    const std::size_t n = result.entries.back().final_controls.n_steps();
    if (n <= end_steps || n <= steps_per_decrement) break;
    current = result.entries.back().final_controls.truncated(n - steps_per_decrement);
  }
  return result;
}

}  // namespace

SweepResult kass_sweep(const ControlSequence& seed, const Problem& problem,
                       const OptimizerConfig& opt_cfg, const SweepConfig& sweep_cfg) {
  return run_sweep(seed, problem, opt_cfg, sweep_cfg, sweep_cfg.t_start);
}

SweepResult player_variant_sweep(const ControlSequence& seed,
                                 const Problem& problem,
                                 const OptimizerConfig& base_cfg,
                                 const SweepConfig& sweep_cfg) {
  OptimizerConfig cfg = base_cfg;
  cfg.amplitude_frozen = true;

  SweepConfig sc = sweep_cfg;
  sc.t_start = seed.duration;
  if (sc.iteration_budget_per_duration <= 0) sc.iteration_budget_per_duration = 1000;

  return run_sweep(seed, problem, cfg, sc, seed.duration);
}

}  // namespace bhw
