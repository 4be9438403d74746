#include "bhw/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bhw/errors.hpp"

namespace bhw {

std::string to_string(SeedKind kind) {
  switch (kind) {
    case SeedKind::kSinusoidal: return "sinusoidal";
    case SeedKind::kHiloHeuristic: return "hilo";
    case SeedKind::kPlayerYellow: return "player_yellow";
    case SeedKind::kPlayerBlueTagged: return "player_blue";
  }
  return "unknown";
}

namespace {

double sample_fraction(std::size_t j, std::size_t n) {
  return n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
}

double smoothstep01(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

ControlSequence sinusoidal_seed(const SeedConfig& cfg, double duration, double dt,
                                const Problem& problem) {
  const std::size_t n = steps_for(duration, dt);
  const TweezerParams& tw = problem.tweezer;

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> pos_coef(-cfg.sigma_position,
                                                  cfg.sigma_position);
  std::uniform_real_distribution<double> amp_coef(-cfg.sigma_amplitude,
                                                  cfg.sigma_amplitude);
  std::vector<double> cp(cfg.n_harmonics), ca(cfg.n_harmonics);
  for (auto& c : cp) c = pos_coef(rng);
  for (auto& c : ca) c = amp_coef(rng);

  ControlSequence out;
  out.duration = duration;
  out.dt = dt;
  out.positions.resize(n);
  out.amplitudes.resize(n);
  const double amp_hi = std::min(0.0, tw.amplitude_max);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sample_fraction(j, n);
    double p = problem.home_position;
    double a = 0.0;
    for (int k = 1; k <= cfg.n_harmonics; ++k) {
      const double basis = std::sin(k * std::numbers::pi * s);
      p += cp[k - 1] * basis;
      a += ca[k - 1] * basis;
    }
    out.positions[j] = std::clamp(p, tw.position_min, tw.position_max);
    out.amplitudes[j] = std::clamp(a, tw.amplitude_min, amp_hi);
  }
  return out;
}

ControlSequence hilo_heuristic_seed(double duration, double dt,
                                    const Problem& problem) {
  const std::size_t n = steps_for(duration, dt);
  const TweezerParams& tw = problem.tweezer;

  ControlSequence out;
  out.duration = duration;
  out.dt = dt;
  out.positions.resize(n);
  out.amplitudes.assign(n, tw.amplitude_min);

  const std::size_t peak = n > 1 ? static_cast<std::size_t>(
      std::llround(0.2 * static_cast<double>(n - 1))) : 0;
  for (std::size_t j = 0; j < n; ++j) {
    double frac;
    if (j <= peak) {
      frac = peak > 0 ? static_cast<double>(j) / static_cast<double>(peak) : 1.0;
    } else {
      frac = static_cast<double>(n - 1 - j) / static_cast<double>(n - 1 - peak);
    }
    const double p = problem.home_position +
                     (problem.atom_position - problem.home_position) * frac;
    out.positions[j] = std::clamp(p, tw.position_min, tw.position_max);
  }
  return out;
}

ControlSequence synthetic_player_seed(SeedKind kind, const SeedConfig& cfg,
                                      double duration, double dt,
                                      const Problem& problem) {
  if (kind != SeedKind::kPlayerYellow && kind != SeedKind::kPlayerBlueTagged)
    throw BoundsError("synthetic_player_seed: kind must be a player kind");
  const std::size_t n = steps_for(duration, dt);
  const TweezerParams& tw = problem.tweezer;

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Players approach the atom but stay short of it.
  const double margin = 0.05;
  const double peak =
      problem.atom_position - margin - 0.04 * unit(rng);

  // The two tagged groups share the position shape; the blue-tagged
  // group turns the tweezer up far less.
  const double full = std::abs(tw.amplitude_min);
  const double level = (kind == SeedKind::kPlayerYellow)
                           ? full * (0.70 + 0.10 * unit(rng))
                           : full * (0.25 + 0.06 * unit(rng));
  const double ramp_fraction = 0.25;

  ControlSequence out;
  out.duration = duration;
  out.dt = dt;
  out.positions.resize(n);
  out.amplitudes.resize(n);
  const double amp_hi = std::min(0.0, tw.amplitude_max);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sample_fraction(j, n);
    const double p = problem.home_position +
                     (peak - problem.home_position) * std::sin(std::numbers::pi * s);
    const double a = -level * smoothstep01(s / ramp_fraction);
    out.positions[j] = std::clamp(p, tw.position_min, tw.position_max);
    out.amplitudes[j] = std::clamp(a, tw.amplitude_min, amp_hi);
  }
  return out;
}

ControlSequence make_seed(const SeedConfig& cfg, double duration, double dt,
                          const Problem& problem) {
  switch (cfg.kind) {
    case SeedKind::kSinusoidal:
      return sinusoidal_seed(cfg, duration, dt, problem);
    case SeedKind::kHiloHeuristic:
      return hilo_heuristic_seed(duration, dt, problem);
    case SeedKind::kPlayerYellow:
    case SeedKind::kPlayerBlueTagged:
      return synthetic_player_seed(cfg.kind, cfg, duration, dt, problem);
  }
  throw BoundsError("make_seed: unknown seed kind");
}

ControlSequence resample(const ControlSequence& controls, double new_duration,
                         double dt) {
  const std::size_t n_old = controls.n_steps();
  if (n_old == 0) throw DegenerateError("resample: empty control sequence");
  const std::size_t n_new = steps_for(new_duration, dt);
  if (n_new == 0) throw DegenerateError("resample: zero-length target duration");

  ControlSequence out;
  out.duration = new_duration;
  out.dt = dt;
  out.positions.resize(n_new);
  out.amplitudes.resize(n_new);
  for (std::size_t j = 0; j < n_new; ++j) {
    if (n_old == 1) {
      out.positions[j] = controls.positions[0];
      out.amplitudes[j] = controls.amplitudes[0];
      continue;
    }
    const double tau = sample_fraction(j, n_new) * static_cast<double>(n_old - 1);
    const std::size_t lo =
        std::min(static_cast<std::size_t>(tau), n_old - 2);
    const double w = tau - static_cast<double>(lo);
    out.positions[j] =
        (1.0 - w) * controls.positions[lo] + w * controls.positions[lo + 1];
    out.amplitudes[j] =
        (1.0 - w) * controls.amplitudes[lo] + w * controls.amplitudes[lo + 1];
  }
  return out;
}

}  // namespace bhw
