#pragma once

#include <cstdint>
#include <string>

#include "bhw/controls.hpp"
#include "bhw/problem.hpp"

namespace bhw {

enum class SeedKind {
  kSinusoidal,
  kHiloHeuristic,
  kPlayerYellow,
  kPlayerBlueTagged,
};

std::string to_string(SeedKind kind);

struct SeedConfig {
  std::uint64_t rng_seed = 1;
  int n_harmonics = 8;
  double sigma_position = 0.1;
  double sigma_amplitude = 15.0;
  SeedKind kind = SeedKind::kSinusoidal;
};

/// Zero-endpoint sine series around the home position:
///   p(s) = p_home + sum_k c_k sin(k pi s),  c_k ~ U[-sigma_p, sigma_p]
///   A(s) = clamp(sum_k c'_k sin(k pi s), A_min, 0)
/// with s the sample fraction in [0, 1]. Deterministic per rng seed.
ControlSequence sinusoidal_seed(const SeedConfig& cfg, double duration, double dt,
                                const Problem& problem);

/// Full-power amplitude, position out to the atom over the first fifth
/// of the duration and linearly home over the rest.
ControlSequence hilo_heuristic_seed(double duration, double dt,
                                    const Problem& problem);

/// Player-like trajectories: a single approach-and-return arc that stays
/// short of the atom; the two kinds differ only in how strongly the
/// amplitude channel is ramped up.
ControlSequence synthetic_player_seed(SeedKind kind, const SeedConfig& cfg,
                                      double duration, double dt,
                                      const Problem& problem);

ControlSequence make_seed(const SeedConfig& cfg, double duration, double dt,
                          const Problem& problem);

/// Time-rescaled linear interpolation onto round(new_duration/dt)
/// samples; both endpoint values are preserved.
ControlSequence resample(const ControlSequence& controls, double new_duration,
                         double dt);

}  // namespace bhw
