#pragma once

#include <optional>

#include "bhw/grid.hpp"
#include "bhw/potentials.hpp"
#include "bhw/wavefunction.hpp"

namespace bhw {

/// Physical constants of a run. hbar is fixed at 1 throughout.
struct PhysicsConfig {
  Grid grid = Grid::standard();
  double mass = 2.0;
  double dt = 0.002;
  PotentialAssembly static_assembly;

  void validate() const;
};

/// A state specified as the ground state of a potential composition.
struct StateSpec {
  PotentialAssembly assembly;
};

/// Everything the fidelity, gradient and optimizer layers need:
/// physics, tweezer, the transport endpoints, and the prepared
/// initial/target states.
struct Problem {
  PhysicsConfig physics;
  TweezerParams tweezer;
  double home_position = 0.0;
  double atom_position = 0.6;
  WaveFunction initial_state;
  WaveFunction target_state;
};

/// Unprepared problem description; ground states are solved on build().
struct ProblemSetup {
  PhysicsConfig physics;
  TweezerParams tweezer;
  double home_position = 0.0;
  double atom_position = 0.6;
  /// Default: the static assembly itself.
  std::optional<StateSpec> initial_state;
  /// Default: a tweezer-shaped well at home_position at full power.
  std::optional<StateSpec> target_state;

  /// Single static well of the given depth at the atom position;
  /// initial/target states left at their defaults.
  static ProblemSetup standard(double static_depth = -120.0);

  Problem build() const;
};

}  // namespace bhw
