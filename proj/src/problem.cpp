#include "bhw/problem.hpp"

#include "bhw/errors.hpp"
#include "bhw/propagator.hpp"

namespace bhw {

void PhysicsConfig::validate() const {
  if (!(dt > 0)) throw BoundsError("dt must be positive");
  if (!(mass > 0)) throw BoundsError("mass must be positive");
  static_assembly.validate(grid);
}

ProblemSetup ProblemSetup::standard(double static_depth) {
  ProblemSetup s;
  s.physics.static_assembly.wells = {GaussianWell{0.6, static_depth, 0.25}};
  return s;
}

Problem ProblemSetup::build() const {
  physics.validate();
  tweezer.validate(physics.grid);
  if (home_position < physics.grid.x_min() || home_position > physics.grid.x_max())
    throw BoundsError("home position outside the grid domain");

  StateSpec init = initial_state.value_or(StateSpec{physics.static_assembly});
  StateSpec target = target_state.value_or(StateSpec{PotentialAssembly{
      {GaussianWell{home_position, tweezer.amplitude_min, tweezer.waist}}}});

  return Problem{physics,
                 tweezer,
                 home_position,
                 atom_position,
                 ground_state(init, physics),
                 ground_state(target, physics)};
}

}  // namespace bhw
