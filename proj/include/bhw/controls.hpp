#pragma once

#include <cstddef>
#include <vector>

#include "bhw/potentials.hpp"

namespace bhw {

/// Piecewise-constant controls: sample j drives propagation step j,
/// i.e. the interval [j dt, (j+1) dt). n_steps = round(duration / dt).
struct ControlSequence {
  double duration = 0.0;
  double dt = 0.0;
  std::vector<double> positions;
  std::vector<double> amplitudes;

  std::size_t n_steps() const { return positions.size(); }

  /// Constant controls over round(duration/dt) steps.
  static ControlSequence constant(double duration, double dt, double position,
                                  double amplitude);

  /// Throws unless lengths match round(duration/dt) and every sample is
  /// inside the tweezer bounds.
  void validate(const TweezerParams& params) const;

  /// Shorten to the first n samples, keeping dt.
  ControlSequence truncated(std::size_t n) const;
};

std::size_t steps_for(double duration, double dt);

/// dF/d(sample) for both control channels; aligned with the sequence.
struct GradientPair {
  std::vector<double> d_positions;
  std::vector<double> d_amplitudes;
};

double mean_amplitude(const ControlSequence& c);
double max_position(const ControlSequence& c);

}  // namespace bhw
