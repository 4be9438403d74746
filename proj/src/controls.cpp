#include "bhw/controls.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bhw/errors.hpp"

namespace bhw {

std::size_t steps_for(double duration, double dt) {
  if (!(dt > 0)) throw BoundsError("dt must be positive");
  if (duration < 0) throw BoundsError("duration must be non-negative");
  return static_cast<std::size_t>(std::llround(duration / dt));
}

ControlSequence ControlSequence::constant(double duration, double dt,
                                          double position, double amplitude) {
  ControlSequence c;
  c.duration = duration;
  c.dt = dt;
  const std::size_t n = steps_for(duration, dt);
  c.positions.assign(n, position);
  c.amplitudes.assign(n, amplitude);
  return c;
}

void ControlSequence::validate(const TweezerParams& params) const {
  const std::size_t n = steps_for(duration, dt);
  if (positions.size() != n || amplitudes.size() != n) {
    std::ostringstream os;
    os << "control sequence has " << positions.size() << "/"
       << amplitudes.size() << " samples, expected " << n << " for duration "
       << duration << " at dt " << dt;
    throw BoundsError(os.str());
  }
  for (std::size_t j = 0; j < n; ++j)
    check_control_bounds(positions[j], amplitudes[j], params);
}

ControlSequence ControlSequence::truncated(std::size_t n) const {
  if (n > n_steps()) throw BoundsError("truncated: cannot extend a sequence");
  ControlSequence c;
  c.dt = dt;
  c.duration = static_cast<double>(n) * dt;
  c.positions.assign(positions.begin(), positions.begin() + n);
  c.amplitudes.assign(amplitudes.begin(), amplitudes.begin() + n);
  return c;
}

double mean_amplitude(const ControlSequence& c) {
  if (c.amplitudes.empty()) return 0.0;
  double acc = 0.0;
  for (double a : c.amplitudes) acc += a;
  return acc / static_cast<double>(c.amplitudes.size());
}

double max_position(const ControlSequence& c) {
  if (c.positions.empty()) return 0.0;
  return *std::max_element(c.positions.begin(), c.positions.end());
}

}  // namespace bhw
