#include "bhw/potentials.hpp"

#include <cmath>
#include <sstream>

#include "bhw/errors.hpp"

namespace bhw {

std::string to_string(DerivativeMode mode) {
  return mode == DerivativeMode::kCorrect ? "correct" : "sign_flipped_amplitude";
}

void TweezerParams::validate(const Grid& grid) const {
  if (!(waist > 0)) throw BoundsError("tweezer waist must be positive");
  if (!(amplitude_min < amplitude_max))
    throw BoundsError("tweezer amplitude bounds inverted");
  if (!(position_min < position_max))
    throw BoundsError("tweezer position bounds inverted");
  if (position_min <= grid.x_min() || position_max >= grid.x_max())
    throw BoundsError("tweezer position bounds must lie strictly inside the grid domain");
}

void PotentialAssembly::validate(const Grid& grid) const {
  for (const auto& w : wells) {
    if (w.center <= grid.x_min() || w.center >= grid.x_max())
      throw BoundsError("static well center outside the grid domain");
    if (w.depth > 0) throw BoundsError("static well depth must be <= 0");
    if (!(w.waist > 0)) throw BoundsError("static well waist must be positive");
  }
}

void check_control_bounds(double p, double A, const TweezerParams& params) {
  if (p < params.position_min || p > params.position_max) {
    std::ostringstream os;
    os << "tweezer position " << p << " outside [" << params.position_min
       << ", " << params.position_max << "]";
    throw BoundsError(os.str());
  }
  if (A < params.amplitude_min || A > params.amplitude_max) {
    std::ostringstream os;
    os << "tweezer amplitude " << A << " outside [" << params.amplitude_min
       << ", " << params.amplitude_max << "]";
    throw BoundsError(os.str());
  }
}

Eigen::VectorXd tweezer_envelope(const Grid& grid, double p, double waist) {
  const double c = -2.0 / (waist * waist);
  return ((grid.x().array() - p).square() * c).exp();
}

Eigen::VectorXd tweezer_potential(const Grid& grid, double p, double A,
                                  const TweezerParams& params) {
  check_control_bounds(p, A, params);
  return A * tweezer_envelope(grid, p, params.waist);
}

Eigen::VectorXd d_tweezer_d_position(const Grid& grid, double p, double A,
                                     const TweezerParams& params) {
  check_control_bounds(p, A, params);
  const double c = A * 4.0 / (params.waist * params.waist);
  return c * (grid.x().array() - p) *
         tweezer_envelope(grid, p, params.waist).array();
}

Eigen::VectorXd d_tweezer_d_amplitude(const Grid& grid, double p, double A,
                                      const TweezerParams& params,
                                      DerivativeMode mode) {
  check_control_bounds(p, A, params);
  Eigen::VectorXd env = tweezer_envelope(grid, p, params.waist);
  if (mode == DerivativeMode::kSignFlippedAmplitude) env = -env;
  return env;
}

Eigen::VectorXd assemble_static(const Grid& grid, const PotentialAssembly& assembly) {
  assembly.validate(grid);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(grid.n_points());
  for (const auto& w : assembly.wells)
    v += w.depth * tweezer_envelope(grid, w.center, w.waist);
  return v;
}

}  // namespace bhw
