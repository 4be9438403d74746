#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "bhw/grid.hpp"

namespace bhw {

/// Controllable Gaussian tweezer: V(x) = A exp(-2 (x-p)^2 / w^2).
/// A is a depth, so the usable range is negative; -150 is full power.
struct TweezerParams {
  double waist = 0.25;
  double amplitude_min = -150.0;
  double amplitude_max = 0.0;
  double position_min = -0.9;
  double position_max = 0.9;

  void validate(const Grid& grid) const;
};

/// One static Gaussian well, same functional form as the tweezer.
struct GaussianWell {
  double center = 0.0;
  double depth = 0.0;  // <= 0
  double waist = 0.25;
};

struct PotentialAssembly {
  std::vector<GaussianWell> wells;

  bool empty() const { return wells.empty(); }
  void validate(const Grid& grid) const;
};

/// Which amplitude derivative the gradient machinery uses. The flipped
/// variant negates dV/dA and nothing else, turning fidelity ascent into
/// descent on the amplitude channel.
enum class DerivativeMode { kCorrect, kSignFlippedAmplitude };

std::string to_string(DerivativeMode mode);

/// exp(-2 (x-p)^2 / w^2) sampled on the grid; the shared envelope of the
/// tweezer and both of its control derivatives.
Eigen::VectorXd tweezer_envelope(const Grid& grid, double p, double waist);

Eigen::VectorXd tweezer_potential(const Grid& grid, double p, double A,
                                  const TweezerParams& params);

/// dV/dp = A (4/w^2) (x-p) exp(-2 (x-p)^2 / w^2).
Eigen::VectorXd d_tweezer_d_position(const Grid& grid, double p, double A,
                                     const TweezerParams& params);

/// dV/dA = exp(-2 (x-p)^2 / w^2); the flipped mode returns its exact
/// negation.
Eigen::VectorXd d_tweezer_d_amplitude(const Grid& grid, double p, double A,
                                      const TweezerParams& params,
                                      DerivativeMode mode);

Eigen::VectorXd assemble_static(const Grid& grid, const PotentialAssembly& assembly);

void check_control_bounds(double p, double A, const TweezerParams& params);

}  // namespace bhw
