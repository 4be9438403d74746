#pragma once

#include <complex>

#include <Eigen/Core>

#include "bhw/grid.hpp"

namespace bhw {

/// Complex amplitudes on a grid. Normalization uses the rectangle-rule
/// norm: sum |psi_i|^2 dx.
struct WaveFunction {
  Grid grid;
  Eigen::VectorXcd values;

  WaveFunction(Grid g, Eigen::VectorXcd v);

  double norm_squared() const;
};

std::complex<double> inner_product(const WaveFunction& a, const WaveFunction& b);

WaveFunction normalize(const WaveFunction& psi);

/// <x> for a normalized state.
double expectation_position(const WaveFunction& psi);

/// Probability carried by grid points with |x| > cutoff.
double boundary_occupancy(const WaveFunction& psi, double cutoff);

}  // namespace bhw
