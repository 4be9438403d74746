#include "bhw/wavefunction.hpp"

#include <cmath>

#include "bhw/errors.hpp"

namespace bhw {

WaveFunction::WaveFunction(Grid g, Eigen::VectorXcd v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.n_points())
    throw GridMismatchError("wavefunction length does not match grid");
}

double WaveFunction::norm_squared() const {
  return values.squaredNorm() * grid.dx();
}

std::complex<double> inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (!a.grid.compatible(b.grid))
    throw GridMismatchError("inner_product: grids differ");
  return a.values.dot(b.values) * a.grid.dx();  // Eigen dot conjugates a
}

WaveFunction normalize(const WaveFunction& psi) {
  const double n2 = psi.norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw DegenerateError("normalize: state has zero or non-finite norm");
  return WaveFunction(psi.grid, psi.values / std::sqrt(n2));
}

double expectation_position(const WaveFunction& psi) {
  return (psi.grid.x().array() * psi.values.array().abs2()).sum() * psi.grid.dx();
}

double boundary_occupancy(const WaveFunction& psi, double cutoff) {
  double acc = 0.0;
  for (int i = 0; i < psi.grid.n_points(); ++i) {
    if (std::abs(psi.grid.x()[i]) > cutoff) acc += std::norm(psi.values[i]);
  }
  return acc * psi.grid.dx();
}

}  // namespace bhw
