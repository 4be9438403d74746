#include "bhw/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "bhw/errors.hpp"

namespace bhw {

using std::complex;

Propagator::Propagator(PhysicsConfig physics, TweezerParams tweezer)
    : physics_(std::move(physics)),
      tweezer_(tweezer),
      fft_(physics_.grid.n_points()) {
  physics_.validate();
  tweezer_.validate(physics_.grid);
  v_static_ = assemble_static(physics_.grid, physics_.static_assembly);

  const auto& k = physics_.grid.k();
  kinetic_phase_.resize(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double w = k[i] * k[i] / (2.0 * physics_.mass) * physics_.dt;
    kinetic_phase_[i] = std::polar(1.0, -w);
  }
}

Eigen::VectorXd Propagator::potential(double p, double A) const {
  return v_static_ + tweezer_potential(physics_.grid, p, A, tweezer_);
}

void Propagator::apply_half_potential(Eigen::VectorXcd& v,
                                      const Eigen::VectorXd& pot,
                                      int direction) const {
  const double half = 0.5 * physics_.dt * direction;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] *= std::polar(1.0, -half * pot[i]);
}

void Propagator::apply_kinetic(Eigen::VectorXcd& v, int direction) {
  fft_.forward(v);
  if (direction >= 0) {
    v.array() *= kinetic_phase_.array();
  } else {
    v.array() *= kinetic_phase_.array().conjugate();
  }
  fft_.inverse(v);
}

Eigen::VectorXcd Propagator::half_potential_phase(const Eigen::VectorXd& pot) const {
  const double half = 0.5 * physics_.dt;
  Eigen::VectorXcd phase(pot.size());
  for (Eigen::Index i = 0; i < pot.size(); ++i)
    phase[i] = std::polar(1.0, -half * pot[i]);
  return phase;
}

void Propagator::step_in_place(Eigen::VectorXcd& v, const Eigen::VectorXd& pot) {
  apply_half_potential(v, pot, +1);
  apply_kinetic(v, +1);
  apply_half_potential(v, pot, +1);
}

WaveFunction Propagator::step(const WaveFunction& psi, double p, double A) {
  if (!psi.grid.compatible(physics_.grid))
    throw GridMismatchError("step: state grid does not match physics grid");
  Eigen::VectorXcd v = psi.values;
  step_in_place(v, potential(p, A));
  if (!v.allFinite()) throw NumericalError("step: non-finite amplitudes");
  return WaveFunction(psi.grid, std::move(v));
}

std::vector<WaveFunction> Propagator::propagate(const WaveFunction& psi0,
                                                const ControlSequence& controls) {
  controls.validate(tweezer_);
  if (!psi0.grid.compatible(physics_.grid))
    throw GridMismatchError("propagate: state grid does not match physics grid");

  std::vector<WaveFunction> states;
  states.reserve(controls.n_steps() + 1);
  states.push_back(psi0);
  Eigen::VectorXcd v = psi0.values;
  for (std::size_t j = 0; j < controls.n_steps(); ++j) {
    step_in_place(v, potential(controls.positions[j], controls.amplitudes[j]));
    if (!v.allFinite())
      throw NumericalError("propagate: non-finite amplitudes at step " +
                           std::to_string(j));
    states.emplace_back(psi0.grid, v);
  }
  return states;
}

Eigen::MatrixXd dense_hamiltonian(const PhysicsConfig& physics,
                                  const Eigen::VectorXd& potential) {
  const int n = physics.grid.n_points();
  Fft fft(n);
  // Kinetic term columns via the spectral operator applied to unit vectors.
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXcd col(n);
  for (int j = 0; j < n; ++j) {
    col.setZero();
    col[j] = 1.0;
    fft.forward(col);
    for (int i = 0; i < n; ++i)
      col[i] *= physics.grid.k()[i] * physics.grid.k()[i] / (2.0 * physics.mass);
    fft.inverse(col);
    h.col(j) = col.real();
  }
  h = 0.5 * (h + h.transpose().eval());  // symmetrize roundoff
  h.diagonal() += potential;
  return h;
}

namespace {

// One imaginary-time split step with renormalization.
void imaginary_step(Eigen::VectorXcd& v, const Eigen::VectorXd& pot,
                    const Eigen::VectorXd& k, double mass, double dtau,
                    double dx, Fft& fft) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] *= std::exp(-0.5 * dtau * pot[i]);
  fft.forward(v);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] *= std::exp(-dtau * k[i] * k[i] / (2.0 * mass));
  fft.inverse(v);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] *= std::exp(-0.5 * dtau * pot[i]);
  const double n2 = v.squaredNorm() * dx;
  if (!(n2 > 0) || !std::isfinite(n2))
    throw NumericalError("imaginary-time step produced a degenerate state");
  v /= std::sqrt(n2);
}

double rayleigh_quotient(const Eigen::MatrixXd& h, const Eigen::VectorXd& v) {
  return v.dot(h * v) / v.squaredNorm();
}

}  // namespace

WaveFunction ground_state(const StateSpec& spec, const PhysicsConfig& physics,
                          const GroundStateOptions& options) {
  if (spec.assembly.empty())
    throw DegenerateError("ground_state: empty potential assembly");
  spec.assembly.validate(physics.grid);

  const Grid& grid = physics.grid;
  const Eigen::VectorXd pot = assemble_static(grid, spec.assembly);

  // Start from a Gaussian sitting in the deepest well.
  const auto& deepest = *std::min_element(
      spec.assembly.wells.begin(), spec.assembly.wells.end(),
      [](const GaussianWell& a, const GaussianWell& b) { return a.depth < b.depth; });
  if (!(deepest.depth < 0))
    throw ConvergenceError("ground_state: assembly has no binding well");
  const double omega =
      std::sqrt(4.0 * std::abs(deepest.depth) / (physics.mass * deepest.waist * deepest.waist));
  const double sigma = 1.0 / std::sqrt(2.0 * physics.mass * omega);

  Eigen::VectorXcd v(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i) {
    const double u = (grid.x()[i] - deepest.center) / sigma;
    v[i] = std::exp(-0.25 * u * u);
  }
  v /= std::sqrt(v.squaredNorm() * grid.dx());

  Fft fft(grid.n_points());
  const Eigen::MatrixXd h = dense_hamiltonian(physics, pot);

  // Imaginary-time relaxation until the Rayleigh quotient stalls.
  double prev_energy = rayleigh_quotient(h, v.real());
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    imaginary_step(v, pot, grid.k(), physics.mass, options.dtau, grid.dx(), fft);
    if ((it + 1) % 50 == 0) {
      const double energy = rayleigh_quotient(h, v.real());
      if (std::abs(energy - prev_energy) <=
          options.energy_tol * std::max(1.0, std::abs(energy)))
        break;
      prev_energy = energy;
    }
  }

  // The Trotterized fixed point carries an O(dtau^2) bias; a few shifted
  // inverse-power refinements against the dense operator remove it and
  // land the eigenresidual at roundoff.
  Eigen::VectorXd r = v.real();
  r /= r.norm();
  for (int pit = 0; pit < options.polish_iterations; ++pit) {
    const double sigma_shift = rayleigh_quotient(h, r);
    Eigen::MatrixXd shifted = h;
    shifted.diagonal().array() -= sigma_shift;
    Eigen::VectorXd z = shifted.partialPivLu().solve(r);
    const double zn = z.norm();
    if (!std::isfinite(zn) || zn == 0.0) break;  // exactly on the eigenvalue
    r = z / zn;
  }
  const double energy = rayleigh_quotient(h, r);
  const double residual = (h * r - energy * r).norm() * std::sqrt(grid.dx()) / r.norm();
  if (!(residual < options.residual_tol))
    throw ConvergenceError("ground_state: eigenresidual " + std::to_string(residual) +
                           " above tolerance after polish");

  if (r.sum() < 0) r = -r;  // fix the overall sign
  Eigen::VectorXcd out = r.cast<complex<double>>();
  out /= std::sqrt(out.squaredNorm() * grid.dx());
  return WaveFunction(grid, std::move(out));
}

}  // namespace bhw
