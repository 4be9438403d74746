#pragma once

#include <complex>
#include <vector>

#include "bhw/controls.hpp"
#include "bhw/fft.hpp"
#include "bhw/problem.hpp"
#include "bhw/wavefunction.hpp"

namespace bhw {

/// Split-step spectral integrator for
///   H(t) = p^2/(2m) + V_static(x) + V_tweezer(x; p(t), A(t)).
/// One step is exp(-i V dt/2) exp(-i T dt) exp(-i V dt/2), which is
/// exactly unitary on the periodic grid. The same object also drives the
/// backward (adjoint) passes and imaginary-time relaxation, so one plan
/// set serves everything. Not safe to share across threads; create one
/// per worker.
class Propagator {
 public:
  Propagator(PhysicsConfig physics, TweezerParams tweezer);

  const PhysicsConfig& physics() const { return physics_; }
  const TweezerParams& tweezer() const { return tweezer_; }
  const Eigen::VectorXd& static_potential() const { return v_static_; }

  /// Total potential at a control sample (bounds-checked).
  Eigen::VectorXd potential(double p, double A) const;

  /// One dt of unitary evolution under the frozen Hamiltonian.
  WaveFunction step(const WaveFunction& psi, double p, double A);

  /// All intermediate states psi_0..psi_n (n = controls.n_steps()).
  std::vector<WaveFunction> propagate(const WaveFunction& psi0,
                                      const ControlSequence& controls);

  // Low-level pieces used by the gradient assembly. `direction` is +1
  // for the forward step and -1 for the adjoint (inverse) step.
  void apply_half_potential(Eigen::VectorXcd& v, const Eigen::VectorXd& pot,
                            int direction) const;
  void apply_kinetic(Eigen::VectorXcd& v, int direction);

  /// Half-step potential phase exp(-i V dt/2) as a reusable vector.
  Eigen::VectorXcd half_potential_phase(const Eigen::VectorXd& pot) const;

 private:
  void step_in_place(Eigen::VectorXcd& v, const Eigen::VectorXd& pot);

  PhysicsConfig physics_;
  TweezerParams tweezer_;
  Eigen::VectorXd v_static_;
  Eigen::VectorXcd kinetic_phase_;      // exp(-i dt k^2 / 2m)
  mutable Fft fft_;
};

struct GroundStateOptions {
  double dtau = 1e-3;           // imaginary-time step
  int max_iterations = 20000;   // imaginary-time budget
  double energy_tol = 1e-13;    // relative energy change stop rule
  int polish_iterations = 3;    // inverse-iteration refinements
  double residual_tol = 1e-9;   // ||H psi - E psi|| contract
};

/// Ground state of a potential assembly: imaginary-time relaxation
/// followed by a few shifted inverse-power refinements on the dense
/// spectral Hamiltonian, so the eigenresidual meets residual_tol.
WaveFunction ground_state(const StateSpec& spec, const PhysicsConfig& physics,
                          const GroundStateOptions& options = {});

/// Dense matrix of the discrete Hamiltonian (spectral kinetic term plus
/// diagonal potential). n x n with n = grid points; used by the ground
/// state solver and by diagnostics.
Eigen::MatrixXd dense_hamiltonian(const PhysicsConfig& physics,
                                  const Eigen::VectorXd& potential);

}  // namespace bhw
