#include "bhw/gradient.hpp"

#include <cmath>
#include <complex>

#include "bhw/errors.hpp"

namespace bhw {

using std::complex;

std::size_t GradcheckReport::sign_disagreements(char channel) const {
  std::size_t n = 0;
  for (const auto& r : rows)
    if (r.channel == channel && !r.negligible && r.sign_disagree) ++n;
  return n;
}

std::size_t GradcheckReport::checked(char channel) const {
  std::size_t n = 0;
  for (const auto& r : rows)
    if (r.channel == channel && !r.negligible) ++n;
  return n;
}

bool GradcheckReport::has_sign_disagreement() const {
  return sign_disagreements('p') + sign_disagreements('A') > 0;
}

FidelityEngine::FidelityEngine(Problem problem)
    : problem_(std::move(problem)),
      prop_(problem_.physics, problem_.tweezer) {}

double FidelityEngine::fidelity(const ControlSequence& controls) {
  controls.validate(problem_.tweezer);
  return fidelity_unchecked(controls);
}

double FidelityEngine::fidelity_unchecked(const ControlSequence& controls) {
  const Grid& grid = problem_.physics.grid;
  Eigen::VectorXcd v = problem_.initial_state.values;
  for (std::size_t j = 0; j < controls.n_steps(); ++j) {
    const Eigen::VectorXd pot =
        prop_.static_potential() +
        controls.amplitudes[j] *
            tweezer_envelope(grid, controls.positions[j], problem_.tweezer.waist);
    prop_.apply_half_potential(v, pot, +1);
    prop_.apply_kinetic(v, +1);
    prop_.apply_half_potential(v, pot, +1);
  }
  if (!v.allFinite()) throw NumericalError("fidelity: non-finite state");
  const complex<double> o =
      problem_.target_state.values.dot(v) * problem_.physics.grid.dx();
  return std::norm(o);
}

GradientPair FidelityEngine::fidelity_gradient(const ControlSequence& controls,
                                               DerivativeMode mode,
                                               double* fidelity_out) {
  controls.validate(problem_.tweezer);
  const Grid& grid = problem_.physics.grid;
  const double dx = grid.dx();
  const double dt = problem_.physics.dt;
  const std::size_t n = controls.n_steps();
  const double w2 = problem_.tweezer.waist * problem_.tweezer.waist;

  // Forward pass, keeping each state plus the per-step tweezer envelope
  // and half-kick phase for reuse in the backward pass.
  std::vector<Eigen::VectorXcd> states(n + 1);
  std::vector<Eigen::VectorXd> envelopes(n);
  std::vector<Eigen::VectorXcd> half_phases(n);
  states[0] = problem_.initial_state.values;
  for (std::size_t j = 0; j < n; ++j) {
    envelopes[j] = tweezer_envelope(grid, controls.positions[j],
                                    problem_.tweezer.waist);
    const Eigen::VectorXd pot =
        prop_.static_potential() + controls.amplitudes[j] * envelopes[j];
    half_phases[j] = prop_.half_potential_phase(pot);

    Eigen::VectorXcd v = states[j].cwiseProduct(half_phases[j]);
    prop_.apply_kinetic(v, +1);
    v.array() *= half_phases[j].array();
    if (!v.allFinite())
      throw NumericalError("fidelity_gradient: non-finite state at step " +
                           std::to_string(j));
    states[j + 1] = std::move(v);
  }

  const complex<double> overlap =
      problem_.target_state.values.dot(states[n]) * dx;
  if (fidelity_out) *fidelity_out = std::norm(overlap);

  GradientPair g;
  g.d_positions.assign(n, 0.0);
  g.d_amplitudes.assign(n, 0.0);

  // Costate seeded with <target|psi(T)> * target; the scaling folds the
  // outer overlap factor into the backward pass.
  Eigen::VectorXcd chi = overlap * problem_.target_state.values;

  for (std::size_t jj = n; jj-- > 0;) {
    const double p = controls.positions[jj];
    const double amp = controls.amplitudes[jj];
    const Eigen::VectorXd& env = envelopes[jj];

    // dV/dp and dV/dA (correct sign) at this sample.
    Eigen::VectorXd d_pos =
        (amp * 4.0 / w2) * (grid.x().array() - p) * env.array();

    // First half of the adjoint step: undo the trailing half kick, then
    // the kinetic step. chi_mid sits between the two half kicks.
    Eigen::VectorXcd chi_mid = chi.cwiseProduct(half_phases[jj].conjugate());
    prop_.apply_kinetic(chi_mid, -1);

    const Eigen::VectorXcd a = states[jj].cwiseProduct(half_phases[jj]);

    complex<double> term_p = 0.0, term_a = 0.0;
    for (int i = 0; i < grid.n_points(); ++i) {
      const complex<double> outer = std::conj(chi[i]) * states[jj + 1][i];
      const complex<double> inner_term = std::conj(chi_mid[i]) * a[i];
      term_p += (outer + inner_term) * d_pos[i];
      term_a += (outer + inner_term) * env[i];
    }
    g.d_positions[jj] = dt * dx * term_p.imag();
    g.d_amplitudes[jj] = dt * dx * term_a.imag();

    chi = chi_mid.cwiseProduct(half_phases[jj].conjugate());
  }

  if (mode == DerivativeMode::kSignFlippedAmplitude) {
    for (double& v : g.d_amplitudes) v = -v;
  }
  return g;
}

GradcheckReport FidelityEngine::gradcheck(const ControlSequence& controls,
                                          DerivativeMode mode,
                                          const GradcheckTolerances& tol) {
  GradcheckReport report;
  report.tolerances = tol;
  report.mode = mode;
  if (controls.n_steps() == 0) return report;

  const GradientPair analytic = fidelity_gradient(controls, mode);

  auto probe = [&](char channel, std::size_t index, double step,
                   double analytic_value) {
    ControlSequence c = controls;
    auto& v = (channel == 'p') ? c.positions : c.amplitudes;
    const double base = v[index];
    v[index] = base + step;
    const double f_plus = fidelity_unchecked(c);
    v[index] = base - step;
    const double f_minus = fidelity_unchecked(c);
    const double fd = (f_plus - f_minus) / (2.0 * step);

    GradcheckRow row;
    row.channel = channel;
    row.index = index;
    row.analytic = analytic_value;
    row.finite_difference = fd;
    const double scale = std::max(std::abs(analytic_value), std::abs(fd));
    row.rel_error = scale > 0 ? std::abs(analytic_value - fd) / scale : 0.0;
    row.negligible = scale <= tol.negligible;
    row.sign_disagree = !row.negligible &&
                        std::signbit(analytic_value) != std::signbit(fd) &&
                        std::abs(analytic_value - fd) > tol.negligible;
    report.rows.push_back(row);
  };

  for (std::size_t j = 0; j < controls.n_steps(); ++j)
    probe('p', j, tol.step_position, analytic.d_positions[j]);
  for (std::size_t j = 0; j < controls.n_steps(); ++j)
    probe('A', j, tol.step_amplitude, analytic.d_amplitudes[j]);
  return report;
}

}  // namespace bhw
