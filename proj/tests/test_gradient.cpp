#include <doctest.h>

#include <cmath>
#include <random>

#include "bhw/errors.hpp"
#include "bhw/gradient.hpp"
#include "bhw/seeding.hpp"

using namespace bhw;

namespace {

const Problem& shared_problem() {
  static const Problem problem = ProblemSetup::standard().build();
  return problem;
}

ControlSequence random_controls(const Problem& problem, double duration,
                                unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.2, 0.75);
  std::uniform_real_distribution<double> amp(-140.0, -5.0);
  ControlSequence c;
  c.duration = duration;
  c.dt = problem.physics.dt;
  const std::size_t n = steps_for(duration, c.dt);
  c.positions.resize(n);
  c.amplitudes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.positions[j] = pos(rng);
    c.amplitudes[j] = amp(rng);
  }
  return c;
}

// Test-side finite-difference oracle, independent of the adjoint path.
double fd_gradient(FidelityEngine& engine, const ControlSequence& controls,
                   char channel, std::size_t index, double step) {
  ControlSequence c = controls;
  auto& v = (channel == 'p') ? c.positions : c.amplitudes;
  const double base = v[index];
  v[index] = base + step;
  const double f_plus = engine.fidelity(c);
  v[index] = base - step;
  const double f_minus = engine.fidelity(c);
  return (f_plus - f_minus) / (2.0 * step);
}

}  // namespace

TEST_SUITE("gradient") {

TEST_CASE("fidelity basics") {
  const Problem& problem = shared_problem();
  FidelityEngine engine(problem);

  SUBCASE("zero duration against a distinct target gives the static overlap") {
    const ControlSequence empty =
        ControlSequence::constant(0.0, problem.physics.dt, 0.0, 0.0);
    const double f = engine.fidelity(empty);
    CHECK(f == doctest::Approx(std::norm(
                   inner_product(problem.target_state, problem.initial_state))));
  }
  SUBCASE("T = 0 with target equal to initial state gives exactly 1") {
    Problem p = problem;
    p.target_state = p.initial_state;
    FidelityEngine self(p);
    const ControlSequence empty = ControlSequence::constant(0.0, p.physics.dt, 0.0, 0.0);
    CHECK(self.fidelity(empty) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("tweezer off: the atom cannot be moved") {
    const ControlSequence off =
        ControlSequence::constant(0.2, problem.physics.dt, 0.0, 0.0);
    CHECK(engine.fidelity(off) < 0.05);
  }
  SUBCASE("fidelity stays in [0, 1]") {
    for (unsigned s = 0; s < 5; ++s) {
      const double f = engine.fidelity(random_controls(problem, 0.1, 100 + s));
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
  }
}

TEST_CASE("analytic gradient matches the finite-difference oracle") {
  const Problem& problem = shared_problem();
  FidelityEngine engine(problem);
  const ControlSequence controls = random_controls(problem, 0.1, 42);

  double f = 0.0;
  const GradientPair g =
      engine.fidelity_gradient(controls, DerivativeMode::kCorrect, &f);
  CHECK(f == doctest::Approx(engine.fidelity(controls)).epsilon(1e-12));

  for (std::size_t j = 0; j < controls.n_steps(); j += 5) {
    const double fd_p = fd_gradient(engine, controls, 'p', j, 1e-5);
    if (std::abs(g.d_positions[j]) > 1e-8) {
      CHECK(std::abs(g.d_positions[j] - fd_p) / std::abs(g.d_positions[j]) < 1e-4);
    }
    const double fd_a = fd_gradient(engine, controls, 'A', j, 1e-3);
    if (std::abs(g.d_amplitudes[j]) > 1e-8) {
      CHECK(std::abs(g.d_amplitudes[j] - fd_a) / std::abs(g.d_amplitudes[j]) < 1e-4);
    }
  }
}

TEST_CASE("directional derivative consistency") {
  const Problem& problem = shared_problem();
  FidelityEngine engine(problem);
  const ControlSequence controls = random_controls(problem, 0.08, 7);
  const GradientPair g = engine.fidelity_gradient(controls, DerivativeMode::kCorrect);

  std::mt19937_64 rng(99);
  std::normal_distribution<double> dist(0.0, 1.0);
  const double eps_p = 1e-6, eps_a = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> dir_p(controls.n_steps()), dir_a(controls.n_steps());
    for (auto& v : dir_p) v = dist(rng);
    for (auto& v : dir_a) v = dist(rng);

    ControlSequence plus = controls, minus = controls;
    for (std::size_t j = 0; j < controls.n_steps(); ++j) {
      plus.positions[j] += eps_p * dir_p[j];
      plus.amplitudes[j] += eps_a * dir_a[j];
      minus.positions[j] -= eps_p * dir_p[j];
      minus.amplitudes[j] -= eps_a * dir_a[j];
    }
    // directional derivative with the two channel scalings folded in
    double expected = 0.0;
    for (std::size_t j = 0; j < controls.n_steps(); ++j)
      expected += g.d_positions[j] * eps_p * dir_p[j] +
                  g.d_amplitudes[j] * eps_a * dir_a[j];
    const double measured =
        (engine.fidelity(plus) - engine.fidelity(minus)) / 2.0;
    CHECK(measured == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("flipped mode negates exactly the amplitude channel") {
  const Problem& problem = shared_problem();
  FidelityEngine engine(problem);
  const ControlSequence controls = random_controls(problem, 0.1, 5);

  const GradientPair correct =
      engine.fidelity_gradient(controls, DerivativeMode::kCorrect);
  const GradientPair flipped =
      engine.fidelity_gradient(controls, DerivativeMode::kSignFlippedAmplitude);

  for (std::size_t j = 0; j < controls.n_steps(); ++j) {
    CHECK(flipped.d_amplitudes[j] + correct.d_amplitudes[j] == 0.0);
    CHECK(flipped.d_positions[j] == correct.d_positions[j]);
  }
}

TEST_CASE("gradcheck") {
  const Problem& problem = shared_problem();
  FidelityEngine engine(problem);
  const ControlSequence controls = random_controls(problem, 0.1, 11);

  SUBCASE("correct mode: no sign disagreements") {
    const GradcheckReport report =
        engine.gradcheck(controls, DerivativeMode::kCorrect);
    CHECK(report.rows.size() == 2 * controls.n_steps());
    CHECK(!report.has_sign_disagreement());
  }
  SUBCASE("flipped mode: amplitudes disagree, positions agree") {
    const GradcheckReport report =
        engine.gradcheck(controls, DerivativeMode::kSignFlippedAmplitude);
    CHECK(report.sign_disagreements('p') == 0);
    const std::size_t checked = report.checked('A');
    REQUIRE(checked > 0);
    CHECK(static_cast<double>(report.sign_disagreements('A')) >=
          0.95 * static_cast<double>(checked));
  }
  SUBCASE("zero-duration controls produce an empty report") {
    const ControlSequence empty =
        ControlSequence::constant(0.0, problem.physics.dt, 0.0, 0.0);
    const GradcheckReport report = engine.gradcheck(empty, DerivativeMode::kCorrect);
    CHECK(report.rows.empty());
    CHECK(!report.has_sign_disagreement());
  }
}

TEST_CASE("gradient vanishes when the evolved state is the target") {
  // Pick the target to be exactly the propagated state under controls
  // with the tweezer parked far away at zero amplitude. Fidelity is then
  // 1 and the overlap is stationary: dV/dA couples only through the
  // envelope at the parked position where the state has no support, and
  // position moves change nothing at zero amplitude.
  const Problem& problem = shared_problem();
  Problem p = problem;

  Propagator prop(p.physics, p.tweezer);
  const ControlSequence off = ControlSequence::constant(0.05, p.physics.dt, -0.8, 0.0);
  const auto states = prop.propagate(p.initial_state, off);
  p.target_state = states.back();

  FidelityEngine engine(p);
  double f = 0.0;
  const GradientPair g = engine.fidelity_gradient(off, DerivativeMode::kCorrect, &f);
  CHECK(f > 1.0 - 1e-9);
  double norm = 0.0;
  for (std::size_t j = 0; j < off.n_steps(); ++j)
    norm += g.d_positions[j] * g.d_positions[j] +
            g.d_amplitudes[j] * g.d_amplitudes[j];
  CHECK(std::sqrt(norm) < 1e-6);
}

}  // TEST_SUITE
