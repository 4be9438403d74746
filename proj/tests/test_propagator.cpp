#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "bhw/errors.hpp"
#include "bhw/propagator.hpp"

using namespace bhw;
using std::complex;

namespace {

PhysicsConfig free_physics() {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{};
  return physics;
}

WaveFunction gaussian_packet(const Grid& g, double center, double sigma) {
  Eigen::VectorXcd v(g.n_points());
  for (int i = 0; i < g.n_points(); ++i) {
    const double u = (g.x()[i] - center) / sigma;
    v[i] = std::exp(-0.25 * u * u);
  }
  return normalize(WaveFunction(g, v));
}

double position_std(const WaveFunction& psi) {
  const double mean = expectation_position(psi);
  const double x2 =
      (psi.grid.x().array().square() * psi.values.array().abs2()).sum() *
      psi.grid.dx();
  return std::sqrt(x2 - mean * mean);
}

}  // namespace

TEST_SUITE("propagator") {

TEST_CASE("free Gaussian spreads at the analytic rate") {
  PhysicsConfig physics = free_physics();
  Propagator prop(physics, TweezerParams{});

  const double sigma0 = 0.12;
  WaveFunction psi = gaussian_packet(physics.grid, 0.0, sigma0);

  const int n_steps = 15;  // t = 0.03
  const double t = n_steps * physics.dt;
  for (int s = 0; s < n_steps; ++s) psi = prop.step(psi, 0.0, 0.0);

  // sigma(t) = sigma0 sqrt(1 + (t / (2 m sigma0^2))^2)
  const double ratio = t / (2.0 * physics.mass * sigma0 * sigma0);
  const double expected = sigma0 * std::sqrt(1.0 + ratio * ratio);
  CHECK(position_std(psi) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("ground state of a deep well is stationary under one step") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.0, -90.0, 0.25}}};
  Propagator prop(physics, TweezerParams{});

  const WaveFunction psi = ground_state(StateSpec{physics.static_assembly}, physics);
  const WaveFunction next = prop.step(psi, 0.5, 0.0);
  CHECK(std::abs(inner_product(psi, next)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("norm drift per step below 1e-12") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.6, -90.0, 0.25}}};
  Propagator prop(physics, TweezerParams{});

  WaveFunction psi = gaussian_packet(physics.grid, 0.55, 0.08);
  for (int s = 0; s < 20; ++s) {
    const double before = psi.norm_squared();
    psi = prop.step(psi, 0.5, -120.0);
    CHECK(std::abs(psi.norm_squared() - before) < 1e-12);
  }
}

TEST_CASE("unitarity over 300 steps") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.6, -90.0, 0.25}}};
  Propagator prop(physics, TweezerParams{});

  ControlSequence controls = ControlSequence::constant(0.6, physics.dt, 0.3, -100.0);
  REQUIRE(controls.n_steps() == 300);
  const WaveFunction psi0 = ground_state(StateSpec{physics.static_assembly}, physics);
  const auto states = prop.propagate(psi0, controls);
  CHECK(std::abs(states.back().norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("propagate returns all intermediate states") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.6, -90.0, 0.25}}};
  Propagator prop(physics, TweezerParams{});
  const WaveFunction psi0 = ground_state(StateSpec{physics.static_assembly}, physics);

  SUBCASE("zero steps yields just the input") {
    const auto states = prop.propagate(psi0, ControlSequence::constant(0.0, physics.dt, 0.0, 0.0));
    REQUIRE(states.size() == 1);
    CHECK((states[0].values - psi0.values).norm() == 0.0);
  }
  SUBCASE("duration 0.17 gives 85 steps, 86 states") {
    const auto states = prop.propagate(psi0, ControlSequence::constant(0.17, physics.dt, 0.0, -50.0));
    CHECK(states.size() == 86);
  }
  SUBCASE("propagation composes single steps") {
    const ControlSequence controls = ControlSequence::constant(0.02, physics.dt, 0.1, -80.0);
    const auto states = prop.propagate(psi0, controls);
    WaveFunction manual = psi0;
    for (std::size_t s = 0; s < controls.n_steps(); ++s)
      manual = prop.step(manual, 0.1, -80.0);
    CHECK((states.back().values - manual.values).norm() < 1e-14);
  }
}

TEST_CASE("time reversal recovers the initial state") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.6, -90.0, 0.25}}};
  Propagator prop(physics, TweezerParams{});
  const WaveFunction psi0 = ground_state(StateSpec{physics.static_assembly}, physics);

  const int n = 100;
  const double p = 0.35, A = -110.0;
  const Eigen::VectorXd pot = prop.potential(p, A);

  Eigen::VectorXcd v = psi0.values;
  for (int s = 0; s < n; ++s) {
    prop.apply_half_potential(v, pot, +1);
    prop.apply_kinetic(v, +1);
    prop.apply_half_potential(v, pot, +1);
  }
  for (int s = 0; s < n; ++s) {
    prop.apply_half_potential(v, pot, -1);
    prop.apply_kinetic(v, -1);
    prop.apply_half_potential(v, pot, -1);
  }
  const WaveFunction back(physics.grid, v);
  CHECK(std::norm(inner_product(psi0, back)) > 1.0 - 1e-8);
}

TEST_CASE("edge leakage stays below 1e-4 in the default scenario") {
  const Problem problem = ProblemSetup::standard().build();
  Propagator prop(problem.physics, problem.tweezer);

  // A transport-like drive: out to the atom and back at full power.
  const double T = 0.4;
  const std::size_t n = steps_for(T, problem.physics.dt);
  ControlSequence controls;
  controls.duration = T;
  controls.dt = problem.physics.dt;
  controls.positions.resize(n);
  controls.amplitudes.assign(n, -150.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(n - 1);
    controls.positions[j] = 0.6 * std::sin(3.14159265358979 * s);
  }

  const auto states = prop.propagate(problem.initial_state, controls);
  for (const auto& psi : states)
    CHECK(boundary_occupancy(psi, 0.9) < 1e-4);
}

TEST_CASE("ground state solver") {
  PhysicsConfig physics;
  physics.static_assembly = PotentialAssembly{{GaussianWell{0.6, -150.0, 0.25}}};
  const StateSpec spec{physics.static_assembly};

  SUBCASE("sits at the well center") {
    const WaveFunction psi = ground_state(spec, physics);
    CHECK(expectation_position(psi) == doctest::Approx(0.6).epsilon(0.01 / 0.6));
  }

  SUBCASE("eigenresidual is small and energy is near the harmonic estimate") {
    const WaveFunction psi = ground_state(spec, physics);
    const Eigen::MatrixXd h =
        dense_hamiltonian(physics, assemble_static(physics.grid, spec.assembly));
    const Eigen::VectorXd v = psi.values.real();
    const double energy = v.dot(h * v) / v.squaredNorm();
    const double residual =
        (h * v - energy * v).norm() * std::sqrt(physics.grid.dx()) / v.norm();
    CHECK(residual < 1e-8);

    // omega = sqrt(4 |depth| / (m w^2)); anharmonicity pulls E0 below
    // depth + omega/2, but only by a few percent for a deep well.
    const double omega = std::sqrt(4.0 * 150.0 / (physics.mass * 0.25 * 0.25));
    const double harmonic = -150.0 + 0.5 * omega;
    CHECK(energy < harmonic);
    CHECK(std::abs(energy - harmonic) < 0.10 * std::abs(harmonic));
  }

  SUBCASE("agrees with dense diagonalization") {
    const WaveFunction psi = ground_state(spec, physics);
    const Eigen::MatrixXd h =
        dense_hamiltonian(physics, assemble_static(physics.grid, spec.assembly));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    Eigen::VectorXd v0 = eig.eigenvectors().col(0);
    v0 /= std::sqrt(v0.squaredNorm() * physics.grid.dx());
    const WaveFunction dense(physics.grid, v0.cast<complex<double>>());
    CHECK(std::norm(inner_product(psi, dense)) > 1.0 - 1e-6);
  }

  SUBCASE("invariant under doubling the iteration budget") {
    GroundStateOptions opts;
    const WaveFunction a = ground_state(spec, physics, opts);
    opts.max_iterations *= 2;
    const WaveFunction b = ground_state(spec, physics, opts);
    CHECK(std::norm(inner_product(a, b)) > 1.0 - 1e-8);
  }

  SUBCASE("empty assembly is rejected") {
    CHECK_THROWS_AS((void)ground_state(StateSpec{}, physics), DegenerateError);
  }
}

}  // TEST_SUITE
