#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bhw/errors.hpp"
#include "bhw/grid.hpp"
#include "bhw/propagator.hpp"
#include "bhw/wavefunction.hpp"

using namespace bhw;
using std::complex;

namespace {

WaveFunction random_state(const Grid& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd v(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i)
    v[i] = complex<double>(dist(rng), dist(rng));
  return WaveFunction(grid, v);
}

// Direct-summation oracle, independent of the library inner product.
complex<double> summed_overlap(const WaveFunction& a, const WaveFunction& b) {
  complex<double> acc = 0.0;
  for (int i = 0; i < a.grid.n_points(); ++i)
    acc += std::conj(a.values[i]) * b.values[i];
  return acc * a.grid.dx();
}

}  // namespace

TEST_SUITE("core-state") {

TEST_CASE("grid covers the periodic domain") {
  const Grid g = Grid::standard();
  CHECK(g.n_points() == 128);
  CHECK(g.x()[0] == -1.0);
  CHECK(g.dx() == doctest::Approx(2.0 / 128).epsilon(1e-15));
  CHECK(g.x()[127] == doctest::Approx(1.0 - g.dx()).epsilon(1e-15));
  for (int i = 1; i < g.n_points(); ++i)
    CHECK(g.x()[i] - g.x()[i - 1] == doctest::Approx(g.dx()).epsilon(1e-12));
}

TEST_CASE("inner product of a normalized state with itself is one") {
  const Grid g = Grid::standard();
  const WaveFunction psi = normalize(random_state(g, 7));
  const auto ip = inner_product(psi, psi);
  CHECK(ip.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ip.imag()) < 1e-12);
}

TEST_CASE("disjoint support gives zero overlap") {
  const Grid g = Grid::standard();
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(g.n_points());
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(g.n_points());
  a[10] = 1.0;
  b[90] = 1.0;
  CHECK(std::abs(inner_product(WaveFunction(g, a), WaveFunction(g, b))) == 0.0);
}

TEST_CASE("ground state shifted by half the domain has negligible overlap") {
  PhysicsConfig physics;
  const Grid& g = physics.grid;
  const StateSpec spec{PotentialAssembly{{GaussianWell{0.0, -120.0, 0.25}}}};
  const WaveFunction psi = ground_state(spec, physics);

  // Shift by half the domain width (64 grid points, periodic roll).
  Eigen::VectorXcd rolled(g.n_points());
  for (int i = 0; i < g.n_points(); ++i)
    rolled[(i + 64) % g.n_points()] = psi.values[i];
  const WaveFunction shifted(g, rolled);

  const auto direct = summed_overlap(psi, shifted);
  CHECK(std::abs(inner_product(psi, shifted)) ==
        doctest::Approx(std::abs(direct)).epsilon(1e-12));
  CHECK(std::abs(inner_product(psi, shifted)) < 1e-6);
}

TEST_CASE("inner product is conjugate-symmetric and Cauchy-Schwarz bounded") {
  const Grid g = Grid::standard();
  const WaveFunction a = normalize(random_state(g, 1));
  const WaveFunction b = normalize(random_state(g, 2));
  const auto ab = inner_product(a, b);
  const auto ba = inner_product(b, a);
  CHECK(ab.real() == doctest::Approx(ba.real()).epsilon(1e-14));
  CHECK(ab.imag() == doctest::Approx(-ba.imag()).epsilon(1e-14));
  CHECK(std::abs(ab) <= 1.0 + 1e-12);
}

TEST_CASE("inner product rejects mismatched grids") {
  const Grid g1 = Grid::standard();
  const Grid g2(128, -2.0, 2.0);
  const WaveFunction a = normalize(random_state(g1, 3));
  Eigen::VectorXcd v = a.values;
  const WaveFunction b(g2, v);
  CHECK_THROWS_AS((void)inner_product(a, b), GridMismatchError);
}

TEST_CASE("normalize fixes the norm and is idempotent and scale-invariant") {
  const Grid g = Grid::standard();
  const WaveFunction raw = random_state(g, 11);

  const WaveFunction n1 = normalize(raw);
  CHECK(n1.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));

  const WaveFunction n2 = normalize(n1);
  CHECK((n2.values - n1.values).norm() < 1e-12);

  const WaveFunction scaled(g, Eigen::VectorXcd(3.0 * raw.values));
  const WaveFunction n3 = normalize(scaled);
  CHECK((n3.values - n1.values).norm() < 1e-12);
}

TEST_CASE("normalize rejects the zero vector") {
  const Grid g = Grid::standard();
  const WaveFunction zero(g, Eigen::VectorXcd::Zero(g.n_points()));
  CHECK_THROWS_AS((void)normalize(zero), DegenerateError);
}

TEST_CASE("expectation position: symmetric state, bound state, point mass") {
  PhysicsConfig physics;
  const Grid& g = physics.grid;

  // Even state about 0.
  Eigen::VectorXcd sym(g.n_points());
  for (int i = 0; i < g.n_points(); ++i)
    sym[i] = std::exp(-10.0 * g.x()[i] * g.x()[i]);
  CHECK(std::abs(expectation_position(normalize(WaveFunction(g, sym)))) < 1e-10);

  // Ground state of a well at 0.6 sits at 0.6.
  const StateSpec spec{PotentialAssembly{{GaussianWell{0.6, -90.0, 0.25}}}};
  CHECK(expectation_position(ground_state(spec, physics)) ==
        doctest::Approx(0.6).epsilon(0.01 / 0.6));

  // Point mass at a grid point.
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(g.n_points());
  const int k = 37;
  delta[k] = 1.0;
  CHECK(expectation_position(normalize(WaveFunction(g, delta))) ==
        doctest::Approx(g.x()[k]).epsilon(1e-12));
}

}  // TEST_SUITE
