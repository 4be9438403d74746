#include <doctest.h>

#include <cmath>
#include <random>

#include "bhw/errors.hpp"
#include "bhw/potentials.hpp"

using namespace bhw;

namespace {

int index_of(const Grid& g, double x) {
  for (int i = 0; i < g.n_points(); ++i)
    if (std::abs(g.x()[i] - x) < 1e-12) return i;
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_SUITE("potentials") {

TEST_CASE("tweezer potential values") {
  const Grid g = Grid::standard();
  const TweezerParams params;

  SUBCASE("value at the center equals the amplitude") {
    const int i = index_of(g, 0.25);
    const auto v = tweezer_potential(g, 0.25, -42.0, params);
    CHECK(v[i] == doctest::Approx(-42.0).epsilon(1e-15));
  }
  SUBCASE("zero amplitude gives the zero vector") {
    const auto v = tweezer_potential(g, 0.3, 0.0, params);
    CHECK(v.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("one waist from center: A exp(-2)") {
    // independent evaluation: -150 * exp(-2) = -20.300292485491905
    const int i = index_of(g, 0.25);
    const auto v = tweezer_potential(g, 0.0, -150.0, params);
    CHECK(v[i] == doctest::Approx(-20.300292485491905).epsilon(1e-12));
  }
  SUBCASE("out-of-bounds controls are rejected") {
    CHECK_THROWS_AS((void)tweezer_potential(g, 0.95, -10.0, params), BoundsError);
    CHECK_THROWS_AS((void)tweezer_potential(g, 0.0, -151.0, params), BoundsError);
    CHECK_THROWS_AS((void)tweezer_potential(g, 0.0, 1.0, params), BoundsError);
  }
}

TEST_CASE("position derivative values") {
  const Grid g = Grid::standard();
  const TweezerParams params;

  SUBCASE("vanishes at the center") {
    const int i = index_of(g, 0.25);
    const auto d = d_tweezer_d_position(g, 0.25, -77.0, params);
    CHECK(d[i] == 0.0);
  }
  SUBCASE("one waist from center: A (4/w^2) (x-p) exp(-2)") {
    // independent evaluation: -150*64*0.25*exp(-2) = -324.8046797678705
    const int i = index_of(g, 0.25);
    const auto d = d_tweezer_d_position(g, 0.0, -150.0, params);
    CHECK(d[i] == doctest::Approx(-324.8046797678705).epsilon(1e-12));
  }
}

TEST_CASE("amplitude derivative and the sign fault") {
  const Grid g = Grid::standard();
  const TweezerParams params;

  SUBCASE("correct mode is 1 at the center") {
    const int i = index_of(g, 0.25);
    const auto d =
        d_tweezer_d_amplitude(g, 0.25, -10.0, params, DerivativeMode::kCorrect);
    CHECK(d[i] == 1.0);
  }
  SUBCASE("flipped mode is -1 at the center") {
    const int i = index_of(g, 0.25);
    const auto d = d_tweezer_d_amplitude(g, 0.25, -10.0, params,
                                         DerivativeMode::kSignFlippedAmplitude);
    CHECK(d[i] == -1.0);
  }
  SUBCASE("flipped is the exact negation of correct") {
    const auto c =
        d_tweezer_d_amplitude(g, 0.37, -80.0, params, DerivativeMode::kCorrect);
    const auto f = d_tweezer_d_amplitude(g, 0.37, -80.0, params,
                                         DerivativeMode::kSignFlippedAmplitude);
    for (int i = 0; i < g.n_points(); ++i) CHECK(c[i] == -f[i]);
  }
}

TEST_CASE("analytic derivatives match central finite differences") {
  const Grid g = Grid::standard();
  const TweezerParams params;
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> pos(-0.8, 0.8);
  std::uniform_real_distribution<double> amp(-140.0, -1.0);

  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const double p = pos(rng);
    const double A = amp(rng);

    const auto dp = d_tweezer_d_position(g, p, A, params);
    const Eigen::VectorXd fd_p = (tweezer_potential(g, p + h, A, params) -
                                  tweezer_potential(g, p - h, A, params)) /
                                 (2 * h);
    for (int i = 0; i < g.n_points(); ++i) {
      const double scale = std::max({std::abs(dp[i]), std::abs(fd_p[i]), 1e-6});
      CHECK(std::abs(dp[i] - fd_p[i]) / scale < 1e-5);
    }

    const auto da = d_tweezer_d_amplitude(g, p, A, params, DerivativeMode::kCorrect);
    const double ha = 1e-3;
    const Eigen::VectorXd fd_a = (tweezer_potential(g, p, A + ha, params) -
                                  tweezer_potential(g, p, A - ha, params)) /
                                 (2 * ha);
    for (int i = 0; i < g.n_points(); ++i) {
      // linear in A, so the difference is pure roundoff
      CHECK(std::abs(da[i] - fd_a[i]) <=
            1e-8 * std::max(1.0, std::abs(da[i])) + 1e-10);
    }
  }
}

TEST_CASE("tweezer potential is linear in amplitude") {
  const Grid g = Grid::standard();
  const TweezerParams params;
  const auto v1 = tweezer_potential(g, 0.2, -60.0, params);
  const auto v2 = tweezer_potential(g, 0.2, -30.0, params);
  const auto v12 = tweezer_potential(g, 0.2, -90.0, params);
  CHECK((v1 + v2 - v12).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("static assembly") {
  const Grid g = Grid::standard();
  const TweezerParams params;

  SUBCASE("empty assembly is the zero potential") {
    const auto v = assemble_static(g, PotentialAssembly{});
    CHECK(v.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single well equals the tweezer with the same parameters") {
    const PotentialAssembly a{{GaussianWell{0.3, -50.0, 0.25}}};
    const auto v = assemble_static(g, a);
    const auto t = tweezer_potential(g, 0.3, -50.0, params);
    CHECK((v - t).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("two identical wells double the potential") {
    const GaussianWell w{0.3, -50.0, 0.25};
    const auto v1 = assemble_static(g, PotentialAssembly{{w}});
    const auto v2 = assemble_static(g, PotentialAssembly{{w, w}});
    CHECK((v2 - 2.0 * v1).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("positive depth is rejected") {
    const PotentialAssembly bad{{GaussianWell{0.3, 5.0, 0.25}}};
    CHECK_THROWS_AS((void)assemble_static(g, bad), BoundsError);
  }
}

}  // TEST_SUITE
