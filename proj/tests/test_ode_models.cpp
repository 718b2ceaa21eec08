#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wormhole/ode_models.hpp"

using namespace wormhole;

namespace {
const double pi = std::acos(-1.0);

ChainState make_state(int N, std::initializer_list<double> r,
                      std::initializer_list<double> rdot, double t = 1.0) {
  ChainState st;
  st.even_N = N % 2 == 0;
  st.J = N / 2;
  st.t = t;
  st.r = Eigen::VectorXd::Zero(st.J);
  st.rdot = Eigen::VectorXd::Zero(st.J);
  int i = 0;
  for (double v : r) st.r[i++] = v;
  i = 0;
  for (double v : rdot) st.rdot[i++] = v;
  return st;
}
}  // namespace

TEST_CASE("chain accelerations against hand-written formulas") {
  // odd, J=1: rddot_1 = -1/r_1^3 (r_0 = 1, r_2 = infinity)
  auto odd1 = make_state(3, {2.0}, {0.0});
  CHECK(chain_rhs(odd1)[0] == doctest::Approx(-1.0 / 8.0).epsilon(1e-15));

  // even, J=1: rddot_1 = -1/r_1^5
  auto even1 = make_state(2, {2.0}, {0.0});
  CHECK(chain_rhs(even1)[0] == doctest::Approx(-1.0 / 32.0).epsilon(1e-15));

  // odd, J=3: interior particle sees both neighbors
  auto odd3 = make_state(7, {2.0, 5.0, 11.0}, {0.0, 0.0, 0.0});
  auto a = chain_rhs(odd3);
  CHECK(a[0] == doctest::Approx(-1.0 / 8.0 + 2.0 / 25.0).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(-4.0 / 125.0 + 5.0 / 121.0).epsilon(1e-14));
  CHECK(a[2] == doctest::Approx(-25.0 / 1331.0).epsilon(1e-14));

  // even, J=2: innermost pair attracts as 1/r^5, the rest as odd chains
  auto even2 = make_state(4, {2.0, 7.0}, {0.0, 0.0});
  auto b = chain_rhs(even2);
  CHECK(b[0] == doctest::Approx(-1.0 / 32.0 + 2.0 / 49.0).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(-4.0 / 343.0).epsilon(1e-14));
}

TEST_CASE("effective energy expressions") {
  auto odd1 = make_state(3, {2.0}, {0.5});
  CHECK(effective_energy(odd1) == doctest::Approx(0.25 - 0.25).epsilon(1e-15));
  auto even2 = make_state(4, {2.0, 7.0}, {0.5, 0.1});
  const double expect = 0.25 + 0.01 - 1.0 / 32.0 - 4.0 / 49.0;
  CHECK(effective_energy(even2) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("exact J=1 solutions satisfy their systems with zero energy") {
  for (int N : {2, 3}) {
    for (double t : {1.0, 7.5, 100.0}) {
      ChainState st = exact_solution(N, t);
      const double r = st.r[0];
      const double rd = st.rdot[0];
      double rdd;
      if (N == 3) {
        CHECK(r == doctest::Approx(std::sqrt(2.0 * t)).epsilon(1e-14));
        rdd = -std::pow(2.0 * t, -1.5);  // d^2/dt^2 sqrt(2t)
      } else {
        const double A = 3.0 / std::sqrt(2.0);
        CHECK(r == doctest::Approx(std::pow(A * t, 1.0 / 3.0)).epsilon(1e-14));
        rdd = -(2.0 / 9.0) * A * A * std::pow(A * t, -5.0 / 3.0);
      }
      CHECK(chain_rhs(st)[0] == doctest::Approx(rdd).epsilon(1e-12));
      CHECK(rd == doctest::Approx(N == 3 ? 1.0 / r : (1.0 / 3.0) * 3.0 /
                                           std::sqrt(2.0) * std::pow(r, -2.0))
                      .epsilon(1e-13));
      CHECK(std::abs(effective_energy(st)) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(exact_solution(3, 0.0), std::domain_error);
  CHECK_THROWS_AS(exact_solution(3, -1.0), std::domain_error);
}

TEST_CASE("rescalings and rate constants") {
  CHECK(rescale_time(1.0) == doctest::Approx(8.0 / std::sqrt(pi)).epsilon(1e-15));
  CHECK(log_coordinate(std::exp(3.0)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(physical_rate_constant(2) ==
        doctest::Approx(12.0 * std::sqrt(2.0 / pi)).epsilon(1e-15));
  CHECK(physical_rate_constant(3) ==
        doctest::Approx(16.0 / std::sqrt(pi)).epsilon(1e-15));
  CHECK(leading_rate_constant(3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(leading_rate_constant(2) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(leading_rate_constant(5) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(leading_rate_constant(4) == doctest::Approx(5.0 / std::sqrt(6.0)).epsilon(1e-15));

  auto e5 = leading_exponents(5);
  REQUIRE(e5.size() == 2);
  CHECK(e5[0] == doctest::Approx(1.0 / 3.0));
  CHECK(e5[1] == doctest::Approx(2.0 / 3.0));
  auto e4 = leading_exponents(4);
  CHECK(e4[0] == doctest::Approx(1.0 / 5.0));
  CHECK(e4[1] == doctest::Approx(3.0 / 5.0));

  auto r = leading_asymptotics(5, 50.0);
  const double At = 3.0 / std::sqrt(2.0) * 50.0;
  CHECK(r[0] == doctest::Approx(std::pow(At, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(std::pow(At, 2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("asymptotic series values match the printed coefficients") {
  // independent evaluation of the truncations at one point
  const double c = 0.3;
  SeriesParams p5{5, c, -1};
  const double A5 = 3.0 / std::sqrt(2.0);
  const double t = 300.0;
  const double tau = std::pow(A5 * t, 1.0 / 3.0);
  auto ev = asymptotic_solution(p5, t);
  CHECK(ev.tau == doctest::Approx(tau).epsilon(1e-14));
  const double i2 = 1.0 / (tau * tau), i3 = i2 / tau;
  const double v1 = 1.0 - 3.0 / 8.0 * i2 + c * i3 + 3.0 / 128.0 * i2 * i2 +
                    3.0 * c / 8.0 * i2 * i3 + (443.0 / 3072.0 - c * c) * i3 * i3;
  const double v2 = 1.0 - 0.25 * i2 + 2.0 * c * i3 - (5.0 / 192.0 + c * c) * i3 * i3;
  CHECK(ev.state.r[0] == doctest::Approx(tau * v1).epsilon(1e-13));
  CHECK(ev.state.r[1] == doctest::Approx(tau * tau * v2).epsilon(1e-13));
  CHECK(ev.reliable);

  SeriesParams p4{4, c, -1};
  const double A4 = 5.0 / std::sqrt(6.0);
  const double t4 = 2.0e4;
  const double s = std::pow(A4 * t4, 1.0 / 5.0);
  auto ev4 = asymptotic_solution(p4, t4);
  const double j4 = std::pow(s, -4.0), j5 = std::pow(s, -5.0), j8 = std::pow(s, -8.0);
  const double w1 = 1.0 - j4 / 6.0 + c / 3.0 * j5 - 83.0 / 1944.0 * j8;
  const double w2 = 1.0 - j4 / 6.0 + c * j5 + 7.0 / 648.0 * j8;
  CHECK(ev4.state.r[0] == doctest::Approx(s * w1).epsilon(1e-13));
  CHECK(ev4.state.r[1] == doctest::Approx(s * s * s * w2).epsilon(1e-13));

  // reliability flag trips below tau = 3
  auto low = asymptotic_solution(p5, 1.0);
  CHECK_FALSE(low.reliable);
}

TEST_CASE("series derivatives match finite differences of the truncation") {
  for (int N : {4, 5}) {
    SeriesParams p{N, 0.2, -1};
    const double t = 500.0;
    const double h = 1e-3;
    auto d0 = asymptotic_derivs(p, t);
    auto dm = asymptotic_derivs(p, t - h);
    auto dp = asymptotic_derivs(p, t + h);
    for (int j = 0; j < 2; ++j) {
      const double fd1 = (dp.r[j] - dm.r[j]) / (2 * h);
      const double fd2 = (dp.r[j] - 2 * d0.r[j] + dm.r[j]) / (h * h);
      CHECK(d0.rdot[j] == doctest::Approx(fd1).epsilon(1e-8));
      CHECK(d0.rddot[j] == doctest::Approx(fd2).epsilon(1e-4));
    }
    // and agree with the plain series evaluation
    auto ev = asymptotic_solution(p, t);
    CHECK((ev.state.r - d0.r).cwiseAbs().maxCoeff() <= 1e-14 * d0.r.norm());
  }
}

TEST_CASE("series residuals shrink at the truncation-order rate") {
  // residual of the truncated series in the full equations, compared between
  // tau and 2*tau; the next omitted order predicts a large decay factor
  for (int N : {4, 5}) {
    SeriesParams p{N, 0.0, -1};
    const double A = N == 5 ? 3.0 / std::sqrt(2.0) : 5.0 / std::sqrt(6.0);
    const double kappa = N == 5 ? 3.0 : 5.0;
    auto residual = [&](double tau) {
      const double t = std::pow(tau, kappa) / A;
      auto d = asymptotic_derivs(p, t);
      ChainState st = make_state(N, {d.r[0], d.r[1]}, {d.rdot[0], d.rdot[1]}, t);
      return (chain_rhs(st) - d.rddot).cwiseAbs().maxCoeff();
    };
    const double r6 = residual(6.0), r12 = residual(12.0);
    CHECK(r12 * 128.0 <= r6);
  }
}

TEST_CASE("linearized systems match their printed form") {
  // N=5: tau^2 xi1'' = 2 xi1 - 4 tau^2 (xi2 - 2 xi1)
  //      tau^2 xi2'' = -2 tau xi2' + 8 xi2 - 4 xi1
  {
    const double tau = 2.5;
    Eigen::Vector2d xi(0.7, -0.3), xip(0.1, 0.4);
    auto xipp = linearized_rhs(5, tau, xi, xip);
    const double t2 = tau * tau;
    CHECK(xipp[0] == doctest::Approx((2 * xi[0] - 4 * t2 * (xi[1] - 2 * xi[0])) / t2).epsilon(1e-13));
    CHECK(xipp[1] == doctest::Approx((-2 * tau * xip[1] + 8 * xi[1] - 4 * xi[0]) / t2).epsilon(1e-13));
  }
  // N=4: tau^2 xi1'' = 2 tau xi1' + 4 xi1 - 12 tau^4 (xi2 - 3 xi1)
  //      tau^2 xi2'' = -2 tau xi2' + 24 xi2 - 12 xi1
  {
    const double tau = 1.7;
    Eigen::Vector2d xi(0.2, 0.9), xip(-0.5, 0.3);
    auto xipp = linearized_rhs(4, tau, xi, xip);
    const double t2 = tau * tau, t4 = t2 * t2;
    CHECK(xipp[0] == doctest::Approx((2 * tau * xip[0] + 4 * xi[0] - 12 * t4 * (xi[1] - 3 * xi[0])) / t2).epsilon(1e-13));
    CHECK(xipp[1] == doctest::Approx((-2 * tau * xip[1] + 24 * xi[1] - 12 * xi[0]) / t2).epsilon(1e-13));
  }
}
