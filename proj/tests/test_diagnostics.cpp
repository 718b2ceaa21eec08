#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wormhole/diagnostics.hpp"
#include "wormhole/evolve.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/wavemap.hpp"

using namespace wormhole;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("Bondi energy of static states reduces to the potential energy") {
  Grid g = make_grid(129);
  FieldState kk = kink_state(g);
  CHECK(bondi_energy(kk, g) == doctest::Approx(potential_energy(kk, g)).epsilon(1e-12));
  CHECK(bondi_energy(kk, g) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("kinetic part of the Bondi energy against a refined quadrature") {
  // E - V = int 4 v^2/(1-y^2) dy for the same u; compare two resolutions
  auto kinetic = [](int n) {
    Grid g = make_grid(n);
    FieldState st = initial_data_even(1.3, g);
    return bondi_energy(st, g);  // u = 0, so V = 0
  };
  CHECK(kinetic(97) == doctest::Approx(kinetic(301)).epsilon(1e-10));
}

TEST_CASE("radiation coefficient recovers a synthetic tail exactly") {
  Grid g = make_grid(65);
  const double a = 0.37, c = -1.9;
  FieldState st;
  st.parity = Parity::OddCentered;
  st.u.resize(g.n);
  st.v = Eigen::VectorXd::Zero(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double y = g.nodes[i];
    const double w = (1.0 - y) / (1.0 + y);  // = e^{-x/2}
    st.u[i] = pi + a * w + c * w * w;
  }
  CHECK(radiation_coefficient(st, g) == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("kink positions and inferred time") {
  Grid g = make_grid(129);
  FieldState st;
  st.parity = Parity::OddCentered;
  st.s = 7.0;
  st.v = Eigen::VectorXd::Zero(g.n);
  st.u.resize(g.n);
  for (int i = 0; i < g.n; ++i) st.u[i] = kink(x_of_y(g.nodes[i]), 3.0);
  auto pos = kink_positions(st, g);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0] == doctest::Approx(3.0).epsilon(1e-8));

  auto rec = diagnose(st, g);
  CHECK(rec.t_inferred == doctest::Approx(7.0 + std::cosh(3.0)).epsilon(1e-8));
  CHECK(rec.b_minus == doctest::Approx(-rec.b_plus).epsilon(1e-14));

  // 2-chain: on the half line u descends through pi/2 once, near x = 4
  FieldState ch;
  ch.parity = Parity::Even;
  ch.v = Eigen::VectorXd::Zero(g.n);
  ch.u.resize(g.n);
  for (int i = 0; i < g.n; ++i) ch.u[i] = chain_profile(2, {4.0}, x_of_y(g.nodes[i]));
  auto cpos = kink_positions(ch, g);
  REQUIRE(cpos.size() == 1);
  CHECK(cpos[0] == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(diagnose(ch, g).b_minus == doctest::Approx(diagnose(ch, g).b_plus).epsilon(1e-14));

  // vacuum has no crossings and a NaN inferred time
  FieldState vac;
  vac.parity = Parity::Even;
  vac.u = Eigen::VectorXd::Zero(g.n);
  vac.v = Eigen::VectorXd::Zero(g.n);
  auto vrec = diagnose(vac, g);
  CHECK(vrec.positions.empty());
  CHECK(std::isnan(vrec.t_inferred));
}

TEST_CASE("energy flux identity on synthetic records") {
  // b_+(s) = b_-(s) = sin s, E(s) = E0 - s/2 - sin(2s)/4 satisfies
  // dE/ds = -(bdot_+^2 + bdot_-^2)/2 exactly
  std::vector<DiagnosticsRecord> recs;
  const double ds = 0.01;
  for (int i = 0; i <= 400; ++i) {
    DiagnosticsRecord r;
    r.s = i * ds;
    r.b_plus = r.b_minus = std::sin(r.s);
    r.bondi = 10.0 - r.s / 2.0 - std::sin(2.0 * r.s) / 4.0;
    recs.push_back(r);
  }
  auto res = energy_flux_check(recs);
  double worst = 0.0;
  for (double v : res) worst = std::max(worst, std::abs(v));
  CHECK(worst <= 1e-3);  // centered-difference discretization error O(ds^2)
  CHECK(res.front() == 0.0);
  CHECK(res.back() == 0.0);
}

TEST_CASE("energy flux balances on a real evolution") {
  Grid g = make_grid(97);
  IntegratorConfig cfg;
  cfg.s_end = 12.0;
  cfg.sample_interval = 0.1;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-11;
  auto traj = evolve_field(initial_data_even(1.5, g), g, cfg);
  auto recs = diagnose_all(traj, g);
  auto res = energy_flux_check(recs);
  // normalize by the peak loss rate over the window
  double peak = 0.0, worst = 0.0;
  for (size_t i = 1; i + 1 < recs.size(); ++i) {
    const double dE = (recs[i + 1].bondi - recs[i - 1].bondi) /
                      (recs[i + 1].s - recs[i - 1].s);
    peak = std::max(peak, std::abs(dE));
  }
  for (size_t i = 1; i + 1 < recs.size(); ++i)
    if (recs[i].s >= 2.0) worst = std::max(worst, std::abs(res[i]));
  CHECK(peak > 0.0);
  CHECK(worst <= 0.05 * peak);

  // Bondi energy never increases beyond tolerance
  for (size_t i = 1; i < recs.size(); ++i)
    CHECK(recs[i].bondi <= recs[i - 1].bondi + 1e-6 * recs[i - 1].bondi);
}

TEST_CASE("endstate energy quantum") {
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i < 100; ++i) {
    DiagnosticsRecord r;
    r.s = i;
    r.bondi = 8.03 + 0.01 * std::exp(-i / 5.0);
    recs.push_back(r);
  }
  auto q = final_energy_quantum(recs);
  CHECK(q.settled);
  CHECK(q.N == 2);

  for (auto& r : recs) r.bondi = 20.0 - 0.15 * r.s;  // still draining
  auto q2 = final_energy_quantum(recs);
  CHECK_FALSE(q2.settled);
}
