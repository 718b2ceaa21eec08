#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wormhole/threshold.hpp"

using namespace wormhole;

namespace {

DiagnosticsRecord rec(double s, double bondi, std::vector<double> pos) {
  DiagnosticsRecord r;
  r.s = s;
  r.bondi = bondi;
  r.positions = std::move(pos);
  return r;
}

}  // namespace

TEST_CASE("energy quanta per family") {
  CHECK(upper_quantum(Family::Even) == 8.0);
  CHECK(lower_quantum(Family::Even) == 0.0);
  CHECK(upper_quantum(Family::Odd) == 12.0);
  CHECK(lower_quantum(Family::Odd) == 4.0);
}

TEST_CASE("classification rules on synthetic histories") {
  ClassifyConfig cfg;

  SUBCASE("energy below the annihilation cut is subcritical") {
    std::vector<DiagnosticsRecord> h{rec(0, 7.0, {}), rec(1, 5.9, {})};
    CHECK(classify(h, Family::Even, cfg, false) == Classification::Subcritical);
    std::vector<DiagnosticsRecord> o{rec(0, 12.5, {1.0}), rec(5, 9.0, {1.0})};
    CHECK(classify(o, Family::Odd, cfg, false) == Classification::Subcritical);
  }

  SUBCASE("vanished crossings after a pair existed is subcritical") {
    std::vector<DiagnosticsRecord> h{rec(0, 10.0, {}), rec(2, 9.0, {1.5}),
                                     rec(4, 8.5, {})};
    CHECK(classify(h, Family::Even, cfg, false) == Classification::Subcritical);
  }

  SUBCASE("early exit: kink past x_exp with the energy locked on") {
    std::vector<DiagnosticsRecord> h{rec(0, 10.0, {}), rec(5, 8.2, {12.5})};
    CHECK(classify(h, Family::Even, cfg, false) == Classification::Supercritical);
    // same position but energy still far above the quantum: keep watching
    std::vector<DiagnosticsRecord> g{rec(0, 10.0, {}), rec(5, 9.5, {12.5})};
    CHECK(classify(g, Family::Even, cfg, false) == Classification::Undecided);
  }

  SUBCASE("survival to s_end with an expanding pair is supercritical") {
    std::vector<DiagnosticsRecord> h;
    for (int i = 0; i <= 100; ++i)
      h.push_back(rec(i, 8.3, {1.5 + 0.01 * i}));
    CHECK(classify(h, Family::Even, cfg, true) == Classification::Supercritical);
    CHECK(classify(h, Family::Even, cfg, false) == Classification::Undecided);
  }

  SUBCASE("contracting pair at s_end stays undecided") {
    std::vector<DiagnosticsRecord> h;
    for (int i = 0; i <= 100; ++i)
      h.push_back(rec(i, 8.3, {3.0 - 0.01 * i}));
    CHECK(classify(h, Family::Even, cfg, true) == Classification::Undecided);
  }

  SUBCASE("odd family ignores the pinned central crossing") {
    std::vector<DiagnosticsRecord> h;
    // only the x ~ 0 crossing: no pair, never supercritical
    for (int i = 0; i <= 100; ++i) h.push_back(rec(i, 11.9, {1e-9}));
    CHECK(classify(h, Family::Odd, cfg, true) == Classification::Undecided);
  }

  CHECK(classify({}, Family::Even, cfg, true) == Classification::Undecided);
}

TEST_CASE("bisect validates its bracket") {
  Grid g = make_grid(21);
  IntegratorConfig ic;
  ic.s_end = 5.0;
  auto bad = bisect(Family::Even, 2.0, 1.0, 1e-3, g, ic);
  CHECK_FALSE(bad.ok);
  auto same = bisect(Family::Even, 0.5, 1.0, 0.2, g, ic);  // both subcritical
  CHECK_FALSE(same.ok);
  CHECK(same.message.find("bracket") != std::string::npos);
}

TEST_CASE("even-family threshold at coarse resolution") {
  Grid g = make_grid(41);
  IntegratorConfig ic;
  ic.s_end = 50.0;
  ic.sample_interval = 0.25;
  auto res = bisect(Family::Even, 3.0, 4.5, 0.02, g, ic);
  REQUIRE(res.ok);
  CHECK(res.bracket_width <= 0.02);
  // coarse-grid threshold lands near the continuum value
  CHECK(res.b_star > 3.4);
  CHECK(res.b_star < 4.1);
  // probe log is consistent with a single threshold
  for (const auto& p : res.probe_log) {
    if (p.cls == Classification::Subcritical) CHECK(p.b < res.b_star);
    if (p.cls == Classification::Supercritical) CHECK(p.b > res.b_star);
  }
  // expected probe count: 2 endpoints + ceil(log2(1.5 / 0.02))
  CHECK(res.probe_log.size() == 2 + static_cast<size_t>(
                                        std::ceil(std::log2(1.5 / 0.02))));
}
