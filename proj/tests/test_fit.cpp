#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wormhole/fit.hpp"

using namespace wormhole;

namespace {

void make_law(double A, double t0, double p, int m, double lo, double hi,
              std::vector<double>& t, std::vector<double>& c1) {
  t.clear();
  c1.clear();
  for (int i = 0; i < m; ++i) {
    const double ti = lo + (hi - lo) * i / (m - 1);
    t.push_back(ti);
    c1.push_back(p * (std::log(ti - t0) + std::log(A)));
  }
}

}  // namespace

TEST_CASE("noiseless synthetic law is recovered to 1e-8") {
  std::vector<double> t, c1;
  make_law(9.5, 5.0, 1.0 / 3.0, 50, 20.0, 200.0, t, c1);
  auto fit = fit_log_law(t, c1, 1.0 / 3.0);
  CHECK(fit.A == doctest::Approx(9.5).epsilon(1e-8));
  CHECK(fit.t0 == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(fit.rms_residual <= 1e-10);
  CHECK(fit.window_tmin == 20.0);
  CHECK(fit.window_tmax == 200.0);
  CHECK(fit.A_predicted == doctest::Approx(12.0 * std::sqrt(2.0 / std::acos(-1.0))));
}

TEST_CASE("fit is shift-consistent") {
  std::vector<double> t, c1, ts;
  make_law(7.25, -3.0, 0.5, 40, 30.0, 150.0, t, c1);
  auto base = fit_log_law(t, c1, 0.5);
  const double shift = 12.5;
  ts = t;
  for (double& v : ts) v += shift;
  auto moved = fit_log_law(ts, c1, 0.5);
  CHECK(moved.A == doctest::Approx(base.A).epsilon(1e-10));
  CHECK(moved.t0 - base.t0 == doctest::Approx(shift).epsilon(1e-8));
}

TEST_CASE("fit failures") {
  std::vector<double> t, c1;
  make_law(9.5, 5.0, 1.0 / 3.0, 5, 20.0, 200.0, t, c1);
  CHECK_THROWS_AS(fit_log_law(t, c1, 1.0 / 3.0), std::invalid_argument);

  make_law(9.5, 5.0, 1.0 / 3.0, 50, 20.0, 200.0, t, c1);
  std::fill(c1.begin(), c1.end(), 1.7);  // degenerate
  CHECK_THROWS_AS(fit_log_law(t, c1, 1.0 / 3.0), std::runtime_error);

  std::swap(t[10], t[11]);  // not increasing
  make_law(9.5, 5.0, 1.0 / 3.0, 50, 20.0, 200.0, t, c1);
  std::swap(t[10], t[11]);
  CHECK_THROWS_AS(fit_log_law(t, c1, 1.0 / 3.0), std::invalid_argument);
}

TEST_CASE("window selection accepts exact law data in the plateau") {
  // exact 1/3-law with energy pinned at the upper quantum: the window should
  // cover essentially the full usable range
  const double A = 9.5, p = 1.0 / 3.0;
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i < 200; ++i) {
    DiagnosticsRecord r;
    const double t = 500.0 + 40.0 * i;
    r.s = i;
    r.bondi = 8.1;
    r.positions = {p * std::log(A * t)};
    r.t_inferred = t;
    recs.push_back(r);
  }
  auto w = select_fit_window(recs, p, 8.0);
  REQUIRE(w.ok);
  CHECK(w.t_max >= 3.0 * w.t_min);
  CHECK(w.first <= 2);
  CHECK(w.last >= recs.size() - 3);
}

TEST_CASE("window selection rejects an early annihilation") {
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i < 120; ++i) {
    DiagnosticsRecord r;
    r.s = i;
    r.bondi = 6.0 - 0.04 * i;  // never near the upper quantum
    r.positions = {2.5 + 0.001 * i};
    r.t_inferred = 10.0 + i;
    recs.push_back(r);
  }
  auto w = select_fit_window(recs, 1.0 / 3.0, 8.0);
  CHECK_FALSE(w.ok);
}

TEST_CASE("window selection rejects a wrong local slope") {
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i < 120; ++i) {
    DiagnosticsRecord r;
    const double t = 100.0 + 20.0 * i;
    r.s = i;
    r.bondi = 8.05;
    r.positions = {0.5 * std::log(t)};  // slope 1/2, target 1/3
    r.t_inferred = t;
    recs.push_back(r);
  }
  auto w = select_fit_window(recs, 1.0 / 3.0, 8.0);
  CHECK_FALSE(w.ok);
}
