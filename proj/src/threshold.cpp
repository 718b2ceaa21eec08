#include "wormhole/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wormhole {

double upper_quantum(Family f) { return f == Family::Even ? 8.0 : 12.0; }
double lower_quantum(Family f) { return f == Family::Even ? 0.0 : 4.0; }

namespace {

// Crossings that witness a kink-antikink pair. For the odd family the
// central pi/2 "crossing" (the field is pinned there) and any radiation
// flicker right next to it are excluded.
std::vector<double> excess_positions(const DiagnosticsRecord& r, Family family) {
  const double xmin = family == Family::Odd ? 0.25 : 0.0;
  std::vector<double> out;
  for (double x : r.positions)
    if (x > xmin) out.push_back(x);
  return out;
}

}  // namespace

Classification classify(const std::vector<DiagnosticsRecord>& records,
                        Family family, const ClassifyConfig& cfg,
                        bool reached_end) {
  if (records.empty()) return Classification::Undecided;
  const double upper = upper_quantum(family);
  bool had_pair = false;
  for (const auto& r : records) {
    const auto pos = excess_positions(r, family);
    if (!pos.empty() && pos.back() > cfg.x_exp &&
        std::abs(r.bondi - upper) <= cfg.energy_window) {
      return Classification::Supercritical;
    }
    // Annihilation: the pair's rest energy has left through the boundaries,
    // or the pair merged and u no longer reaches its level.
    if (r.bondi < upper - cfg.annihilation_margin) return Classification::Subcritical;
    if (pos.empty() && had_pair && r.s > 1.0) return Classification::Subcritical;
    had_pair = had_pair || !pos.empty();
  }
  if (!reached_end) return Classification::Undecided;

  // Survival test at s_end: the pair is still there, out of the core, and
  // still expanding over the last quarter -- a pair that has merely stalled
  // may be at its turnaround and about to recollapse, so it stays Undecided
  // (the bisection then retries with a doubled s_end). No energy window: a run far
  // above threshold still carries kink kinetic energy and undrained
  // radiation at s_end, while annihilation was already caught above.
  const auto& last = records.back();
  const auto pos_end = excess_positions(last, family);
  if (pos_end.empty()) return Classification::Undecided;
  if (pos_end.back() < cfg.min_expansion_c1) return Classification::Undecided;
  const size_t m = records.size();
  const size_t start = m - std::max<size_t>(2, m / 4);
  const auto pos0 = excess_positions(records[start], family);
  if (pos0.empty() || pos_end.back() < pos0.back() + 0.02)
    return Classification::Undecided;
  return Classification::Supercritical;
}

ProbeRun run_probe(Family family, double b, const Grid& grid,
                   const IntegratorConfig& icfg, const ClassifyConfig& ccfg) {
  FieldState st0 = family == Family::Even ? initial_data_even(b, grid)
                                          : initial_data_odd(b, grid);
  ProbeRun pr;
  pr.records.push_back(diagnose(st0, grid));
  std::vector<FieldEvent> events;
  events.push_back([&](const FieldState& st) {
    pr.records.push_back(diagnose(st, grid));
    Classification c = classify(pr.records, family, ccfg, false);
    if (c != Classification::Undecided) {
      pr.cls = c;
      return true;
    }
    return false;
  });
  pr.traj = evolve_field(st0, grid, icfg, events);
  if (pr.cls == Classification::Undecided) {
    if (!pr.traj.samples.empty() &&
        pr.traj.samples.back().s > pr.records.back().s + 1e-12) {
      pr.records.push_back(diagnose(pr.traj.samples.back(), grid));
    }
    pr.cls = classify(pr.records, family, ccfg,
                      pr.traj.reason == Termination::ReachedEnd);
  }
  return pr;
}

namespace {

ProbeRun probe_with_retry(Family family, double b, const Grid& grid,
                          const IntegratorConfig& icfg,
                          const ClassifyConfig& ccfg, Probe& p) {
  IntegratorConfig c = icfg;
  ProbeRun pr = run_probe(family, b, grid, c, ccfg);
  // near-critical probes decide arbitrarily late (critical slowing): give
  // them a few horizon doublings before declaring the bisection stuck
  for (int retry = 0; retry < 3 && pr.cls == Classification::Undecided; ++retry) {
    c.s_end *= 2.0;
    pr = run_probe(family, b, grid, c, ccfg);
  }
  p.b = b;
  p.cls = pr.cls;
  p.final_energy = pr.records.back().bondi;
  p.s_end = c.s_end;
  return pr;
}

}  // namespace

BisectionResult bisect(Family family, double b_lo, double b_hi, double eps_b,
                       const Grid& grid, const IntegratorConfig& icfg,
                       const ClassifyConfig& ccfg, const ProbeCallback& on_probe) {
  BisectionResult res;
  if (!(b_lo < b_hi) || !(eps_b > 0.0)) {
    res.message = "invalid bracket or tolerance";
    return res;
  }
  auto eval = [&](double b) {
    Probe p;
    ProbeRun pr = probe_with_retry(family, b, grid, icfg, ccfg, p);
    res.probe_log.push_back(p);
    if (on_probe) on_probe(p, pr.records);
    return p.cls;
  };
  const Classification clo = eval(b_lo);
  const Classification chi = eval(b_hi);
  if (clo == Classification::Undecided || chi == Classification::Undecided) {
    res.message = "endpoint probe undecided";
    return res;
  }
  if (clo == chi) {
    res.message = "endpoints do not bracket a threshold";
    return res;
  }
  while (b_hi - b_lo > eps_b) {
    const double mid = 0.5 * (b_lo + b_hi);
    const Classification cm = eval(mid);
    if (cm == Classification::Undecided) {
      std::ostringstream os;
      os << "probe undecided at b=" << mid << " after s_end doubling";
      res.message = os.str();
      return res;
    }
    if (cm == clo) {
      b_lo = mid;
    } else {
      b_hi = mid;
    }
  }
  res.ok = true;
  res.b_star = 0.5 * (b_lo + b_hi);
  res.bracket_width = b_hi - b_lo;
  res.message = "converged";
  return res;
}

}  // namespace wormhole
