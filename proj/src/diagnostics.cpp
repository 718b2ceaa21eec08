#include "wormhole/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wormhole {

double bondi_energy(const FieldState& state, const Grid& grid) {
  // E = int_0^1 [ 4 v^2/(1-y^2) + (1-y^2) u_y^2 / 4 + 16 sin^2 u / (1-y^2) ] dy
  // (full-line energy, both terms already doubled by parity). The two
  // 1/(1-y^2) terms vanish at y=1 because v -> 0 and u -> n*pi faster than
  // any power there; drop the endpoint contribution.
  const int n = grid.n;
  Eigen::VectorXd uy = grid.diff1 * state.u;
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = grid.nodes[i];
    const double omy2 = 1.0 - y * y;
    const double su = std::sin(state.u[i]);
    double f = omy2 * uy[i] * uy[i] / 4.0;
    if (i + 1 < n) {
      f += (4.0 * state.v[i] * state.v[i] + 16.0 * su * su) / omy2;
    }
    e += grid.quad_weights[i] * f;
  }
  return e;
}

double radiation_coefficient(const FieldState& state, const Grid& grid) {
  Eigen::VectorXd uy = grid.diff1 * state.u;
  return -2.0 * uy[grid.n - 1];
}

std::vector<double> kink_positions(const FieldState& state, const Grid& grid) {
  const double umax = state.u.maxCoeff();
  std::vector<double> xs;
  const double pi = std::acos(-1.0);
  for (int m = 0;; ++m) {
    const double level = (2 * m + 1) * pi / 2.0;
    if (level > umax) break;
    for (double y : find_crossings(grid, state.u, level)) {
      if (y >= 1.0 - 1e-12) continue;  // u(1) is pinned to a multiple of pi
      xs.push_back(4.0 * std::atanh(y));
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

DiagnosticsRecord diagnose(const FieldState& state, const Grid& grid) {
  DiagnosticsRecord rec;
  rec.s = state.s;
  rec.bondi = bondi_energy(state, grid);
  rec.b_plus = radiation_coefficient(state, grid);
  rec.b_minus = state.parity == Parity::Even ? rec.b_plus : -rec.b_plus;
  rec.positions = kink_positions(state, grid);
  if (rec.positions.empty()) {
    rec.t_inferred = std::numeric_limits<double>::quiet_NaN();
  } else {
    rec.t_inferred = state.s + std::cosh(rec.positions.back());
  }
  return rec;
}

std::vector<DiagnosticsRecord> diagnose_all(const Trajectory<FieldState>& traj,
                                            const Grid& grid) {
  std::vector<DiagnosticsRecord> out;
  out.reserve(traj.samples.size());
  for (const auto& st : traj.samples) out.push_back(diagnose(st, grid));
  return out;
}

std::vector<double> energy_flux_check(const std::vector<DiagnosticsRecord>& records) {
  const size_t m = records.size();
  if (m < 3) throw std::invalid_argument("energy_flux_check: need >= 3 samples");
  std::vector<double> res(m, 0.0);
  for (size_t i = 1; i + 1 < m; ++i) {
    const double ds = records[i + 1].s - records[i - 1].s;
    const double dE = (records[i + 1].bondi - records[i - 1].bondi) / ds;
    const double bp = (records[i + 1].b_plus - records[i - 1].b_plus) / ds;
    const double bm = (records[i + 1].b_minus - records[i - 1].b_minus) / ds;
    res[i] = dE + 0.5 * (bp * bp + bm * bm);
  }
  return res;
}

EnergyQuantum final_energy_quantum(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) throw std::invalid_argument("final_energy_quantum: no records");
  EnergyQuantum q;
  q.energy = records.back().bondi;
  q.N = static_cast<int>(std::lround(q.energy / 4.0));
  const size_t m = records.size();
  const size_t start = m - std::max<size_t>(1, m / 4);
  double lo = records[start].bondi, hi = lo;
  for (size_t i = start; i < m; ++i) {
    lo = std::min(lo, records[i].bondi);
    hi = std::max(hi, records[i].bondi);
  }
  q.settled = (hi - lo) < 0.1;
  return q;
}

}  // namespace wormhole
