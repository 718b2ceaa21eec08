#include "wormhole/wavemap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wormhole {

double y_of_x(double x) { return std::tanh(0.25 * x); }
double x_of_y(double y) { return 4.0 * std::atanh(y); }
double x_of_r(double r) { return std::asinh(r); }
double r_of_x(double x) { return std::sinh(x); }

double kink(double x, double c, int k) {
  return 2.0 * std::atan(std::exp(double(k) * (x - c)));
}

double chain_profile(int N, const std::vector<double>& centers, double x, int k) {
  if (N < 2) throw std::invalid_argument("chain_profile: N >= 2 required");
  const int J = N / 2;
  if (int(centers.size()) != J)
    throw std::invalid_argument("chain_profile: expected " + std::to_string(J) + " centers");
  double prev = 0.0;
  for (double c : centers) {
    if (!(c > prev)) throw std::invalid_argument("chain_profile: centers must be ascending positives");
    prev = c;
  }
  const bool even = (N % 2 == 0);
  double u = 0.0;
  if (even) {
    // Orientation fixed so the innermost pair encloses the value +pi
    // (for even J this coincides with the alternating-sign ansatz as printed).
    for (int j = 1; j <= J; ++j) {
      const double s = ((J - j) % 2 == 0) ? 1.0 : -1.0;
      u += s * (kink(x, -centers[j - 1], k) - kink(x, centers[j - 1], k));
    }
  } else {
    u = kink(x, 0.0, k);
    for (int j = 1; j <= J; ++j) {
      const double s = (j % 2 == 0) ? 1.0 : -1.0;
      u += s * (kink(x, -centers[j - 1], k) + kink(x, centers[j - 1], k));
    }
  }
  return u;
}

double potential_energy(const FieldState& state, const Grid& grid) {
  const int n = grid.n;
  const double k2 = double(state.params.k) * double(state.params.k);
  Eigen::VectorXd uy = grid.diff1 * state.u;
  double v = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double y = grid.nodes[i];
    const double omy2 = 1.0 - y * y;
    const double su = std::sin(state.u[i]);
    const double integrand = 0.25 * omy2 * uy[i] * uy[i] + 4.0 * k2 * su * su / omy2;
    v += grid.quad_weights[i] * integrand;
  }
  // integrand limit at y=1 is 0 for finite-energy states
  return v;
}

FieldState initial_data_even(double b, const Grid& grid) {
  if (b < 0.0) throw std::invalid_argument("initial_data_even: b >= 0 required");
  FieldState st;
  st.s = 0.0;
  st.parity = Parity::Even;
  st.u = Eigen::VectorXd::Zero(grid.n);
  st.v = Eigen::VectorXd::Zero(grid.n);
  for (int i = 0; i < grid.n - 1; ++i) {
    const double y = grid.nodes[i];
    const double omy2 = 1.0 - y * y;
    st.v[i] = b * std::exp(-4.0 / (omy2 * omy2) + 4.0);
  }
  st.v[grid.n - 1] = 0.0;  // underflow clamped exactly
  return st;
}

FieldState initial_data_odd(double b, const Grid& grid) {
  FieldState st;
  st.s = 0.0;
  st.parity = Parity::OddCentered;
  st.u.resize(grid.n);
  st.v = Eigen::VectorXd::Zero(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double sy = std::sin(0.5 * M_PI * grid.nodes[i]);
    const double cy = std::cos(0.5 * M_PI * grid.nodes[i]);
    st.u[i] = 0.5 * M_PI * ((1.0 + sy) - 4.0 * b * sy * cy * cy);
  }
  st.u[grid.n - 1] = M_PI;
  return st;
}

FieldState kink_state(const Grid& grid) {
  FieldState st;
  st.s = 0.0;
  st.parity = Parity::OddCentered;
  st.u.resize(grid.n);
  st.v = Eigen::VectorXd::Zero(grid.n);
  for (int i = 0; i < grid.n - 1; ++i) st.u[i] = kink(x_of_y(grid.nodes[i]));
  st.u[grid.n - 1] = M_PI;
  return st;
}

namespace {

enum class BoundaryMode { HalfEven, HalfOdd, FullLine };

WaveOperator build_operator(const Eigen::VectorXd& nodes, const Eigen::MatrixXd& D1,
                            BoundaryMode mode) {
  const int n = int(nodes.size());
  WaveOperator op;
  op.n = n;
  op.parity = (mode == BoundaryMode::HalfOdd) ? Parity::OddCentered : Parity::Even;
  op.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  op.B = Eigen::MatrixXd::Zero(2 * n, n);

  // L2 = (1/16) diag(1-y^2) D1 diag(1-y^2) D1
  Eigen::MatrixXd scaledD = D1;
  for (int r = 0; r < n; ++r) scaledD.row(r) *= (1.0 - nodes[r] * nodes[r]);
  Eigen::MatrixXd L2 = (1.0 / 16.0) * scaledD * scaledD;

  // FullLine pins both ends; HalfOdd pins node 0 (u = pi/2, v = 0). The even
  // half-domain operator is assembled separately (see make_wave_operator).
  const int hi = n - 2;  // inclusive; node n-1 always pinned

  for (int i = 1; i <= hi; ++i) {
    const double y = nodes[i];
    const double omy2 = 1.0 - y * y;
    const double adv = 2.0 * y * (1.0 + y * y) / omy2;
    const double damp = (std::pow(y, 4) + 6.0 * y * y + 1.0) / (omy2 * omy2);
    op.A(i, n + i) = 1.0;                                   // du/ds = v
    op.A.row(n + i).head(n) = L2.row(i);                    // (1/16)(1-y^2) d_y((1-y^2) u_y)
    op.A.row(n + i).segment(n, n) = -adv * D1.row(i);       // -2y(1+y^2)/(1-y^2) v_y
    op.A(n + i, n + i) += -damp;                            // -(y^4+6y^2+1)/(1-y^2)^2 v
    op.B(n + i, i) = 1.0;                                   // -2 sin(2u) enters here
  }
  return op;
}

// Row of barycentric interpolation weights: evaluates the interpolant through
// (nodes_j, f_j) at `point`, with an exact unit row on node hits.
Eigen::RowVectorXd bary_row(const Eigen::VectorXd& nodes,
                            const Eigen::VectorXd& weights, double point) {
  const int n = int(nodes.size());
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (point == nodes[j] || std::abs(point - nodes[j]) < 1e-15) {
      row.setZero();
      row[j] = 1.0;
      return row;
    }
    row[j] = weights[j] / (point - nodes[j]);
  }
  row /= row.sum();
  return row;
}

// Even half-domain operator, built by conjugating the full-line operator with
// the even extension. A state on the half grid is mirrored onto a 2n-1 node
// full-line grid by interpolation (P), evolved by the full-line rows, and
// restricted back to the half nodes (R). Evenness is exact by construction,
// so no constraint row at y = 0 is needed. (Imposing u_y(0) = 0 through a
// one-sided constraint row on the half grid turned out to be weakly unstable:
// the slaved system grows at a resolution-dependent rate on expanding-chain
// backgrounds. Interpolation on the mirrored half nodes is not viable either:
// the doubled clustering at y = 0 makes the extended node set exponentially
// ill-conditioned.)
WaveOperator build_even_operator(const Grid& grid) {
  const int n = grid.n;
  const int m = 2 * n - 1;
  Grid gm = make_grid(m);  // full-line nodes are 2*gm.nodes - 1 on [-1, 1]
  WaveOperator fop = build_operator((2.0 * gm.nodes.array() - 1.0).matrix(),
                                    0.5 * gm.diff1, BoundaryMode::FullLine);

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, n);   // half -> full (mirror)
  for (int k = 0; k < m; ++k) {
    const double z = 2.0 * gm.nodes[k] - 1.0;
    P.row(k) = bary_row(grid.nodes, grid.bary_weights, std::abs(z));
  }
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, m);   // full -> half
  for (int i = 0; i < n; ++i)
    R.row(i) = bary_row(gm.nodes, gm.bary_weights, (grid.nodes[i] + 1.0) / 2.0);

  Eigen::MatrixXd P2 = Eigen::MatrixXd::Zero(2 * m, 2 * n);
  P2.topLeftCorner(m, n) = P;
  P2.bottomRightCorner(m, n) = P;
  Eigen::MatrixXd R2 = Eigen::MatrixXd::Zero(2 * n, 2 * m);
  R2.topLeftCorner(n, m) = R;
  R2.bottomRightCorner(n, m) = R;

  WaveOperator op;
  op.n = n;
  op.parity = Parity::Even;
  op.A = R2 * fop.A * P2;
  // nonlinearity: g(P u) is approximated by P g(u), which keeps the
  // B * g(u) structure; the substitution is spectrally accurate for
  // resolved states
  op.B = R2 * fop.B * P;
  return op;
}

}  // namespace

Eigen::VectorXd WaveOperator::rhs(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = -2.0 * std::sin(2.0 * x[i]);
  return A * x + B * g;
}

Eigen::MatrixXd WaveOperator::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd J = A;
  for (int j = 0; j < n; ++j) {
    const double d = -4.0 * std::cos(2.0 * x[j]);
    J.col(j) += B.col(j) * d;
  }
  return J;
}

WaveOperator make_wave_operator(const Grid& grid, Parity parity) {
  if (parity == Parity::Even) return build_even_operator(grid);
  return build_operator(grid.nodes, grid.diff1, BoundaryMode::HalfOdd);
}

FullLineOperator full_line_operator(int n) {
  Grid half = make_grid(n);
  FullLineOperator fl;
  fl.nodes = (2.0 * half.nodes.array() - 1.0).matrix();
  fl.diff1 = 0.5 * half.diff1;
  fl.op = build_operator(fl.nodes, fl.diff1, BoundaryMode::FullLine);
  return fl;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> rhs(const FieldState& state, const Grid& grid) {
  const int n = grid.n;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(state.u[i]) || !std::isfinite(state.v[i]))
      throw std::runtime_error("rhs: non-finite input at node index " + std::to_string(i));
  }
  WaveOperator op = make_wave_operator(grid, state.parity);
  Eigen::VectorXd x(2 * n);
  x.head(n) = state.u;
  x.tail(n) = state.v;
  Eigen::VectorXd dx = op.rhs(x);
  return {dx.head(n), dx.tail(n)};
}

}  // namespace wormhole
