#include "wormhole/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wormhole {

namespace {

// Chebyshev polynomial T_k evaluated at the standard coordinate of y in [0,1].
double cheb_t(int k, double y) { return std::cos(k * std::acos(2.0 * y - 1.0)); }

}  // namespace

Grid make_grid(int n) {
  if (n < 8) throw std::invalid_argument("make_grid: need n >= 8");
  Grid g;
  g.n = n;
  const int N = n - 1;

  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    // ascending: y_i = (1 - cos(i*pi/N))/2
    g.nodes[i] = 0.5 * (1.0 - std::cos(M_PI * double(i) / double(N)));
  }
  g.nodes[0] = 0.0;
  g.nodes[N] = 1.0;
  if (n % 2 == 1) g.nodes[N / 2] = 0.5;

  // Barycentric weights for CGL nodes: (-1)^i, halved at the endpoints.
  g.bary_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double w = (i % 2 == 0) ? 1.0 : -1.0;
    if (i == 0 || i == N) w *= 0.5;
    g.bary_weights[i] = w;
  }

  // Differentiation matrix in barycentric form with negative-sum diagonal,
  // which makes each row annihilate constants to rounding.
  g.diff1.resize(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (g.bary_weights[j] / g.bary_weights[i]) / (g.nodes[i] - g.nodes[j]);
      g.diff1(i, j) = d;
      diag -= d;
    }
    g.diff1(i, i) = diag;
  }
  g.diff2 = g.diff1 * g.diff1;

  // Quadrature weights from exactness on the Chebyshev basis:
  //   sum_i w_i T_k(2 y_i - 1) = int_0^1 T_k(2y-1) dy,  k = 0..n-1.
  Eigen::MatrixXd C(n, n);
  Eigen::VectorXd m(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) C(k, i) = cheb_t(k, g.nodes[i]);
    m[k] = (k % 2 == 0) ? 1.0 / (1.0 - double(k) * double(k)) : 0.0;
  }
  g.quad_weights = C.partialPivLu().solve(m);
  return g;
}

double interpolate(const Grid& grid, const Eigen::VectorXd& values, double point) {
  if (values.size() != grid.n)
    throw std::invalid_argument("interpolate: values length != grid.n");
  if (point < 0.0 || point > 1.0)
    throw std::domain_error("interpolate: point outside [0,1]");
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double dx = point - grid.nodes[i];
    if (dx == 0.0) return values[i];
    const double t = grid.bary_weights[i] / dx;
    num += t * values[i];
    den += t;
  }
  return num / den;
}

Eigen::RowVectorXd interpolation_row(const Grid& grid, double point) {
  if (point < 0.0 || point > 1.0)
    throw std::domain_error("interpolation_row: point outside [0,1]");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    if (point == grid.nodes[i]) {
      row.setZero();
      row[i] = 1.0;
      return row;
    }
    row[i] = grid.bary_weights[i] / (point - grid.nodes[i]);
  }
  row /= row.sum();
  return row;
}

std::vector<double> find_crossings(const Grid& grid, const Eigen::VectorXd& values,
                                   double level) {
  if (values.size() != grid.n)
    throw std::invalid_argument("find_crossings: values length != grid.n");

  // Sample the interpolant on the nodes plus a few points per interval so
  // that pairs of crossings inside one node gap are still bracketed.
  constexpr int kSub = 4;
  std::vector<double> pts;
  pts.reserve(size_t(grid.n) * kSub);
  for (int i = 0; i < grid.n - 1; ++i) {
    for (int q = 0; q < kSub; ++q)
      pts.push_back(grid.nodes[i] + (grid.nodes[i + 1] - grid.nodes[i]) * q / double(kSub));
  }
  pts.push_back(1.0);

  auto f = [&](double p) { return interpolate(grid, values, p) - level; };

  std::vector<double> roots;
  double fa = f(pts[0]);
  if (fa == 0.0) roots.push_back(pts[0]);
  for (size_t i = 1; i < pts.size(); ++i) {
    double fb = f(pts[i]);
    if (fb == 0.0) {
      roots.push_back(pts[i]);
    } else if (fa * fb < 0.0) {
      double a = pts[i - 1], b = pts[i], ya = fa;
      for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        const double c = 0.5 * (a + b);
        const double yc = f(c);
        if (yc == 0.0) { a = b = c; break; }
        if (ya * yc < 0.0) { b = c; } else { a = c; ya = yc; }
      }
      roots.push_back(0.5 * (a + b));
    }
    fa = fb;
  }
  std::sort(roots.begin(), roots.end());
  // collapse near-duplicates (a node hit that also brackets)
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-10) out.push_back(r);
  return out;
}

}  // namespace wormhole
