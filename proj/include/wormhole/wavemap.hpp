#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wormhole/spectral.hpp"

namespace wormhole {

/// Model parameters: equivariance index k (>= 2) and neck radius a, fixed to 1.
struct ModelParams {
  int k = 2;
  double a = 1.0;
};

/// Symmetry class of a half-domain state.
///
/// Even: degree 0, symmetric in x, Neumann condition u_y(s, 0) = 0.
/// OddCentered: degree 1, u - pi/2 antisymmetric in x, u(s, 0) = pi/2.
enum class Parity { Even, OddCentered };

inline int degree_of(Parity p) { return p == Parity::Even ? 0 : 1; }

/// Field pair (u, v = du/ds) sampled on a half-domain grid at hyperboloidal
/// time s.
struct FieldState {
  double s = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  Parity parity = Parity::Even;
  ModelParams params;

  int degree() const { return degree_of(parity); }
};

// Coordinate maps: y = tanh(x/4), x = asinh(r).
double y_of_x(double x);
double x_of_y(double y);
double x_of_r(double r);
double r_of_x(double x);

/// Kink profile Q(x-c) = 2 arctan(e^{k(x-c)}).
double kink(double x, double c = 0.0, int k = 2);

/// Alternating kink/antikink chain with centers 0 < c_1 < ... < c_J.
/// N = 2J (degree 0) or N = 2J+1 (degree +-1). Orientation is such that the
/// 2-chain has value ~pi between the centers; odd chains follow the
/// superposition ansatz with the central kink at x = 0.
double chain_profile(int N, const std::vector<double>& centers, double x, int k = 2);

/// Potential energy V = (1/2) int (u_x^2 + k^2 sin^2 u) dx over the full line,
/// evaluated from half-domain samples by parity doubling and Clenshaw-Curtis
/// quadrature in y. The integrand limit at y=1 is 0 for finite-energy states.
double potential_energy(const FieldState& state, const Grid& grid);

/// Initial data family with u = 0 and a velocity bump of amplitude b
/// (degree 0, Even parity).
FieldState initial_data_even(double b, const Grid& grid);

/// Initial data family of monotone degree-1 profiles deformed by b
/// (OddCentered parity, v = 0).
FieldState initial_data_odd(double b, const Grid& grid);

/// Static kink sampled on the half-domain grid (OddCentered, v = 0).
FieldState kink_state(const Grid& grid);

/// The hyperboloidal evolution written as the semilinear first-order system
///   d/ds [u; v] = A [u; v] + B g(u),   g_j = -2 sin(2 u_j),
/// with boundary rows implementing the parity condition at y=0 and the
/// pinning u = n*pi, v = 0 at y=1. The equation is implemented for k=2 as
/// printed; other k is an extension point.
struct WaveOperator {
  Eigen::MatrixXd A;  // 2n x 2n constant part
  Eigen::MatrixXd B;  // 2n x n, injects the nonlinearity
  int n = 0;
  Parity parity = Parity::Even;

  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
};

/// Builds the wave operator for the half-domain grid. Also usable with an
/// arbitrary interior node set (see full_line_operator, test support).
WaveOperator make_wave_operator(const Grid& grid, Parity parity);

/// Full-line variant on [-1,1] with both ends pinned and no center condition;
/// returns the operator together with its node set and derivative matrix.
/// Used to cross-check parity reduction at low resolution.
struct FullLineOperator {
  Eigen::VectorXd nodes;   // on [-1, 1]
  Eigen::MatrixXd diff1;
  WaveOperator op;
};
FullLineOperator full_line_operator(int n);

/// Right-hand side (du/ds, dv/ds) of the hyperboloidal system for one state.
/// Throws std::runtime_error naming the first bad index if inputs are not
/// finite. Builds the collocation operator on the fly; evolution code should
/// use WaveOperator directly.
std::pair<Eigen::VectorXd, Eigen::VectorXd> rhs(const FieldState& state, const Grid& grid);

}  // namespace wormhole
