#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wormhole {

/// Collective coordinates of a J-particle reduced chain model with
/// r_j = e^{c_j}, in rescaled time.
struct ChainState {
  bool even_N = true;  // N = 2J if true, N = 2J+1 otherwise
  int J = 1;
  double t = 0.0;
  Eigen::VectorXd r;
  Eigen::VectorXd rdot;

  int N() const { return even_N ? 2 * J : 2 * J + 1; }
};

/// Accelerations of the reduced system. Odd chains use r_0 = 1;
/// the outermost particle sees r_{J+1} = infinity.
Eigen::VectorXd chain_rhs(const ChainState& state);

/// Conserved effective energy. The even-chain expression is the Legendre
/// transform of the even effective Lagrangian:
///   E = sum rdot_j^2 - 1/(2 r_1^4) - sum_{j>=2} r_{j-1}^2 / r_j^2.
double effective_energy(const ChainState& state);

/// Exact zero-energy solutions: r_1 = (2t)^{1/2} for N=3 and
/// r_1 = ((3/sqrt 2) t)^{1/3} for N=2. Throws std::domain_error for t <= 0.
ChainState exact_solution(int N, double t);

/// Truncated large-time series for the J=2 chains (N = 4 or 5).
struct SeriesParams {
  int N = 5;
  double c = 0.0;            // trace of time-translation symmetry
  int truncation_order = -1;  // keep terms with tau-power >= -order; -1 = all
};

struct SeriesEval {
  ChainState state;
  double tau = 0.0;
  bool reliable = true;  // false when tau < 3
};
SeriesEval asymptotic_solution(const SeriesParams& params, double t);

/// Series values together with exact first and second time derivatives of
/// the truncation (for residual tests against chain_rhs).
struct SeriesDerivs {
  Eigen::VectorXd r, rdot, rddot;
  double tau = 0.0;
};
SeriesDerivs asymptotic_derivs(const SeriesParams& params, double t);

/// Linearized perturbation systems about the J=2 series, solved for xi''.
Eigen::Vector2d linearized_rhs(int N, double tau, const Eigen::Vector2d& xi,
                               const Eigen::Vector2d& xip);

/// Time rescaling t -> (8/sqrt(pi)) t and the conjugate coordinates.
double rescale_time(double physical_t);
double log_coordinate(double r);  // c_j = log r_j

/// Rate constant of the physical-time expansion law: 12 sqrt(2/pi) for N=2,
/// 16/sqrt(pi) for N=3.
double physical_rate_constant(int N);

/// Leading-order power laws r_j ~ (A t)^{p_j} for any chain size N >= 2.
double leading_rate_constant(int N);
std::vector<double> leading_exponents(int N);
std::vector<double> leading_asymptotics(int N, double t);

}  // namespace wormhole
