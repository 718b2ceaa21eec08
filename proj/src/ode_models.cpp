#include "wormhole/ode_models.hpp"

#include <cmath>
#include <stdexcept>

namespace wormhole {

namespace {

void check_state(const ChainState& st) {
  if (st.J < 1 || st.r.size() != st.J || st.rdot.size() != st.J)
    throw std::invalid_argument("chain state: inconsistent sizes");
  double prev = 0.0;
  for (int j = 0; j < st.J; ++j) {
    if (!(st.r[j] > 0.0)) throw std::domain_error("chain state: r_j must be positive");
    if (st.r[j] <= prev && j > 0) throw std::domain_error("chain state: r_j must be ascending");
    prev = st.r[j];
  }
}

struct Term {
  double coef;
  double tau_pow;  // power of tau, including the leading factor
};

// r_j(tau) = tau^{p_j} v_j(tau) expanded as a sum of tau powers.
std::vector<Term> series_terms(int N, double c, int j, int truncation_order) {
  std::vector<Term> v;
  double p;
  if (N == 5) {
    p = (j == 1) ? 1.0 : 2.0;
    if (j == 1)
      v = {{1.0, 0}, {-3.0 / 8.0, -2}, {c, -3}, {3.0 / 128.0, -4},
           {3.0 * c / 8.0, -5}, {443.0 / 3072.0 - c * c, -6}};
    else
      v = {{1.0, 0}, {-1.0 / 4.0, -2}, {2.0 * c, -3}, {-(5.0 / 192.0 + c * c), -6}};
  } else if (N == 4) {
    p = (j == 1) ? 1.0 : 3.0;
    if (j == 1)
      v = {{1.0, 0}, {-1.0 / 6.0, -4}, {c / 3.0, -5}, {-83.0 / 1944.0, -8}};
    else
      v = {{1.0, 0}, {-1.0 / 6.0, -4}, {c, -5}, {7.0 / 648.0, -8}};
  } else {
    throw std::invalid_argument("asymptotic series: N must be 4 or 5");
  }
  std::vector<Term> out;
  for (const Term& t : v) {
    if (truncation_order >= 0 && -t.tau_pow > truncation_order) continue;
    out.push_back({t.coef, t.tau_pow + p});
  }
  return out;
}

}  // namespace

Eigen::VectorXd chain_rhs(const ChainState& st) {
  check_state(st);
  const int J = st.J;
  Eigen::VectorXd acc(J);
  for (int j = 0; j < J; ++j) {
    double attract;
    if (j == 0) {
      attract = st.even_N ? 1.0 / std::pow(st.r[0], 5)     // -1/r_1^5
                          : 1.0 / std::pow(st.r[0], 3);    // r_0 = 1
    } else {
      attract = st.r[j - 1] * st.r[j - 1] / std::pow(st.r[j], 3);
    }
    double push = (j + 1 < J) ? st.r[j] / (st.r[j + 1] * st.r[j + 1]) : 0.0;
    acc[j] = -attract + push;
  }
  return acc;
}

double effective_energy(const ChainState& st) {
  check_state(st);
  double e = st.rdot.squaredNorm();
  for (int j = 0; j < st.J; ++j) {
    if (j == 0) {
      e -= st.even_N ? 0.5 / std::pow(st.r[0], 4) : 1.0 / (st.r[0] * st.r[0]);
    } else {
      const double q = st.r[j - 1] / st.r[j];
      e -= q * q;
    }
  }
  return e;
}

ChainState exact_solution(int N, double t) {
  if (t <= 0.0) throw std::domain_error("exact_solution: t > 0 required");
  if (N != 2 && N != 3) throw std::invalid_argument("exact_solution: N must be 2 or 3");
  ChainState st;
  st.J = 1;
  st.t = t;
  st.r.resize(1);
  st.rdot.resize(1);
  if (N == 3) {
    st.even_N = false;
    st.r[0] = std::sqrt(2.0 * t);
    st.rdot[0] = 1.0 / st.r[0];
  } else {
    st.even_N = true;
    const double a = 3.0 / std::sqrt(2.0);
    st.r[0] = std::cbrt(a * t);
    st.rdot[0] = st.r[0] / (3.0 * t);
  }
  return st;
}

SeriesEval asymptotic_solution(const SeriesParams& params, double t) {
  SeriesDerivs d = asymptotic_derivs(params, t);
  SeriesEval ev;
  ev.tau = d.tau;
  ev.reliable = d.tau >= 3.0;
  ev.state.even_N = (params.N % 2 == 0);
  ev.state.J = 2;
  ev.state.t = t;
  ev.state.r = d.r;
  ev.state.rdot = d.rdot;
  return ev;
}

SeriesDerivs asymptotic_derivs(const SeriesParams& params, double t) {
  if (t <= 0.0) throw std::domain_error("asymptotic series: t > 0 required");
  const double A = leading_rate_constant(params.N);
  const double kappa = (params.N == 5) ? 3.0 : 5.0;
  SeriesDerivs out;
  out.tau = std::pow(A * t, 1.0 / kappa);
  out.r = Eigen::VectorXd::Zero(2);
  out.rdot = Eigen::VectorXd::Zero(2);
  out.rddot = Eigen::VectorXd::Zero(2);
  for (int j = 1; j <= 2; ++j) {
    for (const Term& term : series_terms(params.N, params.c, j, params.truncation_order)) {
      const double e = term.tau_pow / kappa;  // exponent in (A t)
      const double at = A * t;
      out.r[j - 1] += term.coef * std::pow(at, e);
      out.rdot[j - 1] += term.coef * e * A * std::pow(at, e - 1.0);
      out.rddot[j - 1] += term.coef * e * (e - 1.0) * A * A * std::pow(at, e - 2.0);
    }
  }
  return out;
}

Eigen::Vector2d linearized_rhs(int N, double tau, const Eigen::Vector2d& xi,
                               const Eigen::Vector2d& xip) {
  const double t2 = tau * tau;
  Eigen::Vector2d xipp;
  if (N == 5) {
    xipp[0] = (2.0 * xi[0] - 4.0 * t2 * (xi[1] - 2.0 * xi[0])) / t2;
    xipp[1] = (-2.0 * tau * xip[1] + 8.0 * xi[1] - 4.0 * xi[0]) / t2;
  } else if (N == 4) {
    xipp[0] = (2.0 * tau * xip[0] + 4.0 * xi[0] - 12.0 * std::pow(tau, 4) * (xi[1] - 3.0 * xi[0])) / t2;
    xipp[1] = (-2.0 * tau * xip[1] + 24.0 * xi[1] - 12.0 * xi[0]) / t2;
  } else {
    throw std::invalid_argument("linearized_rhs: N must be 4 or 5");
  }
  return xipp;
}

double rescale_time(double physical_t) { return (8.0 / std::sqrt(M_PI)) * physical_t; }

double log_coordinate(double r) {
  if (r <= 0.0) throw std::domain_error("log_coordinate: r > 0 required");
  return std::log(r);
}

double physical_rate_constant(int N) {
  if (N == 2) return 12.0 * std::sqrt(2.0 / M_PI);
  if (N == 3) return 16.0 / std::sqrt(M_PI);
  throw std::invalid_argument("physical_rate_constant: N must be 2 or 3");
}

double leading_rate_constant(int N) {
  if (N < 2) throw std::invalid_argument("leading_rate_constant: N >= 2 required");
  const int J = N / 2;
  if (N % 2 == 0) return (2.0 * J + 1.0) / std::sqrt(4.0 * J - 2.0);
  return (J + 1.0) / std::sqrt(double(J));
}

std::vector<double> leading_exponents(int N) {
  if (N < 2) throw std::invalid_argument("leading_exponents: N >= 2 required");
  const int J = N / 2;
  std::vector<double> p(J);
  for (int j = 1; j <= J; ++j)
    p[j - 1] = (N % 2 == 0) ? (2.0 * j - 1.0) / (2.0 * J + 1.0) : double(j) / (J + 1.0);
  return p;
}

std::vector<double> leading_asymptotics(int N, double t) {
  if (t <= 0.0) throw std::domain_error("leading_asymptotics: t > 0 required");
  const double A = leading_rate_constant(N);
  std::vector<double> r;
  for (double p : leading_exponents(N)) r.push_back(std::pow(A * t, p));
  return r;
}

}  // namespace wormhole
