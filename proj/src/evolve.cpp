#include "wormhole/evolve.hpp"

#include <cmath>
#include <optional>

namespace wormhole {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double weighted_rms(const VectorXd& e, const VectorXd& ref, double atol, double rtol) {
  double acc = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    const double w = atol + rtol * std::abs(ref[i]);
    const double q = e[i] / w;
    acc += q * q;
  }
  return std::sqrt(acc / double(e.size()));
}

// ---------------------------------------------------------------------------
// TR-BDF2 with modified Newton and step-doubling error control.
// ---------------------------------------------------------------------------

struct ImplicitOde {
  std::function<VectorXd(const VectorXd&)> f;
  std::function<MatrixXd(const VectorXd&)> jac;
};

// Called after each accepted step; return false to stop.
using StepCallback =
    std::function<bool(double, const VectorXd&, const VectorXd&, double, const VectorXd&,
                       const VectorXd&)>;

class TrBdf2 {
 public:
  TrBdf2(const ImplicitOde& ode, const IntegratorConfig& cfg) : ode_(ode), cfg_(cfg) {}

  Termination run(VectorXd& x, double t0, double t_end, const StepCallback& cb,
                  std::string& msg) {
    const double span = t_end - t0;
    double t = t0;
    double h = std::min({cfg_.max_step, span, 1e-3});
    VectorXd f0 = ode_.f(x);
    bool jac_fresh = false;
    int calm = 0;  // accepted steps since the last rejection

    // Step sizes move on a halving/doubling ladder. The LU factorizations of
    // (I - gamma h/2 J) dominate the cost, and with ladder moves the full- and
    // half-step factors can be swapped instead of recomputed (the half-step
    // factor at h equals the full-step factor at h/2): one new factorization
    // per rung, none for a repeated step size.
    while (t < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
      const double hs = std::min({h, cfg_.max_step, t_end - t});
      if (hs < 1e-12) {
        msg = "step size collapsed below 1e-12 at t=" + std::to_string(t);
        return Termination::StepFailure;
      }
      ensure_factors(hs, x, jac_fresh);

      std::optional<VectorXd> big = step(x, f0, hs, lu_full_);
      std::optional<VectorXd> fine;
      if (big) {
        std::optional<VectorXd> mid = step(x, f0, 0.5 * hs, lu_half_);
        if (mid) fine = step(*mid, ode_.f(*mid), 0.5 * hs, lu_half_);
      }
      if (!big || !fine) {
        if (!jac_fresh) {
          // stale Jacobian is the usual culprit: refresh and retry this h
          jac_ = ode_.jac(x);
          jac_valid_ = true;
          jac_fresh = true;
          refactor(lu_full_, kGammaHalf * hs);
          refactor(lu_half_, kGammaHalf * 0.5 * hs);
          continue;
        }
        h = 0.25 * hs;
        continue;
      }

      VectorXd err = (*fine - *big) / 3.0;
      // Measure the error through (I - gamma h/2 J)^-1: the raw difference is
      // dominated by slaved stiff components whose step-to-step error is
      // harmless, and would throttle h far below what accuracy requires.
      VectorXd err_meas = lu_full_.lu.solve(err);
      VectorXd refv = x.cwiseAbs().cwiseMax(fine->cwiseAbs());
      const double E = weighted_rms(err_meas, refv, cfg_.abs_tol, cfg_.rel_tol);
      if (std::isfinite(E) && E <= 1.0) {
        VectorXd x1 = *fine + err;  // local extrapolation, third order
        const double t1 = t + hs;
        VectorXd f1 = ode_.f(x1);
        if (!cb(t, x, f0, t1, x1, f1)) {
          x = x1;
          return Termination::EventFired;
        }
        x = x1;
        f0 = f1;
        t = t1;
        // climb a rung only with clear headroom (doubling raises the local
        // error ~8x) and not right after a rejection, to avoid thrashing
        // between rungs, which costs a refactorization each move
        const double fac = (E > 0.0) ? 0.9 * std::pow(E, -1.0 / 3.0) : 4.0;
        ++calm;
        if (fac >= 1.9 && calm >= 8) {
          h = 2.0 * hs;
          calm = 0;
        } else if (hs < h) {
          h = hs;  // shortened end-of-interval step: keep it
        }
        jac_fresh = false;
      } else {
        const double fac = std::isfinite(E) ? 0.9 * std::pow(E, -1.0 / 3.0) : 0.2;
        h = hs * (fac < 0.25 ? 0.25 : 0.5);
        calm = 0;
        jac_fresh = false;
      }
    }
    return Termination::ReachedEnd;
  }

 private:
  struct LuCache {
    double d = -1.0;
    Eigen::PartialPivLU<MatrixXd> lu;
  };

  static constexpr double kGamma = 0.585786437626904951;  // 2 - sqrt(2)
  static constexpr double kGammaHalf = kGamma / 2.0;

  void refactor(LuCache& c, double d) {
    const long m = jac_.rows();
    MatrixXd M = -d * jac_;
    M.diagonal().array() += 1.0;
    c.lu.compute(M);
    c.d = d;
    (void)m;
  }

  void ensure_factors(double h, const VectorXd& x, bool& jac_fresh) {
    const double d = kGammaHalf * h;
    if (jac_valid_ && lu_full_.d == d && lu_half_.d == 0.5 * d) return;
    if (!jac_valid_) {
      jac_ = ode_.jac(x);
      jac_valid_ = true;
      jac_fresh = true;
      refactor(lu_full_, d);
      refactor(lu_half_, 0.5 * d);
      return;
    }
    // ladder moves reuse one factorization (half at h == full at h/2)
    if (lu_half_.d == d) {  // h halved: the old half factor becomes the full one
      std::swap(lu_full_, lu_half_);
      refactor(lu_half_, 0.5 * d);
    } else if (lu_full_.d == 0.5 * d) {  // h doubled
      std::swap(lu_full_, lu_half_);
      refactor(lu_full_, d);
    } else {
      refactor(lu_full_, d);
      refactor(lu_half_, 0.5 * d);
    }
  }

  // One TR-BDF2 step of size h; lu must be factored for d = gamma*h/2.
  std::optional<VectorXd> step(const VectorXd& x0, const VectorXd& f0, double h, LuCache& lu) {
    const double d = kGammaHalf * h;
    // trapezoidal stage to t + gamma h
    VectorXd rhs1 = x0 + d * f0;
    VectorXd z1 = x0 + (kGamma * h) * f0;
    if (!newton(z1, rhs1, d, lu)) return std::nullopt;
    // BDF2 stage to t + h
    const double w1 = 1.0 / (kGamma * (2.0 - kGamma));
    const double w0 = -(1.0 - kGamma) * (1.0 - kGamma) / (kGamma * (2.0 - kGamma));
    VectorXd rhs2 = w1 * z1 + w0 * x0;
    VectorXd z2 = x0 + (z1 - x0) / kGamma;
    if (!newton(z2, rhs2, d, lu)) return std::nullopt;
    return z2;
  }

  bool newton(VectorXd& z, const VectorXd& rhs, double d, LuCache& lu) {
    for (int it = 0; it < 12; ++it) {
      VectorXd g = z - d * ode_.f(z) - rhs;
      VectorXd dz = lu.lu.solve(-g);
      z += dz;
      const double inc = weighted_rms(dz, z.cwiseAbs(), cfg_.abs_tol, cfg_.rel_tol);
      if (!std::isfinite(inc)) return false;
      if (inc < 1e-3) return true;
    }
    return false;
  }

  const ImplicitOde& ode_;
  const IntegratorConfig& cfg_;
  MatrixXd jac_;
  bool jac_valid_ = false;
  LuCache lu_full_, lu_half_;
};

VectorXd hermite(double theta, double h, const VectorXd& x0, const VectorXd& f0,
                 const VectorXd& x1, const VectorXd& f1) {
  const double t2 = theta * theta, t3 = t2 * theta;
  return (2 * t3 - 3 * t2 + 1) * x0 + (t3 - 2 * t2 + theta) * h * f0 +
         (-2 * t3 + 3 * t2) * x1 + (t3 - t2) * h * f1;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)
// ---------------------------------------------------------------------------

class Dopri5 {
 public:
  Dopri5(std::function<VectorXd(double, const VectorXd&)> f, const IntegratorConfig& cfg)
      : f_(std::move(f)), cfg_(cfg) {}

  Termination run(VectorXd& x, double t0, double t_end, const StepCallback& cb,
                  std::string& msg) {
    double t = t0;
    double h = std::min({cfg_.max_step, (t_end - t0) * 0.01 + 1e-8, 0.1});
    VectorXd k1 = f_(t, x);
    while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
      h = std::min({h, cfg_.max_step, t_end - t});
      if (h < 1e-14) {
        msg = "step size collapsed at t=" + std::to_string(t);
        return Termination::StepFailure;
      }
      VectorXd k2 = f_(t + c2 * h, x + h * (a21 * k1));
      VectorXd k3 = f_(t + c3 * h, x + h * (a31 * k1 + a32 * k2));
      VectorXd k4 = f_(t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3));
      VectorXd k5 = f_(t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      VectorXd k6 =
          f_(t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      VectorXd x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      VectorXd k7 = f_(t + h, x5);
      VectorXd err = h * ((b1 - e1) * k1 + (b3 - e3) * k3 + (b4 - e4) * k4 +
                          (b5 - e5) * k5 + (b6 - e6) * k6 - e7 * k7);
      VectorXd refv = x.cwiseAbs().cwiseMax(x5.cwiseAbs());
      const double E = weighted_rms(err, refv, cfg_.abs_tol, cfg_.rel_tol);
      if (std::isfinite(E) && E <= 1.0) {
        const double t1 = t + h;
        if (!cb(t, x, k1, t1, x5, k7)) {
          x = x5;
          return Termination::EventFired;
        }
        x = x5;
        k1 = k7;  // FSAL
        t = t1;
        const double fac = (E > 0.0) ? 0.9 * std::pow(E, -0.2) : 5.0;
        h *= std::clamp(fac, 0.3, 5.0);
      } else {
        const double fac = std::isfinite(E) ? 0.9 * std::pow(E, -0.2) : 0.1;
        h *= std::clamp(fac, 0.05, 0.5);
      }
    }
    return Termination::ReachedEnd;
  }

 private:
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                          e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

  std::function<VectorXd(double, const VectorXd&)> f_;
  const IntegratorConfig& cfg_;
};

// Emits Hermite-interpolated samples at the configured cadence.
template <class Emit>
class Sampler {
 public:
  Sampler(double t0, double dt, Emit emit) : next_(t0 + dt), dt_(dt), emit_(std::move(emit)) {}

  // returns false if an event fired at one of the samples
  bool on_step(double t0, const VectorXd& x0, const VectorXd& f0, double t1,
               const VectorXd& x1, const VectorXd& f1) {
    while (next_ <= t1 + 1e-12) {
      const double h = t1 - t0;
      const double theta = std::clamp((next_ - t0) / h, 0.0, 1.0);
      VectorXd xs = hermite(theta, h, x0, f0, x1, f1);
      if (!emit_(next_, xs)) return false;
      next_ += dt_;
    }
    return true;
  }

 private:
  double next_, dt_;
  Emit emit_;
};

}  // namespace

Trajectory<FieldState> evolve_field(const FieldState& state0, const Grid& grid,
                                    const IntegratorConfig& cfg,
                                    const std::vector<FieldEvent>& events) {
  const int n = grid.n;
  // Even states are evolved on a mirrored full-line grid of 2n-1 nodes: the
  // half state is lifted once by interpolation, time-stepped with the
  // full-line operator (which needs no parity constraint row), and restricted
  // back to the half nodes only when a sample is emitted. Evolving directly
  // on the half grid would require imposing u_y(0) = 0 through some one-sided
  // device, and every such variant tried was weakly unstable at high
  // resolution. Odd states pin u(0) = pi/2 and evolve on the half grid as is.
  const bool lifted = (state0.parity == Parity::Even);
  WaveOperator half_op;
  FullLineOperator full;
  Eigen::MatrixXd lift, restrict_;
  const WaveOperator* op;
  int nn = n;  // evolved u-block size
  if (lifted) {
    const int m = 2 * n - 1;
    nn = m;
    full = full_line_operator(m);
    Grid gm = make_grid(m);
    lift.resize(m, n);
    for (int k = 0; k < m; ++k) {
      const double z = 2.0 * gm.nodes[k] - 1.0;
      lift.row(k) = interpolation_row(grid, std::abs(z));
    }
    restrict_.resize(n, m);
    for (int i = 0; i < n; ++i)
      restrict_.row(i) = interpolation_row(gm, (grid.nodes[i] + 1.0) / 2.0);
    op = &full.op;
  } else {
    half_op = make_wave_operator(grid, state0.parity);
    op = &half_op;
  }
  ImplicitOde ode{[op](const VectorXd& x) { return op->rhs(x); },
                  [op](const VectorXd& x) { return op->jacobian(x); }};

  Trajectory<FieldState> traj;
  traj.samples.push_back(state0);

  auto to_state = [&](double s, const VectorXd& x) {
    FieldState st;
    st.s = s;
    if (lifted) {
      st.u = restrict_ * x.head(nn);
      st.v = restrict_ * x.tail(nn);
    } else {
      st.u = x.head(nn);
      st.v = x.tail(nn);
    }
    st.parity = state0.parity;
    st.params = state0.params;
    return st;
  };

  bool event_fired = false;
  auto emit = [&](double s, const VectorXd& xs) {
    FieldState st = to_state(s, xs);
    for (const auto& ev : events) {
      if (ev(st)) {
        traj.samples.push_back(std::move(st));
        event_fired = true;
        return false;
      }
    }
    traj.samples.push_back(std::move(st));
    return true;
  };
  Sampler<decltype(emit)> sampler(state0.s, cfg.sample_interval, emit);

  VectorXd x(2 * nn);
  if (lifted) {
    x.head(nn) = lift * state0.u;
    x.tail(nn) = lift * state0.v;
  } else {
    x.head(nn) = state0.u;
    x.tail(nn) = state0.v;
  }

  TrBdf2 engine(ode, cfg);
  std::string msg;
  Termination reason = engine.run(
      x, state0.s, cfg.s_end,
      [&](double t0, const VectorXd& x0, const VectorXd& f0, double t1, const VectorXd& x1,
          const VectorXd& f1) { return sampler.on_step(t0, x0, f0, t1, x1, f1); },
      msg);
  traj.reason = event_fired ? Termination::EventFired : reason;
  traj.message = msg;

  const double t_last = traj.samples.back().s;
  if (reason != Termination::EventFired && t_last < cfg.s_end - 1e-9 &&
      reason == Termination::ReachedEnd) {
    traj.samples.push_back(to_state(cfg.s_end, x));
  } else if (reason == Termination::StepFailure) {
    // keep the last good state for post-mortems
    traj.samples.push_back(to_state(t_last, x));
  }
  return traj;
}

Trajectory<ChainState> evolve_chain(const ChainState& state0, const IntegratorConfig& cfg) {
  const int J = state0.J;
  auto f = [&](double /*t*/, const VectorXd& x) {
    VectorXd out(2 * J);
    ChainState st = state0;
    st.r = x.head(J);
    st.rdot = x.tail(J);
    for (int j = 0; j < J; ++j) {
      if (!(st.r[j] > 1e-12)) {
        out.setConstant(std::numeric_limits<double>::quiet_NaN());
        return out;
      }
    }
    out.head(J) = st.rdot;
    // inline accelerations (no ordering checks mid-stage)
    for (int j = 0; j < J; ++j) {
      double attract = (j == 0) ? (state0.even_N ? 1.0 / std::pow(st.r[0], 5)
                                                 : 1.0 / std::pow(st.r[0], 3))
                                : st.r[j - 1] * st.r[j - 1] / std::pow(st.r[j], 3);
      double push = (j + 1 < J) ? st.r[j] / (st.r[j + 1] * st.r[j + 1]) : 0.0;
      out[J + j] = -attract + push;
    }
    return out;
  };

  Trajectory<ChainState> traj;
  traj.samples.push_back(state0);

  auto to_state = [&](double t, const VectorXd& x) {
    ChainState st = state0;
    st.t = t;
    st.r = x.head(J);
    st.rdot = x.tail(J);
    return st;
  };

  bool event_fired = false;
  auto emit = [&](double t, const VectorXd& xs) {
    ChainState st = to_state(t, xs);
    bool stop = st.r[0] <= 1e-3;
    for (int j = 1; j < J && !stop; ++j)
      if (st.r[j] <= st.r[j - 1]) stop = true;
    traj.samples.push_back(std::move(st));
    if (stop) {
      event_fired = true;
      return false;
    }
    return true;
  };
  Sampler<decltype(emit)> sampler(state0.t, cfg.sample_interval, emit);

  VectorXd x(2 * J);
  x.head(J) = state0.r;
  x.tail(J) = state0.rdot;

  // collapse check at every accepted step, not just at the sample cadence:
  // near r_1 -> 0 the adaptive steps shrink far below the cadence
  auto collapsed = [&](double t, const VectorXd& xs) {
    ChainState st = to_state(t, xs);
    bool stop = st.r[0] <= 1e-3;
    for (int j = 1; j < J && !stop; ++j)
      if (st.r[j] <= st.r[j - 1]) stop = true;
    if (stop) {
      traj.samples.push_back(std::move(st));
      event_fired = true;
    }
    return stop;
  };

  Dopri5 engine(f, cfg);
  std::string msg;
  Termination reason = engine.run(
      x, state0.t, cfg.s_end,
      [&](double t0, const VectorXd& x0, const VectorXd& f0, double t1, const VectorXd& x1,
          const VectorXd& f1) {
        if (!sampler.on_step(t0, x0, f0, t1, x1, f1)) return false;
        return !collapsed(t1, x1);
      },
      msg);
  traj.reason = event_fired ? Termination::EventFired : reason;
  traj.message = event_fired ? "chain ordering lost or collapsed" : msg;
  if (traj.reason == Termination::ReachedEnd && traj.samples.back().t < cfg.s_end - 1e-9)
    traj.samples.push_back(to_state(cfg.s_end, x));
  return traj;
}

Trajectory<Eigen::VectorXd> integrate_rk45(
    const std::function<VectorXd(double, const VectorXd&)>& f, const VectorXd& x0, double t0,
    const IntegratorConfig& cfg, std::vector<double>* sample_times) {
  Trajectory<VectorXd> traj;
  traj.samples.push_back(x0);
  if (sample_times) sample_times->push_back(t0);
  double last_t = t0;
  auto emit = [&](double t, const VectorXd& xs) {
    traj.samples.push_back(xs);
    if (sample_times) sample_times->push_back(t);
    last_t = t;
    return true;
  };
  Sampler<decltype(emit)> sampler(t0, cfg.sample_interval, emit);
  VectorXd x = x0;
  Dopri5 engine(f, cfg);
  std::string msg;
  traj.reason = engine.run(
      x, t0, cfg.s_end,
      [&](double a, const VectorXd& b, const VectorXd& c, double d, const VectorXd& e,
          const VectorXd& g) { return sampler.on_step(a, b, c, d, e, g); },
      msg);
  traj.message = msg;
  if (last_t < cfg.s_end - 1e-9) {
    traj.samples.push_back(x);
    if (sample_times) sample_times->push_back(cfg.s_end);
  }
  return traj;
}

Trajectory<Eigen::VectorXd> evolve_operator(const WaveOperator& op, const VectorXd& x0,
                                            const IntegratorConfig& cfg) {
  ImplicitOde ode{[&op](const VectorXd& x) { return op.rhs(x); },
                  [&op](const VectorXd& x) { return op.jacobian(x); }};
  Trajectory<VectorXd> traj;
  traj.samples.push_back(x0);
  double last_t = 0.0;
  auto emit = [&](double t, const VectorXd& xs) {
    traj.samples.push_back(xs);
    last_t = t;
    return true;
  };
  Sampler<decltype(emit)> sampler(0.0, cfg.sample_interval, emit);
  VectorXd x = x0;
  TrBdf2 engine(ode, cfg);
  std::string msg;
  traj.reason = engine.run(
      x, 0.0, cfg.s_end,
      [&](double a, const VectorXd& b, const VectorXd& c, double d, const VectorXd& e,
          const VectorXd& g) { return sampler.on_step(a, b, c, d, e, g); },
      msg);
  traj.message = msg;
  if (last_t < cfg.s_end - 1e-9) traj.samples.push_back(x);
  return traj;
}

}  // namespace wormhole
