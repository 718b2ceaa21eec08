#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wormhole/ode_models.hpp"
#include "wormhole/wavemap.hpp"

namespace wormhole {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double s_end = 10.0;
  double sample_interval = 0.25;
  double max_step = std::numeric_limits<double>::infinity();
};

enum class Termination { ReachedEnd, EventFired, StepFailure };

/// Dense-sampled evolution record. The first snapshot is the initial state;
/// sample times are strictly increasing.
template <class State>
struct Trajectory {
  std::vector<State> samples;
  Termination reason = Termination::ReachedEnd;
  std::string message;
};

using FieldEvent = std::function<bool(const FieldState&)>;

/// Method-of-lines evolution of the hyperboloidal system. The semi-discrete
/// operator has O(n^4) damping near y=1, so time stepping uses an L-stable
/// TR-BDF2 scheme with modified-Newton stages and step-doubling error
/// control; snapshots are cubic-Hermite interpolated at the sample cadence.
/// Events are evaluated at sample times and terminate the run when true.
Trajectory<FieldState> evolve_field(const FieldState& state0, const Grid& grid,
                                    const IntegratorConfig& cfg,
                                    const std::vector<FieldEvent>& events = {});

/// Reduced chain-model evolution with an embedded Dormand-Prince 5(4) pair.
/// Terminates early when the chain ordering is lost or r_1 collapses
/// below 1e-3.
Trajectory<ChainState> evolve_chain(const ChainState& state0, const IntegratorConfig& cfg);

/// Generic adaptive DP5(4) on dx/dt = f(t, x); used by tests that integrate
/// auxiliary systems (linearized modes).
Trajectory<Eigen::VectorXd> integrate_rk45(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, double t0, const IntegratorConfig& cfg,
    std::vector<double>* sample_times = nullptr);

/// Evolution of an arbitrary semilinear wave operator state (test support for
/// the full-line parity check). x packs [u; v].
Trajectory<Eigen::VectorXd> evolve_operator(const WaveOperator& op,
                                            const Eigen::VectorXd& x0,
                                            const IntegratorConfig& cfg);

}  // namespace wormhole
