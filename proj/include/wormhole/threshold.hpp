#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wormhole/diagnostics.hpp"
#include "wormhole/evolve.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/wavemap.hpp"

namespace wormhole {

enum class Family { Even, Odd };  // even: vacuum <-> pair; odd: kink <-> kink+pair

enum class Classification { Subcritical, Supercritical, Undecided };

struct ClassifyConfig {
  // Early supercritical exit: outermost kink past this x with energy already
  // locked to the upper quantum. Kink positions grow only logarithmically in
  // s, so this rarely fires at practical s_end; the end-of-run test below is
  // the workhorse.
  double x_exp = 12.0;
  double energy_window = 0.5;       // for the early exit
  // Subcritical once the Bondi energy drops below upper_quantum - margin:
  // the pair has annihilated and its energy left through the boundaries.
  double annihilation_margin = 2.0;
  double min_expansion_c1 = 1.0;    // end-of-run: outermost kink must be out here
};

double upper_quantum(Family f);  // 8 (even), 12 (odd)
double lower_quantum(Family f);  // 0 (even),  4 (odd)

/// Classify a run from its diagnostics history. `reached_end` says whether
/// the records extend to the configured s_end; the survival test
/// (supercritical without the x_exp exit) only applies then.
Classification classify(const std::vector<DiagnosticsRecord>& records,
                        Family family, const ClassifyConfig& cfg,
                        bool reached_end);

struct Probe {
  double b = 0.0;
  Classification cls = Classification::Undecided;
  double final_energy = 0.0;
  double s_end = 0.0;
};

struct ProbeRun {
  Trajectory<FieldState> traj;
  std::vector<DiagnosticsRecord> records;
  Classification cls = Classification::Undecided;
};

/// Evolve the family's initial data at amplitude b, classifying incrementally
/// (the evolution stops as soon as the outcome is decided).
ProbeRun run_probe(Family family, double b, const Grid& grid,
                   const IntegratorConfig& icfg, const ClassifyConfig& ccfg);

struct BisectionResult {
  bool ok = false;
  double b_star = 0.0;
  double bracket_width = 0.0;
  std::vector<Probe> probe_log;
  std::string message;
};

using ProbeCallback =
    std::function<void(const Probe&, const std::vector<DiagnosticsRecord>&)>;

/// Bisect [b_lo, b_hi] (which must bracket: one sub-, one supercritical) down
/// to width eps_b. An Undecided probe is retried with doubled s_end (up to
/// three doublings); a still-undecided probe aborts with ok=false and the
/// probe log so far.
BisectionResult bisect(Family family, double b_lo, double b_hi, double eps_b,
                       const Grid& grid, const IntegratorConfig& icfg,
                       const ClassifyConfig& ccfg = {},
                       const ProbeCallback& on_probe = nullptr);

}  // namespace wormhole
