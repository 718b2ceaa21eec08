#pragma once

#include <string>
#include <vector>

#include "wormhole/diagnostics.hpp"

namespace wormhole {

struct FitResult {
  double A = 0.0;
  double t0 = 0.0;
  double exponent = 0.0;
  double window_tmin = 0.0;
  double window_tmax = 0.0;
  double rms_residual = 0.0;
  double A_predicted = 0.0;     // model-predicted rate constant, 0 if n/a
  double rel_deviation = 0.0;   // |A - A_predicted| / A_predicted
};

/// Rate constant 12*sqrt(2/pi) (exponent 1/3) or 16/sqrt(pi) (exponent 1/2)
/// predicted by the collective-coordinate model in physical time; 0 for
/// other exponents.
double predicted_rate_constant(double exponent);

/// Least-squares fit of c1(t) = p*(log(t - t0) + log A) with p fixed.
/// log A is eliminated in closed form; t0 is found by golden-section search
/// on (-10*t_min, t_min). Requires >= 10 strictly increasing samples and a
/// non-degenerate c1 range.
FitResult fit_log_law(const std::vector<double>& t,
                      const std::vector<double>& c1, double exponent);

struct WindowResult {
  bool ok = false;
  size_t first = 0, last = 0;  // inclusive index range into the records
  double t_min = 0.0, t_max = 0.0;
  std::string message;
};

/// Pick the expansion window from a diagnostics history: outermost kink past
/// x=2, Bondi energy within 0.5 of the upper quantum, local slope of c1 vs
/// log t within 20% of the exponent. Returns the longest contiguous run and
/// requires it to span at least a factor 3 in t.
WindowResult select_fit_window(const std::vector<DiagnosticsRecord>& records,
                               double exponent, double upper_quantum);

}  // namespace wormhole
