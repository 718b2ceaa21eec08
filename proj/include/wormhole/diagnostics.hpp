#pragma once

#include <vector>

#include "wormhole/evolve.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/wavemap.hpp"

namespace wormhole {

/// Physical observables of one snapshot.
struct DiagnosticsRecord {
  double s = 0.0;
  double bondi = 0.0;
  double b_plus = 0.0;
  double b_minus = 0.0;            // by parity: +b_plus (even), -b_plus (odd)
  std::vector<double> positions;   // kink crossings in x, ascending
  double t_inferred = 0.0;         // s + cosh(c1); NaN when no crossing
};

/// Bondi energy E = int (1/2 u_s^2 + 1/2 u_x^2 + 2 sin^2 u) dx over the full
/// line, from half-domain samples (parity-doubled, Clenshaw-Curtis in y).
double bondi_energy(const FieldState& state, const Grid& grid);

/// Radiation coefficient b_plus: the coefficient of e^{-x/2} = (1-y)/(1+y)
/// in u - n*pi near y=1, evaluated by l'Hopital as -2 u_y(1) with the
/// spectral derivative.
double radiation_coefficient(const FieldState& state, const Grid& grid);

/// Crossings of u through pi/2, 3pi/2, ... within the state's range,
/// located in y and mapped to x = 4 artanh(y); ascending.
std::vector<double> kink_positions(const FieldState& state, const Grid& grid);

DiagnosticsRecord diagnose(const FieldState& state, const Grid& grid);
std::vector<DiagnosticsRecord> diagnose_all(const Trajectory<FieldState>& traj,
                                            const Grid& grid);

/// Pointwise residuals of the energy-loss formula
///   dE/ds = -(1/2)(bdot_+^2 + bdot_-^2),
/// with both sides computed by centered finite differences on the sample
/// grid. Endpoints are reported as zero. Requires >= 3 samples.
std::vector<double> energy_flux_check(const std::vector<DiagnosticsRecord>& records);

struct EnergyQuantum {
  bool settled = false;  // Bondi energy varied < 0.1 over the last quarter
  int N = 0;             // round(E_last / 4)
  double energy = 0.0;   // raw E_last
};
EnergyQuantum final_energy_quantum(const std::vector<DiagnosticsRecord>& records);

}  // namespace wormhole
