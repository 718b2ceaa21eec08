#pragma once

#include <string>
#include <vector>

#include "wormhole/diagnostics.hpp"
#include "wormhole/evolve.hpp"
#include "wormhole/ode_models.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/wavemap.hpp"

namespace wormhole {

/// Trajectory CSV, header: s,bondi,b_plus,c1_x,t_inferred
/// c1_x and t_inferred are "nan" when no kink crossing exists.
void write_trajectory_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& records);

struct TrajectoryRow {
  double s, bondi, b_plus, c1_x, t_inferred;
};
std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path);

/// Field snapshot CSV, header: y,u,v
void write_field_csv(const std::string& path, const FieldState& state,
                     const Grid& grid);

/// Chain trajectory CSV, header: t,r_1..r_J,rdot_1..rdot_J,E_eff
void write_chain_csv(const std::string& path,
                     const Trajectory<ChainState>& traj);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace wormhole
