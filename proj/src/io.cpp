#include "wormhole/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wormhole {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& records) {
  auto out = open_out(path);
  out << "s,bondi,b_plus,c1_x,t_inferred\n";
  for (const auto& r : records) {
    const double c1 = r.positions.empty()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : r.positions.back();
    out << r.s << ',' << r.bondi << ',' << r.b_plus << ',' << c1 << ','
        << r.t_inferred << '\n';
  }
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty trajectory file: " + path);
  if (line.rfind("s,bondi,b_plus,c1_x,t_inferred", 0) != 0)
    throw std::runtime_error("bad trajectory header in " + path);
  std::vector<TrajectoryRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    // std::stod (unlike stream extraction) accepts "nan" and "inf"
    std::vector<double> vals;
    std::istringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    } catch (const std::exception&) {
      vals.clear();
    }
    if (vals.size() != 5) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad trajectory row");
    }
    rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4]});
  }
  return rows;
}

void write_field_csv(const std::string& path, const FieldState& state,
                     const Grid& grid) {
  auto out = open_out(path);
  out << "y,u,v\n";
  for (int i = 0; i < grid.n; ++i) {
    out << grid.nodes[i] << ',' << state.u[i] << ',' << state.v[i] << '\n';
  }
}

void write_chain_csv(const std::string& path,
                     const Trajectory<ChainState>& traj) {
  auto out = open_out(path);
  const int J = traj.samples.empty() ? 0 : traj.samples.front().J;
  out << 't';
  for (int j = 1; j <= J; ++j) out << ",r_" << j;
  for (int j = 1; j <= J; ++j) out << ",rdot_" << j;
  out << ",E_eff\n";
  for (const auto& st : traj.samples) {
    out << st.t;
    for (int j = 0; j < J; ++j) out << ',' << st.r[j];
    for (int j = 0; j < J; ++j) out << ',' << st.rdot[j];
    out << ',' << effective_energy(st) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  auto out = open_out(path);
  out << contents;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wormhole
