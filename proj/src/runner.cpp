#include "wormhole/runner.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wormhole/diagnostics.hpp"
#include "wormhole/evolve.hpp"
#include "wormhole/fit.hpp"
#include "wormhole/io.hpp"
#include "wormhole/ode_models.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/threshold.hpp"
#include "wormhole/wavemap.hpp"

using nlohmann::json;

namespace wormhole {

namespace {

constexpr const char* kVersion = "0.1.0";

IntegratorConfig integrator_config(const Config& cfg) {
  IntegratorConfig ic;
  ic.rel_tol = cfg.get_double("rel_tol", ic.rel_tol);
  ic.abs_tol = cfg.get_double("abs_tol", ic.abs_tol);
  ic.s_end = cfg.get_double("s_end", ic.s_end);
  ic.sample_interval = cfg.get_double("sample_interval", ic.sample_interval);
  ic.max_step = cfg.get_double("max_step", ic.max_step);
  return ic;
}

Family family_of(const Config& cfg) {
  const std::string f = cfg.require("family");
  if (f == "even") return Family::Even;
  if (f == "odd") return Family::Odd;
  throw std::invalid_argument("family must be 'even' or 'odd', got '" + f + "'");
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::ReachedEnd: return "reached_end";
    case Termination::EventFired: return "event_fired";
    case Termination::StepFailure: return "step_failure";
  }
  return "unknown";
}

json config_json(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.items()) j[k] = v;
  return j;
}

json manifest_base(const char* command, const Config& cfg) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = config_json(cfg);
  return j;
}

void maybe_write_json(const Config& cfg, const char* key, const json& j) {
  const std::string path = cfg.get_string(key, "");
  if (!path.empty()) write_text_file(path, j.dump(2) + "\n");
}

double parse_exponent(const Config& cfg) {
  std::string e = cfg.get_string("exponent", "");
  if (e == "1/3") return 1.0 / 3.0;
  if (e == "1/2") return 0.5;
  if (!e.empty()) return std::stod(e);
  const std::string f = cfg.get_string("family", "");
  if (f == "even") return 1.0 / 3.0;
  if (f == "odd") return 0.5;
  throw std::invalid_argument("fit needs 'exponent' (1/3 or 1/2) or 'family'");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

std::string library_version() { return kVersion; }

std::string run_evolve(const Config& cfg) {
  const int n = cfg.get_int("n", 129);
  const Grid grid = make_grid(n);
  const IntegratorConfig ic = integrator_config(cfg);

  FieldState st0;
  const std::string family = cfg.get_string("family", "even");
  if (family == "kink") {
    st0 = kink_state(grid);
  } else {
    const double b = cfg.get_double("b", std::numeric_limits<double>::quiet_NaN());
    if (!std::isfinite(b)) throw std::invalid_argument("evolve needs 'b'");
    st0 = family == "even" ? initial_data_even(b, grid)
                           : initial_data_odd(b, grid);
    if (family != "even" && family != "odd")
      throw std::invalid_argument("family must be even, odd, or kink");
  }

  const auto traj = evolve_field(st0, grid, ic);
  const auto records = diagnose_all(traj, grid);

  const std::string out_csv = cfg.get_string("out_csv", "");
  if (!out_csv.empty()) write_trajectory_csv(out_csv, records);
  const std::string out_field = cfg.get_string("out_field_csv", "");
  if (!out_field.empty()) write_field_csv(out_field, traj.samples.back(), grid);

  const auto quantum = final_energy_quantum(records);
  json j = manifest_base("evolve", cfg);
  j["n"] = n;
  j["termination"] = termination_name(traj.reason);
  j["samples"] = records.size();
  j["final"] = {{"s", records.back().s},
                {"bondi", records.back().bondi},
                {"quantum_settled", quantum.settled},
                {"quantum_N", quantum.N}};
  maybe_write_json(cfg, "out_json", j);

  std::ostringstream os;
  os << "evolve " << family << ": " << records.size() << " samples to s="
     << records.back().s << ", E=" << records.back().bondi << " ("
     << termination_name(traj.reason) << ")";
  return os.str();
}

std::string run_bisect(const Config& cfg) {
  const Family family = family_of(cfg);
  const int n = cfg.get_int("n", 129);
  const Grid grid = make_grid(n);
  IntegratorConfig ic = integrator_config(cfg);
  if (!cfg.has("s_end")) ic.s_end = 80.0;

  ClassifyConfig cc;
  cc.x_exp = cfg.get_double("x_exp", cc.x_exp);
  cc.energy_window = cfg.get_double("energy_window", cc.energy_window);
  cc.annihilation_margin = cfg.get_double("annihilation_margin", cc.annihilation_margin);
  cc.min_expansion_c1 = cfg.get_double("min_expansion_c1", cc.min_expansion_c1);

  const double blo = cfg.get_double("blo", std::numeric_limits<double>::quiet_NaN());
  const double bhi = cfg.get_double("bhi", std::numeric_limits<double>::quiet_NaN());
  if (!std::isfinite(blo) || !std::isfinite(bhi))
    throw std::invalid_argument("bisect needs 'blo' and 'bhi'");
  const double eps = cfg.get_double("eps", 1e-4);

  const std::string probe_dir = cfg.get_string("probe_dir", "");
  std::vector<std::string> probe_files;
  ProbeCallback on_probe;
  if (!probe_dir.empty()) {
    on_probe = [&](const Probe&, const std::vector<DiagnosticsRecord>& recs) {
      std::ostringstream name;
      name << probe_dir << "/probe_" << probe_files.size() << ".csv";
      write_trajectory_csv(name.str(), recs);
      probe_files.push_back(name.str());
    };
  }

  const auto res = bisect(family, blo, bhi, eps, grid, ic, cc, on_probe);

  json j = manifest_base("bisect", cfg);
  j["n"] = n;
  j["ok"] = res.ok;
  j["b_star"] = res.b_star;
  j["bracket_width"] = res.bracket_width;
  j["message"] = res.message;
  json probes = json::array();
  for (size_t i = 0; i < res.probe_log.size(); ++i) {
    const auto& p = res.probe_log[i];
    json pj = {{"b", p.b},
               {"classification", p.cls == Classification::Subcritical
                                      ? "subcritical"
                                      : p.cls == Classification::Supercritical
                                            ? "supercritical"
                                            : "undecided"},
               {"final_energy", p.final_energy},
               {"s_end", p.s_end}};
    if (i < probe_files.size()) pj["csv"] = probe_files[i];
    probes.push_back(pj);
  }
  j["probes"] = probes;
  maybe_write_json(cfg, "out_json", j);

  if (!res.ok) throw std::runtime_error("bisect failed: " + res.message);
  std::ostringstream os;
  os << "bisect: b_star=" << res.b_star << " +- " << res.bracket_width / 2.0
     << " in " << res.probe_log.size() << " probes";
  return os.str();
}

std::string run_fit(const Config& cfg) {
  const std::string input = cfg.require("input_csv");
  const double p = parse_exponent(cfg);
  const auto rows = read_trajectory_csv(input);

  // Reconstitute diagnostics records for the window selector.
  std::vector<DiagnosticsRecord> records;
  records.reserve(rows.size());
  for (const auto& r : rows) {
    DiagnosticsRecord rec;
    rec.s = r.s;
    rec.bondi = r.bondi;
    rec.b_plus = r.b_plus;
    if (std::isfinite(r.c1_x)) rec.positions.push_back(r.c1_x);
    rec.t_inferred = r.t_inferred;
    records.push_back(rec);
  }

  double tmin = cfg.get_double("window_tmin", std::numeric_limits<double>::quiet_NaN());
  double tmax = cfg.get_double("window_tmax", std::numeric_limits<double>::quiet_NaN());
  std::string window_mode = "explicit";
  if (!std::isfinite(tmin) || !std::isfinite(tmax)) {
    const double upper = cfg.get_double(
        "upper_quantum", std::abs(p - 0.5) < 1e-9 ? 12.0 : 8.0);
    const auto w = select_fit_window(records, p, upper);
    if (!w.ok) throw std::runtime_error("fit window selection failed: " + w.message);
    tmin = w.t_min;
    tmax = w.t_max;
    window_mode = "auto";
  }

  std::vector<double> t, c1;
  for (const auto& r : rows) {
    if (!std::isfinite(r.c1_x) || !std::isfinite(r.t_inferred)) continue;
    if (r.t_inferred < tmin || r.t_inferred > tmax) continue;
    if (!t.empty() && r.t_inferred <= t.back()) continue;
    t.push_back(r.t_inferred);
    c1.push_back(r.c1_x);
  }
  const FitResult fit = fit_log_law(t, c1, p);

  json j = manifest_base("fit", cfg);
  j["window_mode"] = window_mode;
  j["fit"] = {{"A", fit.A},
              {"t0", fit.t0},
              {"exponent", fit.exponent},
              {"window_tmin", fit.window_tmin},
              {"window_tmax", fit.window_tmax},
              {"rms_residual", fit.rms_residual},
              {"A_predicted", fit.A_predicted},
              {"rel_deviation", fit.rel_deviation},
              {"samples", t.size()}};
  maybe_write_json(cfg, "out_json", j);

  std::ostringstream os;
  os << "fit: A=" << fit.A << " (predicted " << fit.A_predicted << ", dev "
     << fit.rel_deviation * 100.0 << "%), t0=" << fit.t0 << ", rms="
     << fit.rms_residual;
  return os.str();
}

std::string run_ode_integrate(const Config& cfg) {
  const int N = cfg.get_int("N", 0);
  if (N < 2) throw std::invalid_argument("ode-integrate needs 'N' >= 2");
  const int J = N / 2;
  const double t0 = cfg.get_double("t0", 1.0);
  const double t1 = cfg.get_double("t1", 100.0);

  ChainState st0;
  st0.even_N = N % 2 == 0;
  st0.J = J;
  st0.t = t0;
  if (cfg.has("r0")) {
    const auto r = parse_list(cfg.require("r0"));
    const auto rd = parse_list(cfg.require("rdot0"));
    if (static_cast<int>(r.size()) != J || static_cast<int>(rd.size()) != J)
      throw std::invalid_argument("r0/rdot0 must list J = N/2 values");
    st0.r = Eigen::Map<const Eigen::VectorXd>(r.data(), J);
    st0.rdot = Eigen::Map<const Eigen::VectorXd>(rd.data(), J);
  } else if (J == 1) {
    st0 = exact_solution(N, t0);
  } else if (J == 2) {
    SeriesParams sp;
    sp.N = N;
    sp.c = cfg.get_double("c", 0.0);
    const auto sd = asymptotic_derivs(sp, t0);
    st0.r = sd.r;
    st0.rdot = sd.rdot;
  } else {
    throw std::invalid_argument("no default initial data for J > 2; pass r0/rdot0");
  }

  IntegratorConfig ic = integrator_config(cfg);
  ic.s_end = t1;
  if (!cfg.has("sample_interval")) ic.sample_interval = (t1 - t0) / 400.0;

  const auto traj = evolve_chain(st0, ic);
  const std::string out_csv = cfg.get_string("out_csv", "");
  if (!out_csv.empty()) write_chain_csv(out_csv, traj);

  json j = manifest_base("ode-integrate", cfg);
  j["termination"] = termination_name(traj.reason);
  j["samples"] = traj.samples.size();
  j["E_eff_initial"] = effective_energy(traj.samples.front());
  j["E_eff_final"] = effective_energy(traj.samples.back());
  j["t_final"] = traj.samples.back().t;
  maybe_write_json(cfg, "out_json", j);

  std::ostringstream os;
  os << "ode-integrate N=" << N << ": " << traj.samples.size()
     << " samples to t=" << traj.samples.back().t << ", E_eff="
     << effective_energy(traj.samples.back()) << " ("
     << termination_name(traj.reason) << ")";
  return os.str();
}

std::string run_ode_series(const Config& cfg) {
  const int N = cfg.get_int("N", 0);
  if (N != 4 && N != 5) throw std::invalid_argument("ode-series supports N = 4 or 5");
  SeriesParams sp;
  sp.N = N;
  sp.c = cfg.get_double("c", 0.0);
  sp.truncation_order = cfg.get_int("truncation_order", -1);
  const double t0 = cfg.get_double("t0", 10.0);
  const double t1 = cfg.get_double("t1", 1e4);
  const int num = cfg.get_int("num_samples", 201);
  if (!(t0 > 0.0) || !(t1 > t0) || num < 2)
    throw std::invalid_argument("ode-series needs 0 < t0 < t1 and num_samples >= 2");

  Trajectory<ChainState> traj;
  bool all_reliable = true;
  for (int i = 0; i < num; ++i) {
    const double t =
        t0 * std::pow(t1 / t0, static_cast<double>(i) / (num - 1));
    const auto ev = asymptotic_solution(sp, t);
    all_reliable = all_reliable && ev.reliable;
    traj.samples.push_back(ev.state);
  }
  const std::string out_csv = cfg.get_string("out_csv", "");
  if (!out_csv.empty()) write_chain_csv(out_csv, traj);

  json j = manifest_base("ode-series", cfg);
  j["samples"] = traj.samples.size();
  j["all_reliable"] = all_reliable;
  maybe_write_json(cfg, "out_json", j);

  std::ostringstream os;
  os << "ode-series N=" << N << ": " << num << " samples over t=[" << t0
     << "," << t1 << "]" << (all_reliable ? "" : " (tau < 3 in range)");
  return os.str();
}

std::string run_report(const Config& cfg) {
  std::vector<std::string> inputs;
  {
    std::istringstream ss(cfg.require("inputs"));
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty()) inputs.push_back(cell);
    }
  }
  if (inputs.empty()) throw std::invalid_argument("report needs 'inputs'");

  json combined = manifest_base("report", cfg);
  json rows = json::array();
  std::ostringstream table;
  table << "input                          quantity            value\n";
  for (const auto& path : inputs) {
    const json j = json::parse(read_text_file(path));
    json row = {{"path", path}, {"command", j.value("command", "?")}};
    const std::string cmd = j.value("command", "");
    std::ostringstream line;
    line.setf(std::ios::left);
    line.width(30);
    line << path;
    if (cmd == "fit") {
      row["A"] = j["fit"]["A"];
      row["A_predicted"] = j["fit"]["A_predicted"];
      row["rel_deviation"] = j["fit"]["rel_deviation"];
      table << line.str() << " A_fit/A_pred/dev    " << j["fit"]["A"] << " / "
            << j["fit"]["A_predicted"] << " / " << j["fit"]["rel_deviation"]
            << "\n";
    } else if (cmd == "bisect") {
      row["b_star"] = j["b_star"];
      row["bracket_width"] = j["bracket_width"];
      table << line.str() << " b_star              " << j["b_star"] << "\n";
    } else if (cmd == "evolve") {
      row["final"] = j["final"];
      table << line.str() << " E_final/quantum_N   " << j["final"]["bondi"]
            << " / " << j["final"]["quantum_N"] << "\n";
    } else {
      table << line.str() << " (" << cmd << ")\n";
    }
    rows.push_back(row);
  }
  combined["rows"] = rows;
  maybe_write_json(cfg, "out_json", combined);
  const std::string out_text = cfg.get_string("out_text", "");
  if (!out_text.empty()) write_text_file(out_text, table.str());
  std::ostringstream os;
  os << "report: " << inputs.size() << " inputs aggregated";
  return os.str();
}

}  // namespace wormhole
