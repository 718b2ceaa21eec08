// Command-line front end. Every flag mirrors a config-file key; flags win
// over the file because they are applied after it loads.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wormhole/wormhole_c.h"

namespace {

struct ConfigDeleter {
  void operator()(wm_config* c) const { wm_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<wm_config, ConfigDeleter>;

// Collects --key value pairs to apply to the wm_config after any --config
// file, so command-line values win.
class Options {
 public:
  explicit Options(CLI::App* cmd) : cmd_(cmd) {
    cmd->add_option("--config", config_file_, "key=value config file");
  }

  void add(const std::string& flag, const std::string& key,
           const std::string& help) {
    cmd_->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { pairs_.push_back({key, v}); },
        help);
  }

  ConfigPtr build() const {
    ConfigPtr cfg(wm_config_create());
    if (!cfg) throw std::runtime_error("out of memory");
    if (!config_file_.empty() &&
        wm_config_load_file(cfg.get(), config_file_.c_str()) != WM_OK) {
      throw std::runtime_error(wm_last_error());
    }
    for (const auto& [k, v] : pairs_) {
      wm_config_set(cfg.get(), k.c_str(), v.c_str());
    }
    return cfg;
  }

 private:
  CLI::App* cmd_;
  std::string config_file_;
  std::vector<std::pair<std::string, std::string>> pairs_;
};

void add_common(Options& o) {
  o.add("--n", "n", "grid size (Chebyshev-Lobatto points)");
  o.add("--rel-tol", "rel_tol", "relative error tolerance");
  o.add("--abs-tol", "abs_tol", "absolute error tolerance");
  o.add("--send", "s_end", "end time");
  o.add("--sample-interval", "sample_interval", "diagnostic cadence");
  o.add("--max-step", "max_step", "step-size cap");
}

int finish(wm_status st) {
  if (st != WM_OK) {
    std::fprintf(stderr, "error: %s\n", wm_last_error());
    return 1;
  }
  std::string buf(wm_last_summary(nullptr, 0) + 1, '\0');
  wm_last_summary(buf.data(), buf.size());
  std::printf("%s\n", buf.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant wave maps on a wormhole: evolution, thresholds, "
               "reduced models, and expansion-law fits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wm_version()));

  auto* evolve = app.add_subcommand("evolve", "one PDE run + diagnostics CSV");
  Options eo(evolve);
  add_common(eo);
  eo.add("--family", "family", "initial data family: even, odd, or kink");
  eo.add("--b", "b", "initial-data amplitude");
  eo.add("--out-csv", "out_csv", "trajectory CSV path");
  eo.add("--out-json", "out_json", "run manifest JSON path");
  eo.add("--out-field-csv", "out_field_csv", "final snapshot CSV path");

  auto* bisect = app.add_subcommand("bisect", "threshold amplitude search");
  Options bo(bisect);
  add_common(bo);
  bo.add("--family", "family", "initial data family: even or odd");
  bo.add("--blo", "blo", "subcritical bracket end");
  bo.add("--bhi", "bhi", "supercritical bracket end");
  bo.add("--eps", "eps", "bracket width target");
  bo.add("--x-exp", "x_exp", "early supercritical position cutoff");
  bo.add("--energy-window", "energy_window", "energy window for early exit");
  bo.add("--probe-dir", "probe_dir", "directory for per-probe CSVs");
  bo.add("--out-json", "out_json", "bisection result JSON path");

  auto* fit = app.add_subcommand("fit", "expansion-law fit of a trajectory CSV");
  Options fo(fit);
  fo.add("--input-csv", "input_csv", "trajectory CSV to fit");
  fo.add("--exponent", "exponent", "1/3 or 1/2 (default from --family)");
  fo.add("--family", "family", "even (1/3) or odd (1/2)");
  fo.add("--window-tmin", "window_tmin", "explicit window start (else auto)");
  fo.add("--window-tmax", "window_tmax", "explicit window end");
  fo.add("--out-json", "out_json", "fit result JSON path");

  auto* odei = app.add_subcommand("ode-integrate", "reduced chain-model run");
  Options io_(odei);
  add_common(io_);
  io_.add("--N", "N", "chain size (J = N/2 moving kinks)");
  io_.add("--t0", "t0", "start time");
  io_.add("--t1", "t1", "end time");
  io_.add("--c", "c", "series time-translation parameter (J=2 start)");
  io_.add("--r0", "r0", "comma-separated initial positions");
  io_.add("--rdot0", "rdot0", "comma-separated initial velocities");
  io_.add("--out-csv", "out_csv", "chain trajectory CSV path");
  io_.add("--out-json", "out_json", "summary JSON path");

  auto* odes = app.add_subcommand("ode-series", "asymptotic series table (N=4,5)");
  Options so(odes);
  so.add("--N", "N", "chain size, 4 or 5");
  so.add("--c", "c", "time-translation parameter");
  so.add("--t0", "t0", "start time");
  so.add("--t1", "t1", "end time");
  so.add("--num-samples", "num_samples", "number of log-spaced samples");
  so.add("--out-csv", "out_csv", "series CSV path");
  so.add("--out-json", "out_json", "summary JSON path");

  auto* report = app.add_subcommand("report", "aggregate JSON summaries");
  Options ro(report);
  ro.add("--inputs", "inputs", "comma-separated manifest JSON paths");
  ro.add("--out-json", "out_json", "combined JSON path");
  ro.add("--out-text", "out_text", "comparison table text path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*evolve) return finish(wm_run_evolve(eo.build().get()));
    if (*bisect) return finish(wm_run_bisect(bo.build().get()));
    if (*fit) return finish(wm_run_fit(fo.build().get()));
    if (*odei) return finish(wm_run_ode_integrate(io_.build().get()));
    if (*odes) return finish(wm_run_ode_series(so.build().get()));
    if (*report) return finish(wm_run_report(ro.build().get()));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
