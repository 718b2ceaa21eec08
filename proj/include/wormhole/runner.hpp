#pragma once

#include <string>

#include "wormhole/config.hpp"

namespace wormhole {

/// High-level entry points behind the C API and CLI. Each reads its
/// parameters from the config, writes the requested CSV/JSON artifacts,
/// and returns a one-line human summary. All throw on error.
///
/// Common keys: n, rel_tol, abs_tol, s_end, sample_interval, max_step.
std::string run_evolve(const Config& cfg);        // family,b,out_csv,out_json,out_field_csv
std::string run_bisect(const Config& cfg);        // family,blo,bhi,eps,out_json,probe_dir,x_exp,...
std::string run_fit(const Config& cfg);           // input_csv,exponent,family,out_json,window_tmin,window_tmax
std::string run_ode_integrate(const Config& cfg); // N,c,t0,t1,r0,rdot0,out_csv,out_json
std::string run_ode_series(const Config& cfg);    // N,c,t0,t1,num_samples,out_csv
std::string run_report(const Config& cfg);        // inputs (comma-separated JSON paths),out_json,out_text

std::string library_version();

}  // namespace wormhole
