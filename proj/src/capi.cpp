#include "wormhole/wormhole_c.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "wormhole/config.hpp"
#include "wormhole/runner.hpp"

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_summary;
thread_local std::string g_version;

wm_status run_guarded(const wm_config* cfg,
                      std::string (*fn)(const wormhole::Config&));

}  // namespace

struct wm_config {
  wormhole::Config impl;
};

extern "C" {

wm_config* wm_config_create(void) {
  try {
    return new wm_config();
  } catch (...) {
    return nullptr;
  }
}

void wm_config_destroy(wm_config* cfg) { delete cfg; }

wm_status wm_config_load_file(wm_config* cfg, const char* path) {
  if (!cfg || !path) {
    g_last_error = "null argument";
    return WM_ERR_INVALID_ARGUMENT;
  }
  try {
    cfg->impl.load_file(path);
    return WM_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WM_ERR_IO;
  }
}

wm_status wm_config_set(wm_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value || !*key) {
    g_last_error = "null or empty argument";
    return WM_ERR_INVALID_ARGUMENT;
  }
  cfg->impl.set(key, value);
  return WM_OK;
}

const char* wm_config_get(const wm_config* cfg, const char* key) {
  if (!cfg || !key || !cfg->impl.has(key)) return nullptr;
  return cfg->impl.items().at(key).c_str();
}

wm_status wm_run_evolve(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_evolve);
}
wm_status wm_run_bisect(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_bisect);
}
wm_status wm_run_fit(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_fit);
}
wm_status wm_run_ode_integrate(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_ode_integrate);
}
wm_status wm_run_ode_series(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_ode_series);
}
wm_status wm_run_report(const wm_config* cfg) {
  return run_guarded(cfg, wormhole::run_report);
}

size_t wm_last_summary(char* buf, size_t buflen) {
  if (buf && buflen > 0) {
    const size_t n = g_last_summary.size() < buflen - 1 ? g_last_summary.size()
                                                        : buflen - 1;
    std::memcpy(buf, g_last_summary.data(), n);
    buf[n] = '\0';
  }
  return g_last_summary.size();
}

const char* wm_last_error(void) { return g_last_error.c_str(); }

const char* wm_version(void) {
  g_version = wormhole::library_version();
  return g_version.c_str();
}

}  // extern "C"

namespace {

wm_status run_guarded(const wm_config* cfg,
                      std::string (*fn)(const wormhole::Config&)) {
  if (!cfg) {
    g_last_error = "null config";
    return WM_ERR_INVALID_ARGUMENT;
  }
  try {
    g_last_summary = fn(cfg->impl);
    return WM_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return WM_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    const std::string msg = e.what();
    if (msg.find("cannot open") != std::string::npos)
      return WM_ERR_IO;
    return WM_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return WM_ERR_RUNTIME;
  }
}

}  // namespace
