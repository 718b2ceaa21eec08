#include "wormhole/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wormhole {

double predicted_rate_constant(double exponent) {
  const double pi = std::acos(-1.0);
  if (std::abs(exponent - 1.0 / 3.0) < 1e-9) return 12.0 * std::sqrt(2.0 / pi);
  if (std::abs(exponent - 0.5) < 1e-9) return 16.0 / std::sqrt(pi);
  return 0.0;
}

namespace {

// Residual sum of squares at fixed t0, with q = p*log(A) eliminated.
double rss_at(const std::vector<double>& t, const std::vector<double>& c1,
              double p, double t0, double* q_out = nullptr) {
  const size_t m = t.size();
  double q = 0.0;
  for (size_t i = 0; i < m; ++i) q += c1[i] - p * std::log(t[i] - t0);
  q /= static_cast<double>(m);
  double rss = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double r = c1[i] - p * std::log(t[i] - t0) - q;
    rss += r * r;
  }
  if (q_out) *q_out = q;
  return rss;
}

}  // namespace

FitResult fit_log_law(const std::vector<double>& t,
                      const std::vector<double>& c1, double exponent) {
  const size_t m = t.size();
  if (m < 10 || c1.size() != m)
    throw std::invalid_argument("fit_log_law: need >= 10 samples");
  for (size_t i = 1; i < m; ++i)
    if (!(t[i] > t[i - 1]))
      throw std::invalid_argument("fit_log_law: t must be strictly increasing");
  const double p = exponent;
  if (!(p > 0.0)) throw std::invalid_argument("fit_log_law: exponent must be > 0");
  const auto [cmin, cmax] = std::minmax_element(c1.begin(), c1.end());
  if (*cmax - *cmin < 1e-12)
    throw std::runtime_error("fit_log_law: degenerate c1 data");

  const double t_min = t.front();
  double a = -10.0 * std::max(1.0, std::abs(t_min));
  double b = t_min - 1e-9 * std::max(1.0, std::abs(t_min));
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = rss_at(t, c1, p, x1), f2 = rss_at(t, c1, p, x2);
  for (int it = 0; it < 300 && (b - a) > 1e-13 * std::max(1.0, std::abs(t_min));
       ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = rss_at(t, c1, p, x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = rss_at(t, c1, p, x2);
    }
  }
  FitResult res;
  res.t0 = 0.5 * (a + b);
  double q = 0.0;
  const double rss = rss_at(t, c1, p, res.t0, &q);
  res.A = std::exp(q / p);
  res.exponent = p;
  res.window_tmin = t.front();
  res.window_tmax = t.back();
  res.rms_residual = std::sqrt(rss / static_cast<double>(m));
  res.A_predicted = predicted_rate_constant(p);
  res.rel_deviation = res.A_predicted > 0.0
                          ? std::abs(res.A - res.A_predicted) / res.A_predicted
                          : std::numeric_limits<double>::quiet_NaN();
  return res;
}

WindowResult select_fit_window(const std::vector<DiagnosticsRecord>& records,
                               double exponent, double upper_quantum) {
  WindowResult w;
  const size_t m = records.size();
  if (m < 30) {
    w.message = "too few records";
    return w;
  }
  std::vector<char> good(m, 0);
  // local slope d c1 / d log t by centered differences
  auto c1_of = [&](size_t i) {
    return records[i].positions.empty()
               ? std::numeric_limits<double>::quiet_NaN()
               : records[i].positions.back();
  };
  for (size_t i = 1; i + 1 < m; ++i) {
    const double c1 = c1_of(i);
    if (!std::isfinite(c1) || c1 <= 2.0) continue;
    if (std::abs(records[i].bondi - upper_quantum) >= 0.5) continue;
    const double tm = records[i - 1].t_inferred, tp = records[i + 1].t_inferred;
    const double cm = c1_of(i - 1), cp = c1_of(i + 1);
    if (!(std::isfinite(tm) && std::isfinite(tp) && tp > tm) ||
        !std::isfinite(cm) || !std::isfinite(cp))
      continue;
    const double slope = (cp - cm) / (std::log(tp) - std::log(tm));
    if (std::abs(slope - exponent) > 0.2 * exponent) continue;
    good[i] = 1;
  }
  size_t best_len = 0, best_first = 0;
  size_t i = 0;
  while (i < m) {
    if (!good[i]) { ++i; continue; }
    size_t j = i;
    while (j < m && good[j]) ++j;
    if (j - i > best_len) { best_len = j - i; best_first = i; }
    i = j;
  }
  if (best_len < 10) {
    w.message = "no usable expansion window";
    return w;
  }
  w.first = best_first;
  w.last = best_first + best_len - 1;
  w.t_min = records[w.first].t_inferred;
  w.t_max = records[w.last].t_inferred;
  if (!(w.t_max >= 3.0 * w.t_min)) {
    w.message = "expansion window too short (needs a factor 3 in t)";
    return w;
  }
  w.ok = true;
  w.message = "ok";
  return w;
}

}  // namespace wormhole
