// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library's numerics.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// ∫_0^∞ f via the substitution x = t / (1 - t), Simpson on the open t-interval.
inline double half_line(const std::function<double(double)>& f, int panels = 200000) {
  auto g = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double x = t / (1.0 - t);
    const double v = f(x) / ((1.0 - t) * (1.0 - t));
    return std::isfinite(v) ? v : 0.0;
  };
  return simpson(g, 0.0, 1.0, panels);
}

// Midpoint Riemann sum of exp(log_f) over (0, 1), returned in log space.
inline double log_riemann_unit(const std::function<double(double)>& log_f, int points) {
  std::vector<double> v(points);
  for (int k = 0; k < points; ++k) v[k] = log_f((k + 0.5) / points);
  const double m = *std::max_element(v.begin(), v.end());
  long double s = 0.0L;
  for (double x : v) s += std::exp(static_cast<long double>(x - m));
  return m + std::log(static_cast<double>(s)) - std::log(static_cast<double>(points));
}

// Asymptotic Kolmogorov distribution tail P(K > t).
inline double kolmogorov_tail(double t) {
  if (t < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

// One-sample Kolmogorov–Smirnov p-value against `cdf` (Stephens' small-sample correction).
inline double ks_p_value(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  const double rn = std::sqrt(n);
  return kolmogorov_tail((rn + 0.12 + 0.11 / rn) * d);
}

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle
