#include "lbs/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lbs/numerics.hpp"

namespace lbs {

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ParameterSummary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summary of an empty sample");
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo,
          quantile(values, 0.25),
          quantile(values, 0.5),
          sum.value() / static_cast<double>(values.size()),
          quantile(values, 0.75),
          *hi};
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty() || bins == 0) throw std::invalid_argument("histogram needs data and bins");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  double hi = *hi_it;
  if (hi == lo) hi = lo + 1.0;
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) {
    h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  }
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    h.counts[std::min(k, bins - 1)] += 1;
  }
  return h;
}

double lag1_autocorrelation(std::span<const double> series) {
  if (series.size() < 2) return 0.0;
  CompensatedSum sum;
  for (double v : series) sum.add(v);
  const double mean = sum.value() / static_cast<double>(series.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double d = series[i] - mean;
    den += d * d;
    if (i > 0) num += d * (series[i - 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace lbs
