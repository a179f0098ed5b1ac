#pragma once

#include <span>
#include <vector>

namespace lbs {

/// Linear-interpolation sample quantile (Hyndman–Fan type 7).
double quantile(std::span<const double> values, double p);

struct ParameterSummary {
  double min;
  double q1;
  double median;
  double mean;
  double q3;
  double max;
};

ParameterSummary summarize(std::span<const double> values);

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};

/// Equal-width bins spanning [min, max]; the last bin is closed.
Histogram histogram(std::span<const double> values, std::size_t bins = 30);

/// Sample lag-1 autocorrelation; 0 for constant series.
double lag1_autocorrelation(std::span<const double> series);

}  // namespace lbs
