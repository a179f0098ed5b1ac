#include "lbs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lbs/error.hpp"

namespace lbs {
namespace {

void require_positive(double z, const char* name) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(name) + ": argument must be positive and finite");
  }
}

// Stirling series for ln Γ(z), z >= 10. Coefficients B_{2k} / (2k(2k-1)).
double log_gamma_asymptotic(double z) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 +
                                     inv2 * (1.0 / 1188.0 +
                                             inv2 * (-691.0 / 360360.0 +
                                                     inv2 * (1.0 / 156.0)))))));
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

}  // namespace

double log_gamma_fn(double z) {
  require_positive(z, "log_gamma_fn");
  if (z >= 10.0) {
    return log_gamma_asymptotic(z);
  }
  // Lift z to >= 10 and divide out the product z (z+1) ... (z+k-1).
  double shift = 1.0;
  double x = z;
  while (x < 10.0) {
    shift *= x;
    x += 1.0;
  }
  return log_gamma_asymptotic(x) - std::log(shift);
}

double digamma_fn(double z) {
  require_positive(z, "digamma_fn");
  double result = 0.0;
  double x = z;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli tail: 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12.
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 -
                                                      inv2 * (1.0 / 12.0)))))));
  return result + std::log(x) - 0.5 * inv - tail;
}

double trigamma_fn(double z) {
  require_positive(z, "trigamma_fn");
  double result = 0.0;
  double x = z;
  while (x < 6.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // 1/x + 1/(2x^2) + Σ B_{2k} / x^{2k+1}
  const double tail =
      inv * inv2 *
      (1.0 / 6.0 -
       inv2 * (1.0 / 30.0 -
               inv2 * (1.0 / 42.0 -
                       inv2 * (1.0 / 30.0 -
                               inv2 * (5.0 / 66.0 -
                                       inv2 * (691.0 / 2730.0 -
                                               inv2 * (7.0 / 6.0)))))));
  return result + inv + 0.5 * inv2 + tail;
}

double regularized_gamma_q(double a, double x) {
  require_positive(a, "regularized_gamma_q");
  if (!(x >= 0.0)) throw DomainError("regularized_gamma_q: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefix = a * std::log(x) - x - log_gamma_fn(a);
  constexpr double kEps = 1e-16;
  if (x < a + 1.0) {
    // Series for P(a, x).
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Lentz continued fraction for Q(a, x).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 10000; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefix) * h;
}

const QuadratureRule& gauss_legendre_20() {
  static const QuadratureRule rule{
      {-0.99312859918509492479, -0.96397192727791379127, -0.91223442825132590587,
       -0.83911697182221882339, -0.74633190646015079261, -0.63605368072651502545,
       -0.51086700195082709800, -0.37370608871541956067, -0.22778585114164507808,
       -0.076526521133497333755, 0.076526521133497333755, 0.22778585114164507808,
       0.37370608871541956067, 0.51086700195082709800, 0.63605368072651502545,
       0.74633190646015079261, 0.83911697182221882339, 0.91223442825132590587,
       0.96397192727791379127, 0.99312859918509492479},
      {0.017614007139152118312, 0.040601429800386941331, 0.062672048334109063570,
       0.083276741576704748725, 0.10193011981724043504, 0.11819453196151841731,
       0.13168863844917662690, 0.14209610931838205133, 0.14917298647260374679,
       0.15275338713072585070, 0.15275338713072585070, 0.14917298647260374679,
       0.14209610931838205133, 0.13168863844917662690, 0.11819453196151841731,
       0.10193011981724043504, 0.083276741576704748725, 0.062672048334109063570,
       0.040601429800386941331, 0.017614007139152118312}};
  return rule;
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("log_sum_exp: empty sequence");
  }
  const double max_v = *std::max_element(values.begin(), values.end());
  if (max_v == -std::numeric_limits<double>::infinity()) {
    return max_v;
  }
  if (!std::isfinite(max_v)) {
    return max_v;  // +inf or NaN propagates
  }
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - max_v);
  }
  return max_v + std::log(sum);
}

void CompensatedSum::add(double x) noexcept {
  if (!std::isfinite(x) || !std::isfinite(sum_)) {
    sum_ += x;
    comp_ = 0.0;
    return;
  }
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace lbs
