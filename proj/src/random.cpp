#include "lbs/random.hpp"

#include <cmath>
#include <limits>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng Rng::derive(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  // Marsaglia polar method; the second variate is discarded.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double Rng::log_gamma_variate(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("gamma variate: shape must be positive");
  }
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
    return log_gamma_variate(shape + 1.0) + std::log(uniform()) / shape;
  }
  // Marsaglia–Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d) + std::log(v);
    }
  }
}

double Rng::gamma(double shape) { return std::exp(log_gamma_variate(shape)); }

std::uint64_t Rng::geometric(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("geometric: p must lie in (0, 1]");
  }
  if (p == 1.0) {
    return 0;
  }
  return static_cast<std::uint64_t>(std::floor(std::log(uniform()) / std::log1p(-p)));
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    // Multiplication method.
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Hörmann's PTRS transformed rejection.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - log_gamma_fn(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

bool Rng::bernoulli(double p) { return uniform() < p; }

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace lbs
