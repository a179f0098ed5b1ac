#include "lbs/popsize.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {

double ht_population_estimate(std::span<const double> widths, double baseline_length) {
  if (!(baseline_length > 0.0) || !std::isfinite(baseline_length)) {
    throw DomainError("baseline length must be positive");
  }
  if (widths.empty()) {
    throw DomainError("Horvitz–Thompson estimate needs at least one width");
  }
  CompensatedSum inv;
  for (double x : widths) {
    if (!(x > 0.0) || !(x < baseline_length)) {
      throw DomainError("width " + std::to_string(x) + " outside (0, W)");
    }
    inv.add(1.0 / x);
  }
  return baseline_length * inv.value();
}

std::vector<double> proportional_allocation(double n_hat, std::span<const std::size_t> stratum_sizes) {
  const auto total = std::accumulate(stratum_sizes.begin(), stratum_sizes.end(), std::size_t{0});
  if (total == 0) {
    throw DomainError("proportional allocation needs a positive total sample size");
  }
  std::vector<double> out;
  out.reserve(stratum_sizes.size());
  for (auto n : stratum_sizes) {
    out.push_back(n_hat * static_cast<double>(n) / static_cast<double>(total));
  }
  return out;
}

double estimate_mu0(std::span<const std::size_t> stratum_sizes, std::span<const double> allocated) {
  if (stratum_sizes.empty() || stratum_sizes.size() != allocated.size()) {
    throw ValidationError("estimate_mu0: sizes and allocations must be non-empty and aligned");
  }
  for (std::size_t i = 0; i < stratum_sizes.size(); ++i) {
    if (!(allocated[i] >= static_cast<double>(stratum_sizes[i]))) {
      throw DomainError("estimate_mu0: allocated size below the sample size");
    }
  }
  const double mu0 = static_cast<double>(stratum_sizes[0]) / allocated[0];
  for (std::size_t i = 1; i < stratum_sizes.size(); ++i) {
    const double r = static_cast<double>(stratum_sizes[i]) / allocated[i];
    if (std::abs(r - mu0) > 1e-9) {
      throw ValidationError("estimate_mu0: stratum inclusion rates disagree");
    }
  }
  if (!(mu0 < 1.0)) {
    throw DomainError("estimate_mu0: census (mu0 = 1) is degenerate");
  }
  return mu0;
}

std::int64_t round_half_up(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

SizePrior::SizePrior(std::vector<std::size_t> sample_sizes, double mu0)
    : SizePrior(std::move(sample_sizes), mu0, false) {}

SizePrior::SizePrior(std::vector<std::size_t> sample_sizes, double mu0, bool allow_one)
    : sizes_(std::move(sample_sizes)), mu0_(mu0) {
  if (sizes_.empty()) {
    throw ValidationError("size prior needs at least one stratum");
  }
  for (auto n : sizes_) {
    if (n == 0) throw ValidationError("size prior: every stratum needs n_i >= 1");
  }
  const bool in_range = allow_one ? (mu0 > 0.0 && mu0 <= 1.0) : (mu0 > 0.0 && mu0 < 1.0);
  if (!in_range) {
    throw ValidationError("size prior: mu0 must lie in (0, 1)");
  }
}

SizePrior SizePrior::degenerate(std::vector<std::size_t> sample_sizes) {
  return SizePrior(std::move(sample_sizes), 1.0, true);
}

double SizePrior::mean(std::size_t stratum) const {
  return static_cast<double>(sizes_.at(stratum)) / mu0_;
}

double SizePrior::variance(std::size_t stratum) const {
  return static_cast<double>(sizes_.at(stratum)) * (1.0 - mu0_) / (mu0_ * mu0_);
}

std::uint64_t negative_binomial_failures(std::uint64_t successes, double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("negative binomial: p must lie in (0, 1]");
  }
  if (p == 1.0 || successes == 0) {
    return 0;
  }
  if (successes <= 64) {
    std::uint64_t failures = 0;
    for (std::uint64_t k = 0; k < successes; ++k) failures += rng.geometric(p);
    return failures;
  }
  // Gamma–Poisson mixture: λ ~ Gamma(r, scale (1-p)/p).
  const double lambda = rng.gamma(static_cast<double>(successes)) * (1.0 - p) / p;
  return rng.poisson(lambda);
}

std::uint64_t sample_population_size(const SizePrior& prior, std::size_t stratum_index, Rng& rng) {
  const auto n = prior.sample_sizes().at(stratum_index);
  return n + negative_binomial_failures(n, prior.mu0(), rng);
}

}  // namespace lbs
