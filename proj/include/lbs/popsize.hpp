#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lbs/random.hpp"

namespace lbs {

/// Horvitz–Thompson size estimate under inclusion probability x / W:
/// W Σ 1/x_i, unrounded.
double ht_population_estimate(std::span<const double> widths, double baseline_length);

/// n_hat * n_i / Σ n_j for each stratum.
std::vector<double> proportional_allocation(double n_hat, std::span<const std::size_t> stratum_sizes);

/// Inclusion rate mu0 = n_i / N_hat_i; all strata must agree within 1e-9.
double estimate_mu0(std::span<const std::size_t> stratum_sizes, std::span<const double> allocated);

/// Round half up, used only where numbers are displayed or reported.
std::int64_t round_half_up(double x);

// Negative-binomial posterior for each stratum size N_i given n_i and mu0.
class SizePrior {
 public:
  SizePrior(std::vector<std::size_t> sample_sizes, double mu0);

  // Test mode: mu0 = 1 collapses every N_i onto n_i.
  static SizePrior degenerate(std::vector<std::size_t> sample_sizes);

  double mu0() const noexcept { return mu0_; }
  const std::vector<std::size_t>& sample_sizes() const noexcept { return sizes_; }
  std::size_t stratum_count() const noexcept { return sizes_.size(); }

  double mean(std::size_t stratum) const;
  double variance(std::size_t stratum) const;

 private:
  SizePrior(std::vector<std::size_t> sample_sizes, double mu0, bool allow_one);

  std::vector<std::size_t> sizes_;
  double mu0_;
};

/// One draw of N_i: n_i plus the failures before the n_i-th success.
std::uint64_t sample_population_size(const SizePrior& prior, std::size_t stratum_index, Rng& rng);

/// Failures before the `successes`-th success with success probability p.
std::uint64_t negative_binomial_failures(std::uint64_t successes, double p, Rng& rng);

}  // namespace lbs
