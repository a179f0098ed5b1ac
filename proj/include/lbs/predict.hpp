#pragma once

#include <cstdint>
#include <vector>

#include "lbs/dataset.hpp"
#include "lbs/popsize.hpp"
#include "lbs/random.hpp"
#include "lbs/sampler.hpp"

namespace lbs {

// One candidate (or resampled) finite-population mean with its SIR log weight.
struct PopulationMeanDraw {
  double mean;
  double log_weight;
  std::vector<std::uint64_t> sizes;  // N_i
  double sample_fraction;            // n / Σ N_i
  std::size_t source_draw;           // index into the posterior draws
};

struct ComplementDraw {
  std::vector<std::vector<double>> widths;  // N_i - n_i per stratum
  double log_weight;
};

/// Population mean of stratum i under draw parameters: beta_i Γ(α+1/γ)/Γ(α).
std::vector<double> stratum_population_means(const PosteriorDraw& draw);

/// Σ_i [ Σ_j ln(1 - x_ij / W) - (N_i - n_i) ln(1 - mu_i / W) ], compensated.
/// Throws DomainError when some mu_i >= W.
double complement_log_weight(const std::vector<std::vector<double>>& widths,
                             std::span<const double> stratum_means, double baseline_length);

/// Proposal draws of every nonsampled width from the unweighted GG at the
/// draw's (alpha, beta_i, gamma), redrawing any value >= W, plus the log
/// importance ratio of the sample-complement density against that proposal.
ComplementDraw draw_complement(const PosteriorDraw& draw, std::span<const std::uint64_t> sizes,
                               const TransectData& data, Rng& rng);

struct PredictOptions {
  double resample_fraction = 0.1;
  bool with_replacement = false;
  std::uint64_t seed = 1;
};

struct PredictionResult {
  std::vector<PopulationMeanDraw> candidates;
  std::vector<PopulationMeanDraw> resampled;
};

/// Indices of `count` items chosen with probability proportional to exp(log_weights).
std::vector<std::size_t> sir_resample(std::span<const double> log_weights, std::size_t count,
                                      bool with_replacement, Rng& rng);

/// For each posterior draw: N_i from its negative binomial, complement widths,
/// pooled mean f x̄_s + (1 - f) X̄_ns and its log weight; then SIR-resample
/// ceil(fraction * M) candidates.
PredictionResult population_mean_draws(const std::vector<PosteriorDraw>& posterior,
                                       const TransectData& data, const SizePrior& prior,
                                       const PredictOptions& options);

}  // namespace lbs
