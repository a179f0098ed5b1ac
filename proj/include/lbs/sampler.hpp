#pragma once

#include <cstdint>
#include <vector>

#include "lbs/dataset.hpp"
#include "lbs/gengamma.hpp"
#include "lbs/posterior.hpp"
#include "lbs/random.hpp"

namespace lbs {

// One posterior sample of (alpha, gamma, phi_i, beta_i = phi_i^(-1/gamma)).
struct PosteriorDraw {
  static PosteriorDraw from_phis(double alpha, double gamma_shape, std::vector<double> phis);
  static PosteriorDraw from_betas(double alpha, double gamma_shape, std::vector<double> betas);

  GenGammaParams stratum_params(std::size_t stratum) const {
    return {alpha, betas.at(stratum), gamma_shape};
  }

  double alpha;
  double gamma_shape;
  std::vector<double> phis;
  std::vector<double> betas;
};

struct SamplerConfig {
  std::size_t draws = 1000;        // M
  std::size_t grid_points = 400;   // G, cells per unit interval
  PriorMode prior = PriorMode::f22();
  std::uint64_t seed = 1;
  // Gibbs only.
  std::size_t burn_in = 200;
  std::size_t thin = 1;
  double init_alpha = 1.0;
  double init_gamma = 1.0;

  void validate() const;
};

/// ln of the 20-point Gauss–Legendre approximation to ∫_0^1 π(alpha', gamma') dalpha'.
double marginal_gamma_log_density(double gamma_u, const TransectData& data, ModelVariant variant,
                                  const PriorMode& prior = PriorMode::f22());

/// Unnormalized ln π(alpha' | gamma'); shares its kernel with transformed_log_density.
double conditional_alpha_log_density(double alpha_u, double gamma_u, const TransectData& data,
                                     ModelVariant variant,
                                     const PriorMode& prior = PriorMode::f22());

// Inverse-CDF sampler over G equal cells of (0, 1) with uniform jitter inside
// the chosen cell. Built from log masses at the cell midpoints.
class GridDistribution {
 public:
  explicit GridDistribution(std::vector<double> log_mass);

  double sample(Rng& rng) const;
  std::size_t cells() const noexcept { return cumulative_.size(); }
  // Normalized probability of cell k.
  double probability(std::size_t k) const;

  static double midpoint(std::size_t k, std::size_t cells) {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(cells);
  }

 private:
  std::vector<double> cumulative_;
};

// Marginal of gamma' tabulated once on the grid midpoints.
class GammaMarginalTable {
 public:
  GammaMarginalTable(const TransectData& data, ModelVariant variant, const SamplerConfig& config);

  const GridDistribution& distribution() const noexcept { return dist_; }

 private:
  GridDistribution dist_;
};

/// Grid distribution of alpha' at a fixed gamma.
GridDistribution conditional_alpha_grid(double gamma_shape, const TransectData& data,
                                        ModelVariant variant, const SamplerConfig& config);

/// Non-Markovian sampler: gamma' from its quadrature marginal, alpha' | gamma'
/// from its grid conditional, then each phi_i from its Gamma conditional.
/// Draw h uses stream Rng::derive(seed, h), so the result is a pure function of
/// (data, variant, config).
std::vector<PosteriorDraw> draw_posterior(const TransectData& data, ModelVariant variant,
                                          const SamplerConfig& config);

struct GibbsDiagnostics {
  double alpha_lag1;
  double gamma_lag1;
  std::vector<double> beta_lag1;
};

struct GibbsResult {
  std::vector<PosteriorDraw> draws;
  GibbsDiagnostics diagnostics;
};

/// Markov chain over phi | (alpha, gamma), alpha' | (gamma, phi), gamma' | (alpha, phi),
/// using the same grid conditionals. Kept for comparison with draw_posterior.
GibbsResult gibbs_draw_posterior(const TransectData& data, ModelVariant variant,
                                 const SamplerConfig& config);

GibbsDiagnostics autocorrelations(const std::vector<PosteriorDraw>& draws);

}  // namespace lbs
