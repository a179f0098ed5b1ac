#include "lbs/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"
#include "lbs/summary.hpp"

namespace lbs {

PosteriorDraw PosteriorDraw::from_phis(double alpha, double gamma_shape, std::vector<double> phis) {
  PosteriorDraw d{alpha, gamma_shape, std::move(phis), {}};
  d.betas.reserve(d.phis.size());
  for (double phi : d.phis) d.betas.push_back(std::exp(-std::log(phi) / gamma_shape));
  return d;
}

PosteriorDraw PosteriorDraw::from_betas(double alpha, double gamma_shape, std::vector<double> betas) {
  PosteriorDraw d{alpha, gamma_shape, {}, std::move(betas)};
  d.phis.reserve(d.betas.size());
  for (double b : d.betas) d.phis.push_back(std::exp(-gamma_shape * std::log(b)));
  return d;
}

void SamplerConfig::validate() const {
  if (draws < 1) throw ValidationError("sampler: draw count M must be >= 1");
  if (grid_points < 50) throw ValidationError("sampler: grid size G must be >= 50");
  if (thin < 1) throw ValidationError("sampler: thinning interval must be >= 1");
  if (!(init_alpha > 0.0) || !(init_gamma > 0.0)) {
    throw ValidationError("sampler: Gibbs start values must be positive");
  }
}

namespace {

// ln π(alpha', gamma') from summaries already evaluated at gamma.
double transformed_from_summaries(double alpha, double gamma,
                                  std::span<const StratumSummary> summaries,
                                  ModelVariant variant, const PriorMode& prior) {
  const ShapeParams s(alpha, gamma);
  return log_integrated_posterior(s, summaries, variant, prior) + 2.0 * std::log1p(alpha) +
         2.0 * std::log1p(gamma);
}

double to_natural(double u) { return u / (1.0 - u); }

void check_open_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(std::string(what) + " must lie strictly inside (0, 1)");
  }
}

}  // namespace

double marginal_gamma_log_density(double gamma_u, const TransectData& data, ModelVariant variant,
                                  const PriorMode& prior) {
  check_open_unit(gamma_u, "gamma'");
  const double gamma = to_natural(gamma_u);
  const auto summaries = stratum_summaries(data, gamma);
  return log_integrate_unit_interval([&](double alpha_u) {
    return transformed_from_summaries(to_natural(alpha_u), gamma, summaries, variant, prior);
  });
}

double conditional_alpha_log_density(double alpha_u, double gamma_u, const TransectData& data,
                                     ModelVariant variant, const PriorMode& prior) {
  check_open_unit(alpha_u, "alpha'");
  check_open_unit(gamma_u, "gamma'");
  return transformed_log_density({alpha_u, gamma_u}, data, variant, prior);
}

GridDistribution::GridDistribution(std::vector<double> log_mass) {
  if (log_mass.empty()) throw NumericalError("grid distribution needs at least one cell");
  const double max_v = *std::max_element(log_mass.begin(), log_mass.end());
  if (!std::isfinite(max_v)) {
    throw NumericalError("grid density has no finite mass (all cells underflow or are NaN)");
  }
  cumulative_.resize(log_mass.size());
  double running = 0.0;
  for (std::size_t k = 0; k < log_mass.size(); ++k) {
    const double v = log_mass[k];
    if (std::isnan(v)) throw NumericalError("grid density evaluated to NaN");
    running += std::exp(v - max_v);
    cumulative_[k] = running;
  }
}

double GridDistribution::sample(Rng& rng) const {
  const double target = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  const auto k = static_cast<std::size_t>(it - cumulative_.begin());
  return (static_cast<double>(k) + rng.uniform()) / static_cast<double>(cells());
}

double GridDistribution::probability(std::size_t k) const {
  const double prev = k == 0 ? 0.0 : cumulative_.at(k - 1);
  return (cumulative_.at(k) - prev) / cumulative_.back();
}

GammaMarginalTable::GammaMarginalTable(const TransectData& data, ModelVariant variant,
                                       const SamplerConfig& config)
    : dist_([&] {
        std::vector<double> log_mass(config.grid_points);
        for (std::size_t k = 0; k < config.grid_points; ++k) {
          log_mass[k] = marginal_gamma_log_density(
              GridDistribution::midpoint(k, config.grid_points), data, variant, config.prior);
        }
        return GridDistribution(std::move(log_mass));
      }()) {}

GridDistribution conditional_alpha_grid(double gamma_shape, const TransectData& data,
                                        ModelVariant variant, const SamplerConfig& config) {
  const auto summaries = stratum_summaries(data, gamma_shape);
  std::vector<double> log_mass(config.grid_points);
  for (std::size_t j = 0; j < config.grid_points; ++j) {
    const double alpha = to_natural(GridDistribution::midpoint(j, config.grid_points));
    log_mass[j] = transformed_from_summaries(alpha, gamma_shape, summaries, variant, config.prior);
  }
  return GridDistribution(std::move(log_mass));
}

namespace {

std::vector<double> draw_phis(double alpha, double gamma, std::span<const StratumSummary> summaries,
                              ModelVariant variant, Rng& rng) {
  const double theta = variant == ModelVariant::LengthBiased ? alpha + 1.0 / gamma : alpha;
  std::vector<double> phis;
  phis.reserve(summaries.size());
  for (const auto& s : summaries) {
    const double log_phi =
        rng.log_gamma_variate(static_cast<double>(s.n) * theta) - s.log_sum_pow;
    phis.push_back(std::exp(log_phi));
  }
  return phis;
}

}  // namespace

std::vector<PosteriorDraw> draw_posterior(const TransectData& data, ModelVariant variant,
                                          const SamplerConfig& config) {
  config.validate();
  const GammaMarginalTable gamma_table(data, variant, config);

  std::vector<PosteriorDraw> draws;
  draws.reserve(config.draws);
  for (std::size_t h = 0; h < config.draws; ++h) {
    Rng rng = Rng::derive(config.seed, h);
    const double gamma = to_natural(gamma_table.distribution().sample(rng));
    const double alpha =
        to_natural(conditional_alpha_grid(gamma, data, variant, config).sample(rng));
    const auto summaries = stratum_summaries(data, gamma);
    draws.push_back(PosteriorDraw::from_phis(alpha, gamma, draw_phis(alpha, gamma, summaries, variant, rng)));
  }
  return draws;
}

GibbsDiagnostics autocorrelations(const std::vector<PosteriorDraw>& draws) {
  GibbsDiagnostics diag{0.0, 0.0, {}};
  if (draws.empty()) return diag;
  std::vector<double> series(draws.size());
  auto fill = [&](auto&& get) {
    for (std::size_t h = 0; h < draws.size(); ++h) series[h] = get(draws[h]);
    return lag1_autocorrelation(series);
  };
  diag.alpha_lag1 = fill([](const PosteriorDraw& d) { return d.alpha; });
  diag.gamma_lag1 = fill([](const PosteriorDraw& d) { return d.gamma_shape; });
  for (std::size_t i = 0; i < draws.front().betas.size(); ++i) {
    diag.beta_lag1.push_back(fill([i](const PosteriorDraw& d) { return d.betas[i]; }));
  }
  return diag;
}

GibbsResult gibbs_draw_posterior(const TransectData& data, ModelVariant variant,
                                 const SamplerConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::size_t G = config.grid_points;

  double alpha = config.init_alpha;
  double gamma = config.init_gamma;
  auto summaries = stratum_summaries(data, gamma);
  std::vector<double> phis = draw_phis(alpha, gamma, summaries, variant, rng);

  // Transformed-space full conditionals: joint density plus the log Jacobian.
  auto log_target = [&](double a, double g, std::span<const StratumSummary> s) {
    return log_joint_posterior(ShapeParams(a, g), phis, s, variant, config.prior) +
           2.0 * std::log1p(a) + 2.0 * std::log1p(g);
  };

  GibbsResult result;
  result.draws.reserve(config.draws);
  const std::size_t total = config.burn_in + config.draws * config.thin;
  std::vector<double> log_mass(G);
  std::vector<std::vector<StratumSummary>> gamma_grid_summaries(G);
  for (std::size_t k = 0; k < G; ++k) {
    gamma_grid_summaries[k] = stratum_summaries(data, to_natural(GridDistribution::midpoint(k, G)));
  }

  for (std::size_t it = 0; it < total; ++it) {
    // alpha' | gamma, phi
    for (std::size_t j = 0; j < G; ++j) {
      log_mass[j] = log_target(to_natural(GridDistribution::midpoint(j, G)), gamma, summaries);
    }
    alpha = to_natural(GridDistribution(log_mass).sample(rng));

    // gamma' | alpha, phi
    for (std::size_t k = 0; k < G; ++k) {
      log_mass[k] = log_target(alpha, to_natural(GridDistribution::midpoint(k, G)),
                               gamma_grid_summaries[k]);
    }
    gamma = to_natural(GridDistribution(log_mass).sample(rng));
    summaries = stratum_summaries(data, gamma);

    // phi | alpha, gamma
    phis = draw_phis(alpha, gamma, summaries, variant, rng);

    if (it >= config.burn_in && (it - config.burn_in) % config.thin == 0) {
      result.draws.push_back(PosteriorDraw::from_phis(alpha, gamma, phis));
    }
  }
  result.diagnostics = autocorrelations(result.draws);
  return result;
}

}  // namespace lbs
