#include "lbs/simulate.hpp"

#include <cmath>

#include "lbs/dataset.hpp"
#include "lbs/error.hpp"
#include "lbs/numerics.hpp"
#include "lbs/popsize.hpp"
#include "lbs/predict.hpp"
#include "lbs/summary.hpp"

namespace lbs {

void SimulationConfig::validate() const {
  if (true_params.empty() || true_params.size() != population_sizes.size()) {
    throw ValidationError("simulation: one parameter set and one size per stratum required");
  }
  for (auto n : population_sizes) {
    if (n == 0) throw ValidationError("simulation: population sizes must be >= 1");
  }
  if (!(baseline_length > 0.0) || !std::isfinite(baseline_length)) {
    throw ValidationError("simulation: W must be positive");
  }
  for (const auto& p : true_params) {
    const double tail = regularized_gamma_q(p.alpha(), std::pow(baseline_length / p.beta(), p.gamma_shape()));
    if (!(tail < 1e-6)) {
      throw ValidationError("simulation: W too small, P(x >= W) = " + format_double(tail));
    }
  }
  if (replications == 0) throw ValidationError("simulation: replications must be >= 1");
  if (!(resample_fraction > 0.0 && resample_fraction <= 1.0)) {
    throw ValidationError("simulation: resample fraction must lie in (0, 1]");
  }
  if (!(interval_level > 0.0 && interval_level < 1.0)) {
    throw ValidationError("simulation: interval level must lie in (0, 1)");
  }
  if (constant_selection_probability &&
      !(*constant_selection_probability > 0.0 && *constant_selection_probability <= 1.0)) {
    throw ValidationError("simulation: constant selection probability must lie in (0, 1]");
  }
  sampler.validate();
}

std::vector<std::vector<double>> generate_population(const SimulationConfig& config, Rng& rng) {
  config.validate();
  std::vector<std::vector<double>> population(config.true_params.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    auto& xs = population[i];
    xs.reserve(config.population_sizes[i]);
    for (std::size_t j = 0; j < config.population_sizes[i]; ++j) {
      double x;
      do {
        x = gg_sample(config.true_params[i], ModelVariant::Unweighted, rng);
      } while (!(x < config.baseline_length));
      xs.push_back(x);
    }
  }
  return population;
}

Selection length_biased_select(std::span<const double> widths, double baseline_length, Rng& rng) {
  Selection s;
  for (std::size_t j = 0; j < widths.size(); ++j) {
    const double x = widths[j];
    if (!(x >= 0.0) || !(x < baseline_length)) {
      throw DomainError("length_biased_select: width outside [0, W)");
    }
    if (rng.uniform() < x / baseline_length) {
      s.indices.push_back(j);
      s.widths.push_back(x);
    }
  }
  return s;
}

Selection constant_select(std::span<const double> widths, double probability, Rng& rng) {
  Selection s;
  for (std::size_t j = 0; j < widths.size(); ++j) {
    if (rng.uniform() < probability) {
      s.indices.push_back(j);
      s.widths.push_back(widths[j]);
    }
  }
  return s;
}

namespace {

Selection select(const SimulationConfig& config, std::span<const double> widths, Rng& rng) {
  if (config.constant_selection_probability) {
    return constant_select(widths, *config.constant_selection_probability, rng);
  }
  return length_biased_select(widths, config.baseline_length, rng);
}

ReplicationOutcome run_replication(const SimulationConfig& config, std::size_t r) {
  ReplicationOutcome out;
  out.index = r;
  Rng rng = Rng::derive(config.seed, r);
  const auto population = generate_population(config, rng);

  CompensatedSum total;
  std::size_t count = 0;
  for (const auto& xs : population) {
    for (double x : xs) total.add(x);
    count += xs.size();
  }
  out.truth = total.value() / static_cast<double>(count);

  // Held-out replicate for the size prior, pooled over strata.
  std::vector<double> held_out;
  for (const auto& xs : population) {
    const auto s = select(config, xs, rng);
    held_out.insert(held_out.end(), s.widths.begin(), s.widths.end());
  }
  std::vector<Stratum> strata;
  for (std::size_t i = 0; i < population.size(); ++i) {
    auto s = select(config, population[i], rng);
    if (s.widths.empty()) throw NumericalError("stratum " + std::to_string(i) + " selected no units");
    strata.push_back({std::to_string(i + 1), std::move(s.widths)});
  }
  if (held_out.empty()) throw NumericalError("held-out replicate selected no units");
  const TransectData data(std::move(strata), config.baseline_length, "sim");
  out.sample_size = data.total_size();

  const auto sizes = data.stratum_sizes();
  const double n_hat = config.constant_selection_probability
                           ? static_cast<double>(held_out.size()) / *config.constant_selection_probability
                           : ht_population_estimate(held_out, config.baseline_length);
  const auto allocated = proportional_allocation(n_hat, sizes);
  out.mu0 = estimate_mu0(sizes, allocated);
  const SizePrior prior(sizes, out.mu0);

  SamplerConfig sampler = config.sampler;
  sampler.seed = rng.next_u64();
  const auto draws = draw_posterior(data, ModelVariant::LengthBiased, sampler);
  PredictOptions options;
  options.resample_fraction = config.resample_fraction;
  options.seed = rng.next_u64();
  const auto prediction = population_mean_draws(draws, data, prior, options);

  std::vector<double> means;
  means.reserve(prediction.resampled.size());
  for (const auto& d : prediction.resampled) means.push_back(d.mean);
  const double tail = 0.5 * (1.0 - config.interval_level);
  out.lower = quantile(means, tail);
  out.upper = quantile(means, 1.0 - tail);
  out.median = quantile(means, 0.5);
  out.covered = out.lower <= out.truth && out.truth <= out.upper;
  return out;
}

}  // namespace

RecoveryReport recovery_study(const SimulationConfig& config) {
  config.validate();
  RecoveryReport report;
  std::size_t covered = 0;
  double width_sum = 0.0;
  for (std::size_t r = 0; r < config.replications; ++r) {
    ReplicationOutcome outcome;
    try {
      outcome = run_replication(config, r);
    } catch (const std::exception& e) {
      outcome = ReplicationOutcome{};
      outcome.index = r;
      outcome.error = e.what();
      ++report.failures;
    }
    if (outcome.error.empty()) {
      covered += outcome.covered ? 1 : 0;
      width_sum += outcome.upper - outcome.lower;
    }
    report.replications.push_back(std::move(outcome));
  }
  const std::size_t ok = config.replications - report.failures;
  if (ok > 0) {
    report.coverage = static_cast<double>(covered) / static_cast<double>(ok);
    report.mean_interval_width = width_sum / static_cast<double>(ok);
  }
  return report;
}

}  // namespace lbs
