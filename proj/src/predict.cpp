#include "lbs/predict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lbs/error.hpp"
#include "lbs/gengamma.hpp"
#include "lbs/numerics.hpp"

namespace lbs {

std::vector<double> stratum_population_means(const PosteriorDraw& draw) {
  std::vector<double> means;
  means.reserve(draw.betas.size());
  for (std::size_t i = 0; i < draw.betas.size(); ++i) {
    means.push_back(gg_mean(draw.stratum_params(i), ModelVariant::Unweighted));
  }
  return means;
}

double complement_log_weight(const std::vector<std::vector<double>>& widths,
                             std::span<const double> stratum_means, double baseline_length) {
  if (widths.size() != stratum_means.size()) {
    throw DomainError("complement weight: one mean per stratum required");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double mu = stratum_means[i];
    if (!(mu < baseline_length)) {
      throw DomainError("complement weight: stratum mean is not below W");
    }
    for (double x : widths[i]) total.add(std::log1p(-x / baseline_length));
    total.add(-static_cast<double>(widths[i].size()) * std::log1p(-mu / baseline_length));
  }
  return total.value();
}

ComplementDraw draw_complement(const PosteriorDraw& draw, std::span<const std::uint64_t> sizes,
                               const TransectData& data, Rng& rng) {
  const auto& strata = data.strata();
  if (sizes.size() != strata.size() || draw.betas.size() != strata.size()) {
    throw DomainError("draw_complement: sizes, betas and strata must align");
  }
  const double W = data.baseline_length();
  const auto means = stratum_population_means(draw);
  for (double mu : means) {
    if (!(mu < W)) throw DomainError("draw_complement: GG mean is not below W");
  }

  ComplementDraw out;
  out.widths.resize(strata.size());
  for (std::size_t i = 0; i < strata.size(); ++i) {
    if (sizes[i] < strata[i].widths.size()) {
      throw DomainError("draw_complement: population size below the sample size");
    }
    const auto missing = sizes[i] - strata[i].widths.size();
    const GenGammaParams params = draw.stratum_params(i);
    auto& xs = out.widths[i];
    xs.reserve(missing);
    for (std::uint64_t j = 0; j < missing; ++j) {
      double x;
      do {
        x = gg_sample(params, ModelVariant::Unweighted, rng);
      } while (!(x < W));
      xs.push_back(x);
    }
  }
  out.log_weight = complement_log_weight(out.widths, means, W);
  return out;
}

std::vector<std::size_t> sir_resample(std::span<const double> log_weights, std::size_t count,
                                      bool with_replacement, Rng& rng) {
  const double log_total = log_sum_exp(log_weights);
  if (!std::isfinite(log_total)) {
    throw NumericalError("SIR: importance weights underflow or are not finite");
  }
  std::vector<std::size_t> picked;
  picked.reserve(count);
  if (with_replacement) {
    std::vector<double> cumulative(log_weights.size());
    double running = 0.0;
    for (std::size_t h = 0; h < log_weights.size(); ++h) {
      running += std::exp(log_weights[h] - log_total);
      cumulative[h] = running;
    }
    for (std::size_t k = 0; k < count; ++k) {
      const double u = rng.uniform() * running;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      picked.push_back(static_cast<std::size_t>(it - cumulative.begin()));
    }
    return picked;
  }
  const std::size_t positive = static_cast<std::size_t>(std::count_if(
      log_weights.begin(), log_weights.end(),
      [](double v) { return v > -std::numeric_limits<double>::infinity(); }));
  if (count > positive) {
    throw NumericalError("SIR: fewer candidates with positive weight than requested");
  }
  // Exponential clocks: the `count` smallest E_h / w_h are a successive
  // weighted sample without replacement. Compared as ln E_h - ln w_h.
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(log_weights.size());
  for (std::size_t h = 0; h < log_weights.size(); ++h) {
    const double e = -std::log(rng.uniform());
    keys.emplace_back(std::log(e) - (log_weights[h] - log_total), h);
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(count), keys.end());
  for (std::size_t k = 0; k < count; ++k) picked.push_back(keys[k].second);
  return picked;
}

PredictionResult population_mean_draws(const std::vector<PosteriorDraw>& posterior,
                                       const TransectData& data, const SizePrior& prior,
                                       const PredictOptions& options) {
  if (posterior.empty()) throw ValidationError("predict: no posterior draws");
  if (!(options.resample_fraction > 0.0 && options.resample_fraction <= 1.0)) {
    throw ValidationError("predict: resample fraction must lie in (0, 1]");
  }
  if (prior.stratum_count() != data.stratum_count()) {
    throw ValidationError("predict: size prior and data disagree on the stratum count");
  }
  const auto sample_sizes = data.stratum_sizes();
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    if (prior.sample_sizes()[i] != sample_sizes[i]) {
      throw ValidationError("predict: size prior built for different stratum sample sizes");
    }
  }
  CompensatedSum sampled_sum;
  for (double x : data.all_widths()) sampled_sum.add(x);
  const double n = static_cast<double>(data.total_size());

  PredictionResult result;
  result.candidates.reserve(posterior.size());
  std::vector<double> log_weights;
  log_weights.reserve(posterior.size());
  for (std::size_t h = 0; h < posterior.size(); ++h) {
    Rng rng = Rng::derive(options.seed, h);
    std::vector<std::uint64_t> sizes(sample_sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] = sample_population_size(prior, i, rng);
    const auto complement = draw_complement(posterior[h], sizes, data, rng);

    CompensatedSum total = sampled_sum;
    for (const auto& xs : complement.widths)
      for (double x : xs) total.add(x);
    const double population = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0}));

    result.candidates.push_back(
        {total.value() / population, complement.log_weight, sizes, n / population, h});
    log_weights.push_back(complement.log_weight);
  }

  const auto count = static_cast<std::size_t>(
      std::ceil(options.resample_fraction * static_cast<double>(posterior.size()) - 1e-9));
  Rng rng = Rng::derive(options.seed, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t idx : sir_resample(log_weights, std::max<std::size_t>(count, 1),
                                      options.with_replacement, rng)) {
    result.resampled.push_back(result.candidates[idx]);
  }
  return result;
}

}  // namespace lbs
