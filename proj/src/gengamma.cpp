#include "lbs/gengamma.hpp"

#include <cmath>
#include <string>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {

std::string_view to_string(ModelVariant v) {
  return v == ModelVariant::LengthBiased ? "biased" : "unbiased";
}

ModelVariant parse_variant(std::string_view name) {
  if (name == "biased" || name == "length-biased" || name == "LengthBiased") {
    return ModelVariant::LengthBiased;
  }
  if (name == "unbiased" || name == "unweighted" || name == "Unweighted") {
    return ModelVariant::Unweighted;
  }
  throw ValidationError("unknown model variant '" + std::string(name) + "'");
}

GenGammaParams::GenGammaParams(double alpha, double beta, double gamma_shape)
    : alpha_(alpha), beta_(beta), gamma_(gamma_shape) {
  auto ok = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!ok(alpha) || !ok(beta) || !ok(gamma_shape)) {
    throw ValidationError("generalized gamma parameters must be positive and finite");
  }
}

double gg_log_pdf(double x, const GenGammaParams& p, ModelVariant variant) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gg_log_pdf: x must be positive and finite");
  }
  const double a = p.effective_alpha(variant);
  const double g = p.gamma_shape();
  const double log_ratio = std::log(x) - std::log(p.beta());
  // ln g + (g a - 1) ln x - g a ln beta - ln Γ(a) - (x/beta)^g
  return std::log(g) + g * a * log_ratio - std::log(x) - log_gamma_fn(a) -
         std::exp(g * log_ratio);
}

double gg_pdf(double x, const GenGammaParams& params, ModelVariant variant) {
  return std::exp(gg_log_pdf(x, params, variant));
}

namespace {

// E[X^k] for X ~ GG(a, beta, g): beta^k Γ(a + k/g) / Γ(a).
double log_raw_moment(double a, const GenGammaParams& p, int k) {
  return k * std::log(p.beta()) + log_gamma_fn(a + k / p.gamma_shape()) - log_gamma_fn(a);
}

}  // namespace

double gg_mean(const GenGammaParams& params, ModelVariant variant) {
  return std::exp(log_raw_moment(params.effective_alpha(variant), params, 1));
}

double gg_variance(const GenGammaParams& params, ModelVariant variant) {
  const double a = params.effective_alpha(variant);
  const double log_m1 = log_raw_moment(a, params, 1);
  const double log_m2 = log_raw_moment(a, params, 2);
  // m2 - m1^2 = -m2 expm1(2 ln m1 - ln m2)
  return -std::exp(log_m2) * std::expm1(2.0 * log_m1 - log_m2);
}

double gg_sample(const GenGammaParams& params, ModelVariant variant, Rng& rng) {
  const double log_y = rng.log_gamma_variate(params.effective_alpha(variant));
  return params.beta() * std::exp(log_y / params.gamma_shape());
}

}  // namespace lbs
