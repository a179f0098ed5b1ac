#include "lbs/posterior.hpp"

#include <cmath>
#include <limits>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {
namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

// Shape of the per-observation density: alpha + 1/gamma under length bias.
double theta_of(const ShapeParams& s, ModelVariant variant) {
  return variant == ModelVariant::LengthBiased ? s.alpha + 1.0 / s.gamma_shape : s.alpha;
}

// Exponent on Σ ln x from the sample likelihood.
double log_x_coefficient(const ShapeParams& s, ModelVariant variant) {
  const double ga = s.gamma_shape * s.alpha;
  return variant == ModelVariant::LengthBiased ? ga : ga - 1.0;
}

}  // namespace

ShapeParams::ShapeParams(double a, double g) : alpha(a), gamma_shape(g) {
  if (!positive_finite(a) || !positive_finite(g)) {
    throw DomainError("shape parameters alpha and gamma must be positive and finite");
  }
}

TransformedShapeParams::TransformedShapeParams(double a, double g) : alpha_u(a), gamma_u(g) {
  if (!(a > 0.0 && a < 1.0) || !(g > 0.0 && g < 1.0)) {
    throw DomainError("transformed parameters must lie strictly inside the unit square");
  }
}

TransformedShapeParams TransformedShapeParams::from_shape(const ShapeParams& s) {
  return {s.alpha / (1.0 + s.alpha), s.gamma_shape / (1.0 + s.gamma_shape)};
}

ShapeParams TransformedShapeParams::to_shape() const {
  return {alpha_u / (1.0 - alpha_u), gamma_u / (1.0 - gamma_u)};
}

PriorMode PriorMode::bounded_gamma(double a0) {
  if (!(a0 > 1.0) || !std::isfinite(a0)) {
    throw ValidationError("bounded gamma prior needs a0 > 1");
  }
  return {Kind::BoundedGamma, a0};
}

double log_prior(const ShapeParams& shape, const PriorMode& prior) {
  const double log_alpha = -2.0 * std::log1p(shape.alpha);
  if (prior.kind == PriorMode::Kind::F22) {
    return log_alpha - 2.0 * std::log1p(shape.gamma_shape);
  }
  const double g = shape.gamma_shape;
  if (g < 1.0 / prior.a0 || g > prior.a0) {
    return -std::numeric_limits<double>::infinity();
  }
  return log_alpha - std::log(prior.a0 - 1.0 / prior.a0);
}

PhiConditional phi_conditional(const ShapeParams& shape, const TransectData& data,
                               ModelVariant variant) {
  const double theta = theta_of(shape, variant);
  PhiConditional out;
  for (const auto& s : stratum_summaries(data, shape.gamma_shape)) {
    out.strata.push_back({static_cast<double>(s.n) * theta, s.sum_pow});
  }
  return out;
}

double log_joint_posterior(const ShapeParams& shape, std::span<const double> phis,
                           std::span<const StratumSummary> summaries, ModelVariant variant,
                           const PriorMode& prior) {
  if (phis.size() != summaries.size()) {
    throw DomainError("log_joint_posterior: one phi per stratum required");
  }
  const double lp = log_prior(shape, prior);
  if (!std::isfinite(lp)) return lp;

  const double theta = theta_of(shape, variant);
  const double log_gamma_theta = log_gamma_fn(theta);
  const double log_g = std::log(shape.gamma_shape);
  const double x_coef = log_x_coefficient(shape, variant);

  CompensatedSum total;
  total.add(lp);
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const double phi = phis[i];
    if (!positive_finite(phi)) {
      throw DomainError("log_joint_posterior: phi must be positive");
    }
    const auto& s = summaries[i];
    const double n = static_cast<double>(s.n);
    total.add((n - 1.0) * log_g);
    total.add(x_coef * s.sum_log);
    total.add((n * theta - 1.0) * std::log(phi));
    total.add(-n * log_gamma_theta);
    total.add(-std::exp(std::log(phi) + s.log_sum_pow));
  }
  return total.value();
}

double log_joint_posterior(const ShapeParams& shape, std::span<const double> phis,
                           const TransectData& data, ModelVariant variant,
                           const PriorMode& prior) {
  const auto summaries = stratum_summaries(data, shape.gamma_shape);
  return log_joint_posterior(shape, phis, summaries, variant, prior);
}

double log_integrated_posterior(const ShapeParams& shape, std::span<const StratumSummary> summaries,
                                ModelVariant variant, const PriorMode& prior) {
  const double lp = log_prior(shape, prior);
  if (!std::isfinite(lp)) return lp;

  const double theta = theta_of(shape, variant);
  const double log_gamma_theta = log_gamma_fn(theta);
  const double log_g = std::log(shape.gamma_shape);
  const double x_coef = log_x_coefficient(shape, variant);

  CompensatedSum total;
  total.add(lp);
  for (const auto& s : summaries) {
    const double n = static_cast<double>(s.n);
    total.add((n - 1.0) * log_g);
    total.add(x_coef * s.sum_log);
    total.add(-n * theta * s.log_sum_pow);
    total.add(log_gamma_fn(n * theta));
    total.add(-n * log_gamma_theta);
  }
  return total.value();
}

double log_integrated_posterior(const ShapeParams& shape, const TransectData& data,
                                ModelVariant variant, const PriorMode& prior) {
  const auto summaries = stratum_summaries(data, shape.gamma_shape);
  return log_integrated_posterior(shape, summaries, variant, prior);
}

double log_integrated_posterior_means_form(const ShapeParams& shape, const TransectData& data,
                                           ModelVariant variant, const PriorMode& prior) {
  const double lp = log_prior(shape, prior);
  if (!std::isfinite(lp)) return lp;

  const double theta = theta_of(shape, variant);
  const double g = shape.gamma_shape;
  const double log_gamma_theta = log_gamma_fn(theta);
  // theta - alpha: 1/gamma under length bias, 0 otherwise.
  const double shift = theta - shape.alpha;

  CompensatedSum total;
  total.add(lp);
  for (const auto& s : stratum_summaries(data, g)) {
    const double n = static_cast<double>(s.n);
    const double log_a = s.log_arith_mean_pow;
    const double log_gm = s.log_geom_mean_pow;
    total.add(n * shape.alpha * (log_gm - log_a));
    total.add((n - 1.0) * std::log(g) - n * shift * log_a);
    total.add(log_gamma_fn(n * theta) - n * theta * std::log(n) - n * log_gamma_theta);
    if (variant == ModelVariant::Unweighted) {
      total.add(-s.sum_log);  // Π x^(-1) of the unweighted density
    }
  }
  return total.value();
}

double transformed_log_density(const TransformedShapeParams& t, const TransectData& data,
                               ModelVariant variant, const PriorMode& prior) {
  const ShapeParams s = t.to_shape();
  return log_integrated_posterior(s, data, variant, prior) + 2.0 * std::log1p(s.alpha) +
         2.0 * std::log1p(s.gamma_shape);
}

namespace {

void check_delta_args(double theta, std::size_t n) {
  if (!positive_finite(theta) || n == 0) {
    throw DomainError("delta: theta must be positive and n >= 1");
  }
}

}  // namespace

double delta(double theta, std::size_t n) {
  check_delta_args(theta, n);
  const double nd = static_cast<double>(n);
  return log_gamma_fn(nd * theta) - nd * log_gamma_fn(theta) - nd * theta * std::log(nd);
}

double delta_prime(double theta, std::size_t n) {
  check_delta_args(theta, n);
  const double nd = static_cast<double>(n);
  return nd * (digamma_fn(nd * theta) - digamma_fn(theta) - std::log(nd));
}

double delta_double_prime(double theta, std::size_t n) {
  check_delta_args(theta, n);
  const double nd = static_cast<double>(n);
  return (nd / theta) * (nd * theta * trigamma_fn(nd * theta) - theta * trigamma_fn(theta));
}

}  // namespace lbs
