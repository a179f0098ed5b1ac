#pragma once

#include <span>
#include <vector>

#include "lbs/dataset.hpp"
#include "lbs/gengamma.hpp"

namespace lbs {

struct ShapeParams {
  ShapeParams(double alpha, double gamma_shape);

  double alpha;
  double gamma_shape;
};

// (alpha/(1+alpha), gamma/(1+gamma)) on the open unit square.
struct TransformedShapeParams {
  TransformedShapeParams(double alpha_u, double gamma_u);

  static TransformedShapeParams from_shape(const ShapeParams& s);
  ShapeParams to_shape() const;

  double alpha_u;
  double gamma_u;
};

// Priors on (alpha, gamma). beta_i always carries the improper 1/beta_i prior.
struct PriorMode {
  enum class Kind { F22, BoundedGamma };

  static PriorMode f22() { return {Kind::F22, 10.0}; }
  static PriorMode bounded_gamma(double a0 = 10.0);

  Kind kind = Kind::F22;
  double a0 = 10.0;  // gamma ~ Uniform(1/a0, a0) in BoundedGamma mode
};

/// ln π(alpha) + ln π(gamma); -inf outside the bounded-gamma support.
double log_prior(const ShapeParams& shape, const PriorMode& prior);

struct GammaLaw {
  double shape;
  double rate;
  double mean() const { return shape / rate; }
};

// phi_i = beta_i^(-gamma) given (alpha, gamma) and the data, one law per stratum.
struct PhiConditional {
  std::vector<GammaLaw> strata;
};

PhiConditional phi_conditional(const ShapeParams& shape, const TransectData& data,
                               ModelVariant variant = ModelVariant::LengthBiased);

/// Unnormalized log joint posterior of (alpha, phi_1..phi_l, gamma).
double log_joint_posterior(const ShapeParams& shape, std::span<const double> phis,
                           const TransectData& data, ModelVariant variant,
                           const PriorMode& prior = PriorMode::f22());

/// Same density from stratum summaries precomputed at shape.gamma_shape.
double log_joint_posterior(const ShapeParams& shape, std::span<const double> phis,
                           std::span<const StratumSummary> summaries, ModelVariant variant,
                           const PriorMode& prior = PriorMode::f22());

/// Unnormalized log posterior of (alpha, gamma) with every phi_i integrated out,
/// written with Σ x^gamma and Π x^(gamma alpha).
double log_integrated_posterior(const ShapeParams& shape, const TransectData& data,
                                ModelVariant variant, const PriorMode& prior = PriorMode::f22());

/// Same density from precomputed stratum summaries at shape.gamma_shape.
double log_integrated_posterior(const ShapeParams& shape, std::span<const StratumSummary> summaries,
                                ModelVariant variant, const PriorMode& prior = PriorMode::f22());

/// Same density written through the arithmetic and geometric means a_i, g_i of
/// x^gamma. Agrees with log_integrated_posterior to rounding.
double log_integrated_posterior_means_form(const ShapeParams& shape, const TransectData& data,
                                           ModelVariant variant,
                                           const PriorMode& prior = PriorMode::f22());

/// Log density of (alpha', gamma') on the open unit square: the integrated
/// posterior plus the log Jacobian 2 ln(1+alpha) + 2 ln(1+gamma).
double transformed_log_density(const TransformedShapeParams& t, const TransectData& data,
                               ModelVariant variant, const PriorMode& prior = PriorMode::f22());

// Δ(θ) = lnΓ(nθ) - n lnΓ(θ) - nθ ln n and its first two derivatives.
double delta(double theta, std::size_t n);
double delta_prime(double theta, std::size_t n);
double delta_double_prime(double theta, std::size_t n);

}  // namespace lbs
