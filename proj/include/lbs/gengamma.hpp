#pragma once

#include <string_view>

#include "lbs/random.hpp"

namespace lbs {

// Population model f (unweighted) or its length-biased sample density
// g(x) = x f(x) / E(x), which is GG(alpha + 1/gamma, beta, gamma).
enum class ModelVariant { Unweighted, LengthBiased };

std::string_view to_string(ModelVariant v);
ModelVariant parse_variant(std::string_view name);

// (alpha, beta, gamma) of the generalized gamma density
//   f(x) = gamma x^(gamma alpha - 1) / (beta^(gamma alpha) Γ(alpha)) exp(-(x/beta)^gamma).
// All three are validated positive and finite at construction.
class GenGammaParams {
 public:
  GenGammaParams(double alpha, double beta, double gamma_shape);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma_shape() const noexcept { return gamma_; }

  // Shape of the density actually used for `variant`.
  double effective_alpha(ModelVariant variant) const noexcept {
    return variant == ModelVariant::LengthBiased ? alpha_ + 1.0 / gamma_ : alpha_;
  }

 private:
  double alpha_;
  double beta_;
  double gamma_;
};

double gg_log_pdf(double x, const GenGammaParams& params, ModelVariant variant);

// Convenience only; downstream code works with gg_log_pdf.
double gg_pdf(double x, const GenGammaParams& params, ModelVariant variant);

double gg_mean(const GenGammaParams& params, ModelVariant variant);
double gg_variance(const GenGammaParams& params, ModelVariant variant);

/// beta * Y^(1/gamma) with Y ~ Gamma(effective alpha, 1).
double gg_sample(const GenGammaParams& params, ModelVariant variant, Rng& rng);

}  // namespace lbs
