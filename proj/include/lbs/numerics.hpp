#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace lbs {

/// ln Γ(z) for z > 0. Throws DomainError for z <= 0 or non-finite z.
double log_gamma_fn(double z);

/// Digamma ψ(z) for z > 0.
double digamma_fn(double z);

/// Trigamma ψ'(z) for z > 0.
double trigamma_fn(double z);

/// Upper regularized incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
double regularized_gamma_q(double a, double x);

inline constexpr std::size_t kQuadratureOrder = 20;

// Gauss–Legendre rule on [-1, 1].
struct QuadratureRule {
  std::array<double, kQuadratureOrder> nodes;
  std::array<double, kQuadratureOrder> weights;
};

const QuadratureRule& gauss_legendre_20();

/// ln Σ exp(v_i), shifting by the maximum first. An all -inf input returns
/// -inf. Throws std::invalid_argument when `values` is empty.
double log_sum_exp(std::span<const double> values);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace lbs

namespace lbs {

/// ln ∫_0^1 exp(log_f(u)) du by the 20-point rule mapped through u = (1 + x) / 2.
template <class LogIntegrand>
double log_integrate_unit_interval(LogIntegrand&& log_f) {
  const auto& rule = gauss_legendre_20();
  std::array<double, kQuadratureOrder> terms;
  for (std::size_t i = 0; i < kQuadratureOrder; ++i) {
    terms[i] = std::log(rule.weights[i]) + log_f(0.5 + 0.5 * rule.nodes[i]);
  }
  return std::log(0.5) + log_sum_exp(terms);
}

}  // namespace lbs
