#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lbs/dataset.hpp"
#include "lbs/error.hpp"
#include "lbs/posterior.hpp"
#include "lbs/random.hpp"
#include "oracles.hpp"

using namespace lbs;

namespace {

constexpr auto U = ModelVariant::Unweighted;
constexpr auto LB = ModelVariant::LengthBiased;

// Unnormalized joint density written out term by term with std::lgamma:
// f(2,2) priors on alpha and gamma, 1/beta_i on each scale, phi_i = beta_i^-gamma.
double joint_oracle(double a, double g, const std::vector<double>& phis, const TransectData& d,
                    ModelVariant v) {
  const double theta = v == LB ? a + 1.0 / g : a;
  double total = -2.0 * std::log(1.0 + a) - 2.0 * std::log(1.0 + g);
  for (std::size_t i = 0; i < d.stratum_count(); ++i) {
    const auto& w = d.strata()[i].widths;
    const double n = static_cast<double>(w.size());
    double slog = 0.0;
    double spow = 0.0;
    for (double x : w) {
      slog += std::log(x);
      spow += std::pow(x, g);
    }
    total += (n - 1.0) * std::log(g) + (v == LB ? g * a : g * a - 1.0) * slog +
             (n * theta - 1.0) * std::log(phis[i]) - n * std::lgamma(theta) - phis[i] * spow;
  }
  return total;
}

double gamma_log_pdf(double x, double shape, double rate) {
  return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x - std::lgamma(shape);
}

const TransectData kTiny({{"A", {1.0, 2.0}}}, 125.0);

}  // namespace

TEST_SUITE("posterior") {

TEST_CASE("shape parameters validate") {
  CHECK_THROWS_AS(ShapeParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ShapeParams(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(TransformedShapeParams(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(TransformedShapeParams(0.5, 1.0), DomainError);
  const auto s = TransformedShapeParams(0.5, 0.5).to_shape();
  CHECK(s.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.gamma_shape == doctest::Approx(1.0).epsilon(1e-15));
  const auto t = TransformedShapeParams::from_shape(ShapeParams(3.0, 0.25));
  CHECK(t.alpha_u == doctest::Approx(0.75));
  CHECK(t.gamma_u == doctest::Approx(0.2));
}

TEST_CASE("priors") {
  const ShapeParams s(1.0, 1.0);
  CHECK(log_prior(s, PriorMode::f22()) == doctest::Approx(-4.0 * std::log(2.0)));
  const auto bounded = PriorMode::bounded_gamma(10.0);
  CHECK(log_prior(ShapeParams(1.0, 11.0), bounded) == -std::numeric_limits<double>::infinity());
  CHECK(log_prior(ShapeParams(1.0, 0.05), bounded) == -std::numeric_limits<double>::infinity());
  CHECK(log_prior(ShapeParams(1.0, 0.5), bounded) == log_prior(ShapeParams(1.0, 9.0), bounded));
  CHECK_THROWS_AS(PriorMode::bounded_gamma(0.5), ValidationError);
}

TEST_CASE("joint density on the two-point dataset by hand") {
  const std::vector<double> phi{1.0};
  // prior 1/16, sum x = 3, prod x^(gamma alpha) = 2, Γ(2) = 1.
  const double expected = std::log(2.0) - 3.0 - 4.0 * std::log(2.0);
  CHECK(log_joint_posterior(ShapeParams(1.0, 1.0), phi, kTiny, LB) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("joint density matches the term-by-term oracle and its data scaling") {
  const auto base = embedded_replication(Replication::One);
  for (double c : {0.0, -0.7, 1.1}) {
    std::vector<Stratum> strata = base.strata();
    for (auto& s : strata) {
      for (auto& x : s.widths) x *= std::exp(c);
    }
    const TransectData scaled(strata, 125.0);
    for (auto v : {LB, U}) {
      for (auto [a, g] : {std::pair{1.3, 0.9}, std::pair{0.4, 2.2}}) {
        const std::vector<double> phis{0.8, 2.5, 1.2};
        CHECK(log_joint_posterior(ShapeParams(a, g), phis, scaled, v) ==
              doctest::Approx(joint_oracle(a, g, phis, scaled, v)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("joint minus integrated is the Gamma conditional of phi") {
  const auto d = embedded_replication(Replication::One);
  for (auto v : {LB, U}) {
    const ShapeParams s(1.6, 1.2);
    const auto cond = phi_conditional(s, d, v);
    const std::vector<double> p1{0.3, 1.7, 0.9};
    const std::vector<double> p2{2.1, 0.4, 1.3};
    double g1 = 0.0;
    double g2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      g1 += gamma_log_pdf(p1[i], cond.strata[i].shape, cond.strata[i].rate);
      g2 += gamma_log_pdf(p2[i], cond.strata[i].shape, cond.strata[i].rate);
    }
    const double lhs = log_joint_posterior(s, p1, d, v) - log_joint_posterior(s, p2, d, v);
    CHECK(lhs == doctest::Approx(g1 - g2).epsilon(1e-11));
    CHECK(log_joint_posterior(s, p1, d, v) - g1 ==
          doctest::Approx(log_integrated_posterior(s, d, v)).epsilon(1e-11));
  }
}

TEST_CASE("phi conditional examples") {
  const TransectData twos({{"A", {1.0, 1.0}}}, 125.0);
  const auto c1 = phi_conditional(ShapeParams(1.0, 1.0), twos, U);
  CHECK(c1.strata[0].shape == doctest::Approx(2.0));
  CHECK(c1.strata[0].rate == doctest::Approx(2.0));
  CHECK(c1.strata[0].mean() == doctest::Approx(1.0));
  // Length bias adds n / gamma to the shape.
  const auto c2 = phi_conditional(ShapeParams(1.0, 1.0), twos, LB);
  CHECK(c2.strata[0].shape == doctest::Approx(4.0));
  CHECK(c2.strata[0].rate == doctest::Approx(2.0));

  const auto c3 = phi_conditional(ShapeParams(1.0, 1.0), embedded_replication(Replication::One), LB);
  CHECK(c3.strata[2].shape == doctest::Approx(12.0));
  CHECK(c3.strata[2].rate == doctest::Approx(8.71).epsilon(1e-13));

  const TransectData one({{"A", {1.0}}}, 125.0);
  const auto cu = phi_conditional(ShapeParams(1.0, 2.0), one, U);
  CHECK(cu.strata[0].shape == doctest::Approx(1.0));
  CHECK(cu.strata[0].rate == doctest::Approx(1.0));
}

TEST_CASE("sum form and means form of the integrated posterior agree") {
  const auto d = embedded_replication(Replication::One);
  for (auto v : {LB, U}) {
    const ShapeParams s(1.3, 0.9);
    CHECK(std::abs(log_integrated_posterior(s, d, v) - log_integrated_posterior_means_form(s, d, v)) < 1e-10);
  }
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const ShapeParams s(0.05 + 20 * rng.uniform(), 0.05 + 8 * rng.uniform());
    CHECK(std::abs(log_integrated_posterior(s, d, LB) - log_integrated_posterior_means_form(s, d, LB)) <
          1e-10 * std::max(1.0, std::abs(log_integrated_posterior(s, d, LB))));
  }
}

TEST_CASE("integrating phi out of the joint reproduces the integrated posterior") {
  std::vector<double> gaps;
  for (auto [a, g] : {std::pair{0.5, 0.5}, std::pair{1.0, 1.0}, std::pair{1.7, 1.2}, std::pair{3.0, 2.5},
                      std::pair{0.8, 4.0}}) {
    const ShapeParams s(a, g);
    // phi = e^t, d phi = e^t dt, over a range that holds all the Gamma mass.
    auto integrand = [&](double t) {
      const std::vector<double> phi{std::exp(t)};
      return std::exp(log_joint_posterior(s, phi, kTiny, LB) + t);
    };
    const double numeric = std::log(oracle::simpson(integrand, -40.0, 15.0, 200000));
    gaps.push_back(numeric - log_integrated_posterior(s, kTiny, LB));
  }
  const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  CHECK(*hi - *lo < 1e-6);
}

TEST_CASE("large alpha drives the integrated posterior to minus infinity") {
  const auto d = embedded_replication(Replication::One);
  double prev = log_integrated_posterior(ShapeParams(10.0, 1.3), d, LB);
  for (double a : {100.0, 1e3, 1e4, 1e5}) {
    const double cur = log_integrated_posterior(ShapeParams(a, 1.3), d, LB);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < -1e4);
}

TEST_CASE("integrated posterior ignores stratum order") {
  const auto d = embedded_replication(Replication::One);
  auto strata = d.strata();
  std::swap(strata[0], strata[2]);
  const TransectData shuffled(strata, 125.0);
  for (auto v : {LB, U}) {
    const ShapeParams s(2.2, 0.7);
    CHECK(log_integrated_posterior(s, d, v) == doctest::Approx(log_integrated_posterior(s, shuffled, v)).epsilon(1e-13));
  }
}

TEST_CASE("transformed density adds the Jacobian to the integrated posterior") {
  const auto d = embedded_replication(Replication::One);
  Rng rng(9);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TransformedShapeParams t(rng.uniform(), rng.uniform());
    const auto s = t.to_shape();
    const double expected =
        log_integrated_posterior(s, d, LB) + 2.0 * std::log(1.0 + s.alpha) + 2.0 * std::log(1.0 + s.gamma_shape);
    worst = std::max(worst, std::abs(transformed_log_density(t, d, LB) - expected));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("transformed density is finite on the interior and integrable") {
  const auto d = embedded_replication(Replication::One);
  const int k = 50;
  std::vector<double> grid;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double v = transformed_log_density({(i + 0.5) / k, (j + 0.5) / k}, d, LB);
      CHECK(std::isfinite(v));
      grid.push_back(v);
    }
  }
  // Continuity: shrinking the step 100-fold shrinks the change in log density accordingly.
  for (int i = 0; i < k; i += 7) {
    for (int j = 0; j < k; j += 7) {
      const double u = (i + 0.5) / k;
      const double w = (j + 0.5) / k;
      const double v = grid[i * k + j];
      const double du_big = std::abs(transformed_log_density({u + 1e-7, w}, d, LB) - v);
      const double du_small = std::abs(transformed_log_density({u + 1e-9, w}, d, LB) - v);
      const double dw_big = std::abs(transformed_log_density({u, w + 1e-7}, d, LB) - v);
      const double dw_small = std::abs(transformed_log_density({u, w + 1e-9}, d, LB) - v);
      CHECK(du_small <= 0.05 * du_big + 1e-8);
      CHECK(dw_small <= 0.05 * dw_big + 1e-8);
    }
  }
  const double log_mass = oracle::log_riemann_unit(
      [&](double u) {
        return oracle::log_riemann_unit([&](double w) { return transformed_log_density({u, w}, d, LB); }, 200);
      },
      200);
  CHECK(std::isfinite(log_mass));
}

TEST_CASE("delta examples") {
  for (double theta : {0.01, 1.0, 30.0}) CHECK(std::abs(delta(theta, 1)) < 1e-12);
  CHECK(delta(1.0, 2) == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(delta_prime(1.0, 2) == doctest::Approx(2.0 * (1.0 - std::log(2.0))).epsilon(1e-12));
  CHECK_THROWS_AS(delta(0.0, 2), DomainError);
  CHECK_THROWS_AS(delta_prime(1.0, 0), DomainError);
}

TEST_CASE("delta is increasing and concave on the log grid") {
  for (std::size_t n : {2u, 6u, 18u, 22u}) {
    for (int k = 0; k <= 140; ++k) {
      const double theta = std::pow(10.0, -3.0 + 7.0 * k / 140.0);
      CAPTURE(n);
      CAPTURE(theta);
      CHECK(delta_prime(theta, n) >= 0.0);
      CHECK(delta_double_prime(theta, n) <= 0.0);
    }
  }
}

TEST_CASE("delta derivatives match finite differences") {
  for (std::size_t n : {2u, 6u, 18u, 22u}) {
    for (int k = 0; k <= 28; ++k) {
      const double theta = std::pow(10.0, -3.0 + 7.0 * k / 28.0);
      const double h = 1e-5 * theta;
      const double fd1 = (delta(theta + h, n) - delta(theta - h, n)) / (2 * h);
      const double fd2 = (delta_prime(theta + h, n) - delta_prime(theta - h, n)) / (2 * h);
      const double d1 = delta_prime(theta, n);
      const double d2 = delta_double_prime(theta, n);
      CAPTURE(n);
      CAPTURE(theta);
      CHECK(std::abs(fd1 - d1) < 1e-5 * std::max(1.0, std::abs(d1)));
      CHECK(std::abs(fd2 - d2) < 1e-4 * std::max(1.0, std::abs(d2)));
    }
  }
}

TEST_CASE("delta keeps growing like ((n - 1) / 2) ln theta") {
  // Reported behaviour, not a bound: the increase per decade tends to the Stirling slope.
  for (std::size_t n : {2u, 6u, 18u, 22u}) {
    const double rise = delta(1e4, n) - delta(1e3, n);
    CHECK(rise == doctest::Approx(0.5 * (n - 1.0) * std::log(10.0)).epsilon(1e-3));
  }
}

}  // TEST_SUITE
