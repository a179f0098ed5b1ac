#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

using namespace lbs;

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> z;
  for (int k = 0; k < points; ++k) {
    z.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (points - 1)));
  }
  return z;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("log_gamma_fn at known points") {
  CHECK(std::abs(log_gamma_fn(1.0)) < 1e-14);
  CHECK(std::abs(log_gamma_fn(2.0)) < 1e-14);
  CHECK(std::abs(log_gamma_fn(0.5) - 0.5723649429247001) < 1e-12);
}

TEST_CASE("log_gamma_fn rejects non-positive and non-finite input") {
  CHECK_THROWS_AS(log_gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma_fn(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(log_gamma_fn(std::nan("")), DomainError);
}

TEST_CASE("log_gamma_fn matches boost to 1e-10 absolute on [1e-3, 1e4]") {
  double worst = 0.0;
  for (double z : log_grid(1e-3, 1e4, 400)) {
    worst = std::max(worst, std::abs(log_gamma_fn(z) - boost::math::lgamma(z)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("log_gamma_fn recurrence") {
  for (double z : log_grid(1e-3, 1e3, 120)) {
    CHECK(std::abs(log_gamma_fn(z + 1.0) - log_gamma_fn(z) - std::log(z)) < 1e-10);
  }
}

TEST_CASE("digamma_fn examples") {
  CHECK(std::abs(digamma_fn(1.0) + 0.5772156649015329) < 1e-12);
  CHECK(std::abs(digamma_fn(2.0) - 0.42278433509846713) < 1e-12);
  CHECK(std::abs(digamma_fn(0.5) + 1.9635100260214235) < 1e-12);
  CHECK_THROWS_AS(digamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(digamma_fn(-2.0), DomainError);
}

TEST_CASE("digamma_fn against boost and against finite differences of log gamma") {
  for (double z : log_grid(1e-3, 1e4, 300)) {
    CHECK(std::abs(digamma_fn(z) - boost::math::digamma(z)) < 1e-9);
  }
  const double h = 1e-5;
  for (double z : log_grid(0.1, 100.0, 60)) {
    const double fd = (log_gamma_fn(z + h) - log_gamma_fn(z - h)) / (2 * h);
    CHECK(std::abs(digamma_fn(z) - fd) < 1e-5);
  }
}

TEST_CASE("trigamma_fn examples") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(trigamma_fn(1.0) == doctest::Approx(pi2 / 6).epsilon(1e-12));
  CHECK(trigamma_fn(0.5) == doctest::Approx(pi2 / 2).epsilon(1e-12));
  CHECK(trigamma_fn(2.0) == doctest::Approx(pi2 / 6 - 1).epsilon(1e-12));
  CHECK_THROWS_AS(trigamma_fn(0.0), DomainError);
}

TEST_CASE("trigamma_fn relative accuracy and derivative of digamma") {
  for (double z : log_grid(1e-3, 1e4, 300)) {
    const double ref = boost::math::trigamma(z);
    CHECK(std::abs(trigamma_fn(z) - ref) / ref < 1e-8);
  }
  const double h = 1e-5;
  for (double z : log_grid(0.1, 100.0, 60)) {
    const double fd = (digamma_fn(z + h) - digamma_fn(z - h)) / (2 * h);
    CHECK(std::abs(trigamma_fn(z) - fd) < 1e-4);
  }
}

TEST_CASE("regularized_gamma_q agrees with boost") {
  for (double a : {0.3, 1.0, 2.5, 17.0, 120.0}) {
    for (double x : {1e-3, 0.5, 1.0, 4.0, 30.0, 150.0}) {
      const double ref = boost::math::gamma_q(a, x);
      CHECK(std::abs(regularized_gamma_q(a, x) - ref) <= 1e-12 + 1e-9 * ref);
    }
  }
  CHECK(regularized_gamma_q(2.0, 0.0) == 1.0);
}

TEST_CASE("Gauss-Legendre rule structure") {
  const auto& rule = gauss_legendre_20();
  double wsum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    wsum += w;
  }
  CHECK(std::abs(wsum - 2.0) < 1e-12);
  for (std::size_t i = 0; i + 1 < rule.nodes.size(); ++i) CHECK(rule.nodes[i] < rule.nodes[i + 1]);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(std::abs(rule.nodes[i] + rule.nodes[19 - i]) < 1e-15);
    CHECK(std::abs(rule.weights[i] - rule.weights[19 - i]) < 1e-15);
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 1.0);
  }
}

TEST_CASE("Gauss-Legendre rule is exact to degree 39") {
  const auto& rule = gauss_legendre_20();
  auto integrate = [&](int power) {
    double s = 0.0;
    for (std::size_t i = 0; i < 20; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], power);
    return s;
  };
  CHECK(integrate(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(integrate(38) == doctest::Approx(2.0 / 39.0).epsilon(1e-10));
  for (int p = 0; p <= 39; ++p) {
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CAPTURE(p);
    if (p % 2) {
      CHECK(std::abs(integrate(p)) < 1e-14);
    } else {
      CHECK(std::abs(integrate(p) - exact) / exact < 1e-10);
    }
  }
}

TEST_CASE("log_integrate_unit_interval of a constant and of a shifted integrand") {
  CHECK(std::abs(log_integrate_unit_interval([](double) { return 3.25; }) - 3.25) < 1e-13);
  auto base = [](double u) { return -4.0 * u * u + std::log1p(u); };
  const double a = log_integrate_unit_interval(base);
  const double b = log_integrate_unit_interval([&](double u) { return base(u) + 7.5; });
  CHECK(std::abs(b - a - 7.5) < 1e-12);
}

TEST_CASE("log_sum_exp examples and contract") {
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(log_sum_exp(zeros) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const std::vector<double> low{-1000.0, -1000.0};
  CHECK(std::abs(log_sum_exp(low) - (-1000.0 + std::log(2.0))) < 1e-12);
  const std::vector<double> single{5.0};
  CHECK(log_sum_exp(single) == 5.0);
  CHECK_THROWS_AS(log_sum_exp(std::vector<double>{}), std::invalid_argument);

  const std::vector<double> extreme{-1e308, -1e308};
  CHECK(log_sum_exp(extreme) == doctest::Approx(-1e308));
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> none{-inf, -inf};
  CHECK(log_sum_exp(none) == -inf);
}

TEST_CASE("log_sum_exp shift invariance") {
  const std::vector<double> v{-3.2, 0.7, 12.0, -40.0, 5.5};
  for (double c : {-800.0, -1.0, 0.3, 650.0}) {
    std::vector<double> shifted;
    for (double x : v) shifted.push_back(x - c);
    CHECK(std::abs(log_sum_exp(v) - (c + log_sum_exp(shifted))) < 1e-12 * std::max(1.0, std::abs(c)));
  }
}

TEST_CASE("CompensatedSum keeps small terms next to a large one") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);

  CompensatedSum t;
  t.add(2.0);
  t.add(-std::numeric_limits<double>::infinity());
  t.add(5.0);
  CHECK(t.value() == -std::numeric_limits<double>::infinity());
}

}  // TEST_SUITE
