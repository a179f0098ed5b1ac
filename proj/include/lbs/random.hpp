#pragma once

#include <cstdint>
#include <random>

namespace lbs {

// Random stream with distribution code that is bit-reproducible across
// standard libraries (only the engine comes from <random>).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for task `index` of a run seeded with `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t index);

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  // Gamma(shape, 1). shape > 0.
  double gamma(double shape);
  // ln of a Gamma(shape, 1) variate; stays finite for tiny shapes.
  double log_gamma_variate(double shape);
  // Failures before the first success, success probability p in (0, 1].
  std::uint64_t geometric(double p);
  std::uint64_t poisson(double mean);
  bool bernoulli(double p);
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lbs
