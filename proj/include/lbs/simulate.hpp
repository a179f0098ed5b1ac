#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lbs/gengamma.hpp"
#include "lbs/random.hpp"
#include "lbs/sampler.hpp"

namespace lbs {

struct SimulationConfig {
  std::vector<GenGammaParams> true_params;     // one per stratum
  std::vector<std::size_t> population_sizes;   // N_i
  double baseline_length = 20.0;
  std::size_t replications = 50;
  std::uint64_t seed = 1;
  SamplerConfig sampler{};
  double resample_fraction = 0.1;
  double interval_level = 0.9;
  // When set, every unit is selected with this fixed probability instead of x / W.
  std::optional<double> constant_selection_probability;

  /// Also rejects W with P(x >= W) >= 1e-6 under any stratum's true parameters.
  void validate() const;
};

/// N_i unweighted GG draws per stratum, redrawing values >= W.
std::vector<std::vector<double>> generate_population(const SimulationConfig& config, Rng& rng);

struct Selection {
  std::vector<std::size_t> indices;
  std::vector<double> widths;
};

/// Independent Bernoulli(x_j / W) inclusion. Widths must lie in [0, W).
Selection length_biased_select(std::span<const double> widths, double baseline_length, Rng& rng);

/// Independent Bernoulli(p) inclusion regardless of width.
Selection constant_select(std::span<const double> widths, double probability, Rng& rng);

struct ReplicationOutcome {
  std::size_t index;
  double truth = 0.0;   // realized finite-population mean
  double lower = 0.0;
  double upper = 0.0;
  double median = 0.0;
  bool covered = false;
  std::size_t sample_size = 0;
  double mu0 = 0.0;
  std::string error;    // non-empty when the pipeline failed for this replication
};

struct RecoveryReport {
  std::vector<ReplicationOutcome> replications;
  double coverage = 0.0;        // over successful replications
  double mean_interval_width = 0.0;
  std::size_t failures = 0;
};

/// Simulate a population; draw a held-out selection for mu0 calibration and an
/// inference selection; fit, predict and record whether the central interval
/// covers the realized mean. Deterministic in config.seed.
RecoveryReport recovery_study(const SimulationConfig& config);

}  // namespace lbs
