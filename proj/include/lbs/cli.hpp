#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbs/dataset.hpp"
#include "lbs/gengamma.hpp"
#include "lbs/modelcheck.hpp"
#include "lbs/posterior.hpp"
#include "lbs/predict.hpp"
#include "lbs/sampler.hpp"

namespace lbs::cli {

inline constexpr double kDefaultMu0 = 0.0046;
inline constexpr double kDefaultBaseline = 125.0;

enum class SamplerKind { Random, Gibbs };
enum class Pairing { Shared, Refit };

struct RunConfig {
  std::optional<std::string> data_path;
  std::optional<std::string> embedded;        // "rep1" | "rep2"
  double baseline_w = kDefaultBaseline;
  std::optional<double> mu0;
  std::optional<std::string> calibrate_from;  // path or "embedded:repN"
  std::size_t draws = 1000;
  std::size_t grid = 400;
  std::uint64_t seed = 1;
  ModelVariant variant = ModelVariant::LengthBiased;
  PriorMode prior = PriorMode::f22();
  SamplerKind sampler = SamplerKind::Random;
  std::size_t burn_in = 200;
  std::size_t thin = 1;
  double resample_fraction = 0.1;
  bool with_replacement = false;
  std::optional<std::string> draws_file;      // predict: reuse fit output
  Pairing pairing = Pairing::Refit;
  std::size_t bins = 30;
  std::string out_dir = ".";

  void validate() const;
  SamplerConfig sampler_config() const;
};

struct Mu0Resolution {
  double mu0;
  bool calibrated = false;
  double n_hat = 0.0;
  std::vector<double> allocated;
};

TransectData load_data(const RunConfig& config);
TransectData load_dataset_source(const std::string& source, double baseline_w);
Mu0Resolution resolve_mu0(const RunConfig& config, const TransectData& inference);

struct FitArtifacts {
  std::vector<PosteriorDraw> draws;
  std::optional<GibbsDiagnostics> gibbs;
  nlohmann::ordered_json summary;
};

struct PipelineArtifacts {
  FitArtifacts fit;
  Mu0Resolution mu0;
  PredictionResult prediction;
  nlohmann::ordered_json summary;
};

struct CheckArtifacts {
  CpoReport biased;
  CpoReport unbiased;
  ModelComparison comparison;
  nlohmann::ordered_json summary;
};

// Each run_* writes its artifacts to config.out_dir and returns them.
FitArtifacts run_fit(const RunConfig& config);
PipelineArtifacts run_pipeline(const RunConfig& config);
CheckArtifacts run_check(const RunConfig& config);

/// Entry point for the `lbs` binary; args excludes the program name.
/// Exit codes: 0 ok, 2 configuration/input error, 3 numerical failure.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbs::cli
