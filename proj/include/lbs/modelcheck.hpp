#pragma once

#include <string>
#include <vector>

#include "lbs/dataset.hpp"
#include "lbs/gengamma.hpp"
#include "lbs/sampler.hpp"

namespace lbs {

struct CpoReport {
  std::vector<double> cpo;      // one per observation, data order
  std::vector<double> log_cpo;
  double lpml;                  // Σ log_cpo
  ModelVariant variant;         // likelihood used for scoring
  std::size_t draw_count;
  std::vector<std::size_t> outliers;  // log-CPO more than 2 sd below the mean
};

/// Harmonic-mean estimate of each observation's leave-one-out predictive
/// density, evaluated with the stratum's beta. Computed in log space.
CpoReport cpo(const TransectData& data, const std::vector<PosteriorDraw>& draws, ModelVariant variant);

struct ModelComparison {
  enum class Winner { First, Second, Indistinguishable };

  Winner winner;
  double lpml_difference;              // first - second
  std::vector<double> log_cpo_difference;
};

/// Larger LPML wins; |difference| < 0.01 is reported as indistinguishable.
ModelComparison compare_models(const CpoReport& first, const CpoReport& second);

std::string to_string(ModelComparison::Winner w);

}  // namespace lbs
