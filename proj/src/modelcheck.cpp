#include "lbs/modelcheck.hpp"

#include <cmath>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {

CpoReport cpo(const TransectData& data, const std::vector<PosteriorDraw>& draws, ModelVariant variant) {
  if (draws.empty()) throw ValidationError("cpo: no posterior draws");
  const double log_m = std::log(static_cast<double>(draws.size()));

  CpoReport report{{}, {}, 0.0, variant, draws.size(), {}};
  std::vector<double> neg_ll(draws.size());
  CompensatedSum lpml;
  for (std::size_t i = 0; i < data.stratum_count(); ++i) {
    for (double x : data.strata()[i].widths) {
      for (std::size_t h = 0; h < draws.size(); ++h) {
        neg_ll[h] = -gg_log_pdf(x, draws[h].stratum_params(i), variant);
      }
      // ln CPO = -ln( (1/M) Σ 1/f )
      const double log_cpo = -(log_sum_exp(neg_ll) - log_m);
      report.log_cpo.push_back(log_cpo);
      report.cpo.push_back(std::exp(log_cpo));
      lpml.add(log_cpo);
    }
  }
  report.lpml = lpml.value();

  const double count = static_cast<double>(report.log_cpo.size());
  const double mean = report.lpml / count;
  double ss = 0.0;
  for (double v : report.log_cpo) ss += (v - mean) * (v - mean);
  const double sd = report.log_cpo.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  for (std::size_t k = 0; k < report.log_cpo.size(); ++k) {
    if (report.log_cpo[k] < mean - 2.0 * sd) report.outliers.push_back(k);
  }
  return report;
}

ModelComparison compare_models(const CpoReport& first, const CpoReport& second) {
  if (first.log_cpo.size() != second.log_cpo.size()) {
    throw ValidationError("compare_models: reports cover different observation counts");
  }
  ModelComparison cmp;
  cmp.lpml_difference = first.lpml - second.lpml;
  if (std::abs(cmp.lpml_difference) < 0.01) {
    cmp.winner = ModelComparison::Winner::Indistinguishable;
  } else {
    cmp.winner = cmp.lpml_difference > 0 ? ModelComparison::Winner::First
                                         : ModelComparison::Winner::Second;
  }
  cmp.log_cpo_difference.reserve(first.log_cpo.size());
  for (std::size_t k = 0; k < first.log_cpo.size(); ++k) {
    cmp.log_cpo_difference.push_back(first.log_cpo[k] - second.log_cpo[k]);
  }
  return cmp;
}

std::string to_string(ModelComparison::Winner w) {
  switch (w) {
    case ModelComparison::Winner::First: return "first";
    case ModelComparison::Winner::Second: return "second";
    case ModelComparison::Winner::Indistinguishable: return "indistinguishable";
  }
  return "indistinguishable";
}

}  // namespace lbs
