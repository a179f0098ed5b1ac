#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lbs/predict.hpp"
#include "lbs/sampler.hpp"
#include "lbs/summary.hpp"

namespace lbs {

// alpha,gamma,beta1..betaL; one row per draw.
void write_draws_csv(std::ostream& out, const std::vector<PosteriorDraw>& draws);
std::vector<PosteriorDraw> read_draws_csv(std::istream& in);

// mean,log_weight,sample_fraction,source_draw,N1..NL
void write_means_csv(std::ostream& out, const std::vector<PopulationMeanDraw>& means);
std::vector<PopulationMeanDraw> read_means_csv(std::istream& in);

// bin_lower,bin_upper,count
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace lbs
