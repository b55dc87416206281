#pragma once

#include <cstdint>

namespace percolab {

// Point estimate with a 95% interval. Binomial frequencies use the Wilson
// score interval; replica means use a normal interval.
struct EstimateCI {
  double value = 0.0;
  double stderr_value = 0.0;
  std::uint64_t n_samples = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t n);

EstimateCI mean_estimate(const double* values, std::uint64_t n);

}  // namespace percolab
