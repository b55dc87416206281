#include "percolab/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace percolab {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("wilson_estimate: n must be positive");
  const double phat = static_cast<double>(successes) / static_cast<double>(n);
  const double z2 = kZ95 * kZ95;
  const double nn = static_cast<double>(n);
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      kZ95 * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  EstimateCI e;
  e.value = phat;
  e.stderr_value = std::sqrt(phat * (1.0 - phat) / nn);
  e.n_samples = n;
  e.ci_low = center - half;
  e.ci_high = center + half;
  return e;
}

EstimateCI mean_estimate(const double* values, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mean_estimate: n must be positive");
  double sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) sum += values[i];
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) ss += (values[i] - mean) * (values[i] - mean);
  const double var = (n > 1) ? ss / static_cast<double>(n - 1) : 0.0;
  const double se = std::sqrt(var / static_cast<double>(n));
  EstimateCI e;
  e.value = mean;
  e.stderr_value = se;
  e.n_samples = n;
  e.ci_low = mean - kZ95 * se;
  e.ci_high = mean + kZ95 * se;
  return e;
}

}  // namespace percolab
