#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace randap {

struct BinomialInterval {
  double estimate;
  double lower;
  double upper;
};

/// Wilson score interval; z = 1.96 gives the 95% interval.
inline BinomialInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                        double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {phat, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace randap
