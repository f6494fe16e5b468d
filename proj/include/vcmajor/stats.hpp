#pragma once

#include <cstdint>
#include <span>

namespace vcmajor {

// Monte Carlo mean with its standard error (sample sd / sqrt(reps)).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
};

// Pairwise summation in index order, so the result does not depend on how
// the values were produced.
double pairwise_sum(std::span<const double> v);

Estimate summarize(std::span<const double> values);

}  // namespace vcmajor
