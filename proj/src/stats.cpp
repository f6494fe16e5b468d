#include "vcmajor/stats.hpp"

#include <cmath>
#include <vector>

namespace vcmajor {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Estimate summarize(std::span<const double> values) {
  Estimate e;
  e.reps = static_cast<std::int64_t>(values.size());
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  e.mean = pairwise_sum(values) / n;
  if (values.size() < 2) return e;
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - e.mean) * (values[i] - e.mean);
  const double var = pairwise_sum(dev) / (n - 1.0);
  e.std_error = std::sqrt(var / n);
  return e;
}

}  // namespace vcmajor
