#pragma once

#include <functional>
#include <span>
#include <stdexcept>

namespace vcmajor {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_depth = 48;
};

// Adaptive Simpson on [a,b]. Throws QuadratureError when some panel cannot
// meet its share of the tolerance within max_depth bisections.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same, but splits [a,b] at the given breakpoints (kinks of the integrand)
// and spreads the tolerance over the pieces.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt = {});

}  // namespace vcmajor
