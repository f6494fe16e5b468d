#include "vcmajor/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vcmajor {
namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (!std::isfinite(delta)) throw QuadratureError("non-finite integrand value");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw QuadratureError("adaptive Simpson did not reach the requested tolerance");
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opt);
  // Start from four panels so that a coincidentally flat first estimate
  // cannot stop the recursion early.
  constexpr int kPanels = 4;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == kPanels) ? b : lo + h;
    const double fa = f(lo), fm = f(0.5 * (lo + hi)), fb = f(hi);
    total += refine(f, {lo, hi, fa, fm, fb, simpson(lo, hi, fa, fm, fb)}, opt.abs_tol / kPanels,
                    opt.max_depth);
  }
  return total;
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto pieces = static_cast<double>(cuts.size() - 1);
  QuadratureOptions sub = opt;
  sub.abs_tol = opt.abs_tol / pieces;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += integrate(f, cuts[k], cuts[k + 1], sub);
  return total;
}

}  // namespace vcmajor
