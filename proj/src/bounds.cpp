#include "vcmajor/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vcmajor/quadrature.hpp"

namespace vcmajor {
namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kE = std::numbers::e;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// x log(c/x), extended by 0 at x = 0.
double xlog(double x, double c) { return x > 0.0 ? x * std::log(c / x) : 0.0; }

// Returns sum_{j<=k} C(n,j) exactly when it stays below 2^63.
std::optional<std::uint64_t> exact_binomial_sum(std::int64_t n, std::int64_t k) {
  using u128 = unsigned __int128;
  constexpr u128 kLimit = static_cast<u128>(1) << 63;
  u128 term = 1;
  u128 sum = 1;
  for (std::int64_t j = 1; j <= k; ++j) {
    term = term * static_cast<u128>(n - j + 1);
    term /= static_cast<u128>(j);  // exact: C(n,j-1)(n-j+1) is divisible by j
    sum += term;
    if (sum >= kLimit || term >= kLimit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(sum);
}

// log sum_{j<=k} C(n,j) in extended precision, anchored at the largest term.
long double log_binomial_sum(std::int64_t n, std::int64_t k) {
  const std::int64_t anchor = std::min(k, n / 2);
  const long double nl = static_cast<long double>(n);
  const long double log_anchor = std::lgamma(nl + 1.0L) -
                                 std::lgamma(static_cast<long double>(anchor) + 1.0L) -
                                 std::lgamma(static_cast<long double>(n - anchor) + 1.0L);
  // Neumaier summation of C(n,j)/C(n,anchor).
  long double sum = 0.0L, comp = 0.0L;
  auto add = [&](long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };
  add(1.0L);
  long double r = 1.0L;
  for (std::int64_t j = anchor; j > 0; --j) {
    r *= static_cast<long double>(j) / static_cast<long double>(n - j + 1);
    if (r < 1e-40L) break;
    add(r);
  }
  r = 1.0L;
  for (std::int64_t j = anchor; j < k; ++j) {
    r *= static_cast<long double>(n - j) / static_cast<long double>(j + 1);
    if (r < 1e-40L) break;
    add(r);
  }
  return log_anchor + std::log(sum + comp);
}

}  // namespace

void BoundInputs::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (d < 0) throw std::invalid_argument("d must be >= 0");
  if (!(b > 0.0)) throw std::invalid_argument("b must be > 0");
  if (!(sigma >= 0.0 && sigma <= b)) throw std::invalid_argument("sigma must lie in [0, b]");
}

double GammaCurve::operator()(double u) const {
  if (knots.empty()) throw std::invalid_argument("empty Gamma_u curve");
  if (u <= knots.front()) return values.front();
  if (u >= knots.back()) return values.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), u);
  const auto k = static_cast<std::size_t>(it - knots.begin());  // knots[k-1] <= u < knots[k]
  const double t = (u - knots[k - 1]) / (knots[k] - knots[k - 1]);
  return values[k - 1] + t * (values[k] - values[k - 1]);
}

void GammaCurve::validate(std::int64_t n) const {
  if (knots.empty() || knots.size() != values.size())
    throw std::invalid_argument("Gamma_u curve: knots and values must be nonempty and aligned");
  if (!stderrs.empty() && stderrs.size() != knots.size())
    throw std::invalid_argument("Gamma_u curve: stderr vector misaligned");
  const double ceiling = static_cast<double>(n + 1) * kLog2;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (!(knots[k] > 0.0 && knots[k] < 1.0)) throw std::invalid_argument("Gamma_u curve: knot outside (0,1)");
    if (k > 0 && knots[k] < knots[k - 1]) throw std::invalid_argument("Gamma_u curve: knots must be nondecreasing");
    if (!(values[k] >= kLog2 * (1 - 1e-12) && values[k] <= ceiling * (1 + 1e-12)))
      throw std::invalid_argument("Gamma_u curve: value outside [log 2, (n+1) log 2]");
  }
}

bool GammaCurve::dominated_by(double cap) const {
  return std::all_of(values.begin(), values.end(), [cap](double v) { return v <= cap; });
}

GammaCurve GammaCurve::constant(double value) { return {{0.5}, {value}, {0.0}}; }

double gamma_bar(std::int64_t n, int d) {
  require(n >= 1, "gamma_bar: n must be >= 1");
  require(d >= 0, "gamma_bar: d must be >= 0");
  const std::int64_t k = std::min<std::int64_t>(d, n);
  if (k == n) return static_cast<double>(n + 1) * kLog2;
  if (auto s = exact_binomial_sum(n, k)) return std::log(2.0 * static_cast<double>(*s));
  return static_cast<double>(static_cast<long double>(kLog2) + log_binomial_sum(n, k));
}

double gamma_bar_upper(std::int64_t n, int d) {
  require(n >= 1, "gamma_bar_upper: n must be >= 1");
  require(d >= 1, "gamma_bar_upper: d must be >= 1");
  const double k = static_cast<double>(std::min<std::int64_t>(d, n));
  return k * std::log(2.0 * kE * static_cast<double>(n) / k);
}

double h_bar(double x, int d) {
  require(d >= 1, "h_bar: d must be >= 1");
  require(x >= 0.0 && x <= 1.0, "h_bar: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  return x * std::sqrt(d * (5.0 + std::log(1.0 / x)));
}

double a_threshold(std::int64_t n, int d) {
  require(d >= 1, "a_threshold: d must be >= 1");
  return std::min(1.0, 32.0 * std::sqrt(gamma_bar(n, d) / static_cast<double>(n)));
}

double b_of_sigma(double sigma, std::int64_t n, int d) {
  require(sigma >= 0.0 && sigma <= 1.0, "b_of_sigma: sigma must lie in [0,1]");
  const double a = a_threshold(n, d);
  const double x = sigma >= a ? xlog(sigma, 1.0) + sigma : sigma * std::log(1.0 / a) + a;
  // x <= 1 analytically on both branches; absorb rounding at sigma near 1.
  return h_bar(std::min(x, 1.0), d);
}

double thm1_bound(double sigma, std::int64_t n, int d) {
  require(sigma >= 0.0 && sigma <= 1.0, "thm1_bound: sigma must lie in [0,1]");
  const double g = gamma_bar(n, d);
  const double root = std::sqrt(g);
  return 2.0 * root * (xlog(sigma, kE) * std::sqrt(2.0 * static_cast<double>(n)) + 4.0 * root);
}

double thm1_general_bound(const GammaCurve& curve, double sigma, std::int64_t n) {
  require(sigma >= 0.0 && sigma <= 1.0, "thm1_general_bound: sigma must lie in [0,1]");
  curve.validate(n);
  const auto root = [&](double u) { return std::sqrt(curve(u)); };
  const std::span<const double> knots(curve.knots);
  const double head = integrate_piecewise(root, 0.0, sigma, knots);
  const double tail = sigma > 0.0
                          ? integrate_piecewise([&](double u) { return root(u) / u; }, sigma, 1.0, knots)
                          : 0.0;
  const double area = integrate_piecewise([&](double u) { return curve(u); }, 0.0, 1.0, knots);
  return 2.0 * std::sqrt(2.0 * static_cast<double>(n)) * (head + sigma * tail) + 8.0 * area;
}

double thm2_bound(double sigma, std::int64_t n, int d) {
  require(d >= 1, "thm2_bound: d must be >= 1");
  return 10.0 * std::sqrt(static_cast<double>(n)) * b_of_sigma(sigma, n, d);
}

double cor1_bound(double sigma, std::int64_t n, int d, double b) {
  require(b > 0.0, "cor1_bound: b must be > 0");
  require(sigma >= 0.0 && sigma <= b, "cor1_bound: sigma must lie in [0,b]");
  require(d >= 1, "cor1_bound: d must be >= 1");
  const double g = gamma_bar(n, d);
  const double nn = static_cast<double>(n);
  const double entropy_branch = xlog(sigma, kE * b) * std::sqrt(2.0 * nn * g) + 4.0 * b * g;
  const double chaining_branch = 5.0 * std::sqrt(nn) * b * b_of_sigma(std::min(sigma / b, 1.0), n, d);
  return 4.0 * std::min(entropy_branch, chaining_branch);
}

namespace {

double cor2_value(double sigma_sd, std::int64_t n, int d, double b, Cor2Argument arg) {
  const double g = gamma_bar(n, d);
  const double nn = static_cast<double>(n);
  const double entropy_branch = 2.0 * xlog(sigma_sd, 2.0 * kE * b) * std::sqrt(2.0 * nn * g) + 16.0 * b * g;
  const double x = arg == Cor2Argument::SigmaOver2b ? sigma_sd / (2.0 * b) : sigma_sd / b;
  const double chaining_branch = 20.0 * std::sqrt(nn) * b * b_of_sigma(std::min(x, 1.0), n, d);
  return std::min(entropy_branch, chaining_branch);
}

}  // namespace

double cor2_bound(double sigma_sd, std::int64_t n, int d, double b, Cor2Argument arg) {
  require(b > 0.0, "cor2_bound: b must be > 0");
  require(sigma_sd > 0.0 && sigma_sd <= b, "cor2_bound: sigma_sd must lie in (0,b]");
  require(d >= 1, "cor2_bound: d must be >= 1");
  return cor2_value(sigma_sd, n, d, b, arg);
}

double thm3_indicator_bound(double sigma, std::int64_t n, double gamma) {
  require(sigma >= 0.0 && sigma <= 1.0, "thm3_indicator_bound: sigma must lie in [0,1]");
  require(gamma >= kLog2 * (1 - 1e-12), "thm3_indicator_bound: Gamma must be >= log 2");
  return 2.0 * (sigma * std::sqrt(2.0 * static_cast<double>(n) * gamma) + 4.0 * gamma);
}

double cor_set_bound(double sigma, std::int64_t n, int d) {
  return thm3_indicator_bound(sigma, n, gamma_bar(n, d));
}

double prop4_bound(double sigma, std::int64_t n, int d) {
  require(sigma >= 0.0 && sigma <= 1.0, "prop4_bound: sigma must lie in [0,1]");
  return 10.0 * std::sqrt(static_cast<double>(n)) * h_bar(std::max(sigma, a_threshold(n, d)), d);
}

double massart_finite_bound(std::size_t cardinality, double max_sq_norm) {
  if (cardinality == 0) throw std::invalid_argument("massart_finite_bound: T must be nonempty");
  return std::sqrt(2.0 * std::log(2.0 * static_cast<double>(cardinality)) * max_sq_norm);
}

double massart_finite_bound(std::span<const std::vector<double>> vectors) {
  double v2 = 0.0;
  for (const auto& t : vectors) {
    double s = 0.0;
    for (double x : t) s += x * x;
    v2 = std::max(v2, s);
  }
  return massart_finite_bound(vectors.size(), v2);
}

double gk_reference(double sigma, std::int64_t n) {
  require(n >= 1, "gk_reference: n must be >= 1");
  require(sigma > 0.0 && sigma < std::exp(-kE), "gk_reference: sigma must lie in (0, e^-e)");
  const double l1 = std::log(1.0 / sigma);
  const double big_l = std::pow(l1, 1.5) * std::log(l1);
  return sigma * std::sqrt(static_cast<double>(n) * big_l) + big_l + std::sqrt(std::log(static_cast<double>(n)));
}

BetalResult betal_bound(double sigma, std::int64_t n, int d) {
  require(sigma > 0.0 && sigma <= 1.0, "betal_bound: sigma must lie in (0,1]");
  require(d >= 1, "betal_bound: d must be >= 1");
  const double nn = static_cast<double>(n);
  const double log_term = std::log(4.0 * kE * kE / sigma);
  BetalResult r;
  r.value = 72.0 * std::sqrt(nn) * sigma * std::sqrt(d * log_term);
  r.valid = sigma >= 24.0 * std::sqrt(d / (5.0 * nn) * log_term);
  return r;
}

// ---------------------------------------------------------------------------

const BoundEntry* BoundReport::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

double BoundReport::value(std::string_view name) const {
  if (const auto* e = find(name)) return e->value;
  throw std::out_of_range("no bound entry named " + std::string(name));
}

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Auxiliary: return "auxiliary";
    case BoundKind::Function: return "function";
    case BoundKind::Indicator: return "indicator";
    case BoundKind::Reference: return "reference";
  }
  return "?";
}

const char* to_string(Cor2Argument a) {
  return a == Cor2Argument::SigmaOver2b ? "sigma_over_2b" : "sigma_over_b";
}

namespace {

template <class F>
BoundEntry make_entry(std::string name, BoundKind kind, F&& compute) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = kind;
  try {
    e.value = compute();
  } catch (const std::domain_error& ex) {
    e.value = std::numeric_limits<double>::quiet_NaN();
    e.valid = false;
    e.note = ex.what();
  }
  return e;
}

BoundEntry invalid_entry(std::string name, BoundKind kind, std::string note) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = kind;
  e.value = std::numeric_limits<double>::quiet_NaN();
  e.valid = false;
  e.note = std::move(note);
  return e;
}

}  // namespace

BoundReport evaluate_all(const BoundInputs& in, const EvaluateOptions& opt) {
  in.validate();
  BoundReport rep;
  rep.inputs = in;
  auto& out = rep.entries;
  const std::int64_t n = in.n;
  const int d = in.d;
  const double s = in.sigma;
  const bool unit_range = in.b == 1.0;
  const bool has_dim = d >= 1;
  const char* need_dim = "requires d >= 1";
  const char* need_unit = "requires [0,1]-valued functions (b = 1)";

  auto gated = [&](std::string name, BoundKind kind, bool need_d, bool need_b, auto compute) {
    if (need_d && !has_dim) return invalid_entry(std::move(name), kind, need_dim);
    if (need_b && !unit_range) return invalid_entry(std::move(name), kind, need_unit);
    return make_entry(std::move(name), kind, compute);
  };

  out.push_back(make_entry("gamma_bar", BoundKind::Auxiliary, [&] { return gamma_bar(n, d); }));
  out.push_back(gated("gamma_bar_upper", BoundKind::Auxiliary, true, false, [&] { return gamma_bar_upper(n, d); }));
  out.push_back(gated("a_threshold", BoundKind::Auxiliary, true, false, [&] { return a_threshold(n, d); }));
  {
    auto e = gated("b_of_sigma", BoundKind::Auxiliary, true, false,
                   [&] { return b_of_sigma(std::min(s / in.b, 1.0), n, d); });
    if (e.valid) {
      e.note = s / in.b >= a_threshold(n, d) ? "branch sigma>=a" : "branch sigma<a";
      if (!unit_range) e.note += "; evaluated at sigma/b";
    }
    out.push_back(std::move(e));
  }

  out.push_back(gated("thm1", BoundKind::Function, false, true, [&] { return thm1_bound(s, n, d); }));
  if (opt.curve) {
    auto e = gated("thm1_general", BoundKind::Function, false, true,
                   [&] { return thm1_general_bound(*opt.curve, s, n); });
    if (e.valid && has_dim && !opt.curve->dominated_by(gamma_bar(n, d)))
      e.note = "curve exceeds gamma_bar(n,d) somewhere";
    out.push_back(std::move(e));
  } else {
    out.push_back(invalid_entry("thm1_general", BoundKind::Function, "no Gamma_u curve supplied"));
  }
  out.push_back(gated("thm2", BoundKind::Function, true, true, [&] { return thm2_bound(s, n, d); }));
  out.push_back(gated("cor1", BoundKind::Function, true, false, [&] { return cor1_bound(s, n, d, in.b); }));
  {
    auto e = gated("cor2", BoundKind::Function, true, false,
                   [&] { return cor2_value(s, n, d, in.b, opt.cor2_argument); });
    if (e.valid) {
      e.note = std::string("sigma read as a standard deviation; second branch at B(") +
               (opt.cor2_argument == Cor2Argument::SigmaOver2b ? "sigma/(2b)" : "sigma/b") +
               "), alternative argument selectable";
      if (s == 0.0) e.note += "; sigma=0 by continuity";
    }
    out.push_back(std::move(e));
  }

  out.push_back(gated("cor_set", BoundKind::Indicator, false, true, [&] { return cor_set_bound(s, n, d); }));
  out.push_back(gated("prop4", BoundKind::Indicator, true, true, [&] { return prop4_bound(s, n, d); }));
  if (!has_dim) {
    out.push_back(invalid_entry("betal", BoundKind::Indicator, need_dim));
  } else if (!unit_range) {
    out.push_back(invalid_entry("betal", BoundKind::Indicator, need_unit));
  } else if (s == 0.0) {
    out.push_back(invalid_entry("betal", BoundKind::Indicator, "side constraint on sigma fails at sigma=0"));
  } else {
    const auto r = betal_bound(s, n, d);
    BoundEntry e{"betal", r.value, r.valid, r.valid ? "" : "side constraint on sigma fails", BoundKind::Indicator};
    out.push_back(std::move(e));
  }

  {
    auto e = make_entry("gk_reference", BoundKind::Reference, [&] { return gk_reference(s, n); });
    e.note = e.valid ? "order only; no explicit constant" : e.note + "; order only";
    out.push_back(std::move(e));
  }

  auto pick = [&](std::initializer_list<std::string_view> names) {
    std::string best;
    double best_value = std::numeric_limits<double>::infinity();
    for (auto nm : names) {
      const auto* e = rep.find(nm);
      if (e && e->valid && e->value < best_value) {
        best_value = e->value;
        best = e->name;
      }
    }
    return best;
  };
  rep.tightest = unit_range ? pick({"thm1", "thm1_general", "thm2"}) : pick({"cor1"});
  rep.tightest_indicator = pick({"thm1", "thm1_general", "thm2", "cor_set", "prop4", "betal"});
  return rep;
}

}  // namespace vcmajor
