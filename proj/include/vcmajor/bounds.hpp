#pragma once

// Closed-form upper bounds on E[Z(F)], the expected supremum of the centred
// empirical process over a (weak) VC-major family, and the auxiliary
// functions they are built from.
//
// Conventions shared by every function below:
//   * n >= 1 is the sample size and d the (weak) VC dimension;
//   * sigma is the root-mean-square proxy sup_f (n^-1 sum E f^2(X_i))^{1/2}
//     (standard deviations for cor2_bound);
//   * sigma*log(1/sigma) and sigma*log(e/sigma) are extended by 0 at sigma=0;
//   * violated preconditions throw std::domain_error.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vcmajor {

struct BoundInputs {
  std::int64_t n = 1;
  int d = 1;
  double sigma = 1.0;
  double b = 1.0;

  // n >= 1, d >= 0, b > 0, 0 <= sigma <= b. d = 0 is representable; bounds
  // that need d >= 1 flag themselves invalid in evaluate_all.
  void validate() const;
};

// Gamma_u on a grid of levels u in (0,1); linear between knots and constant
// beyond the outermost knots.
struct GammaCurve {
  std::vector<double> knots;
  std::vector<double> values;
  std::vector<double> stderrs;

  double operator()(double u) const;
  // Knots nondecreasing in (0,1), values within [log 2, (n+1) log 2].
  void validate(std::int64_t n) const;
  // True when every value is <= cap (e.g. gamma_bar(n, d)).
  bool dominated_by(double cap) const;

  static GammaCurve constant(double value);
};

enum class Cor2Argument { SigmaOver2b, SigmaOverB };

// log[2 * sum_{j=0}^{d∧n} C(n,j)]
double gamma_bar(std::int64_t n, int d);
// (d∧n) log(2en/(d∧n)), an upper bound on gamma_bar for d >= 1.
double gamma_bar_upper(std::int64_t n, int d);

// x sqrt(d (5 + log(1/x))) on [0,1], with h_bar(0) = 0.
double h_bar(double x, int d);
// (32 sqrt(gamma_bar(n,d)/n)) ∧ 1
double a_threshold(std::int64_t n, int d);
// Piecewise B(sigma) with the switch at sigma = a_threshold(n,d).
double b_of_sigma(double sigma, std::int64_t n, int d);

double thm1_bound(double sigma, std::int64_t n, int d);
// The Gamma_u-curve version; integrals by adaptive quadrature (tol 1e-8).
double thm1_general_bound(const GammaCurve& curve, double sigma, std::int64_t n);
double thm2_bound(double sigma, std::int64_t n, int d);
// [-b,b]-valued families.
double cor1_bound(double sigma, std::int64_t n, int d, double b);
// iid, VC-major, sigma_sd = sup of standard deviations.
double cor2_bound(double sigma_sd, std::int64_t n, int d, double b,
                  Cor2Argument arg = Cor2Argument::SigmaOver2b);
// Indicator families: 2[sigma sqrt(2 n Gamma) + 4 Gamma].
double thm3_indicator_bound(double sigma, std::int64_t n, double gamma);
// thm3_indicator_bound with Gamma = gamma_bar(n,d).
double cor_set_bound(double sigma, std::int64_t n, int d);
double prop4_bound(double sigma, std::int64_t n, int d);

// sqrt(2 log(2|T|) v^2) with v^2 = max_t |t|^2.
double massart_finite_bound(std::span<const std::vector<double>> vectors);
// Same bound when |T| and v^2 are already known.
double massart_finite_bound(std::size_t cardinality, double max_sq_norm);

// Order-only reference curve for 0 < sigma < e^{-e}; no explicit constant.
double gk_reference(double sigma, std::int64_t n);

struct BetalResult {
  double value = 0.0;
  bool valid = false;  // side constraint on sigma holds
};
BetalResult betal_bound(double sigma, std::int64_t n, int d);

// ---------------------------------------------------------------------------
// Catalog evaluation.

enum class BoundKind {
  Auxiliary,  // gamma_bar, a, B(sigma), ...
  Function,   // bounds for general [0,1]- or [-b,b]-valued families
  Indicator,  // bounds that need an indicator family
  Reference   // order-only, never selected as tightest
};

struct BoundEntry {
  std::string name;
  double value = 0.0;
  bool valid = true;
  std::string note;
  BoundKind kind = BoundKind::Function;
};

struct McSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
};

struct BoundReport {
  BoundInputs inputs;
  std::vector<BoundEntry> entries;
  std::optional<McSummary> mc_estimate;
  std::string tightest;            // among valid Function entries
  std::string tightest_indicator;  // among valid Indicator entries

  const BoundEntry* find(std::string_view name) const;
  double value(std::string_view name) const;  // throws std::out_of_range
};

struct EvaluateOptions {
  Cor2Argument cor2_argument = Cor2Argument::SigmaOver2b;
  const GammaCurve* curve = nullptr;
};

BoundReport evaluate_all(const BoundInputs& inputs, const EvaluateOptions& opt = {});

const char* to_string(BoundKind k);
const char* to_string(Cor2Argument a);

}  // namespace vcmajor
