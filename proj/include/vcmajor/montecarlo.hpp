#pragma once

// Monte Carlo estimates of E[Z] and E[Zbar] through the families' exact
// suprema, the symmetrization check and the bound dominance sweep.
//
// Replicate r draws its sample from stream (seed, kSample, r) and its signs
// from (seed, kSigns, r); results are reduced in index order, so they do not
// depend on the number of worker threads.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vcmajor/bounds.hpp"
#include "vcmajor/distribution.hpp"
#include "vcmajor/families.hpp"
#include "vcmajor/stats.hpp"

namespace vcmajor {

struct McConfig {
  int n = 10;
  int reps = 1000;
  std::uint64_t seed = 0;
  FamilyPtr family;
  Distribution dist = Distribution::uniform();
  std::vector<Distribution> per_index;  // independent, non-identical laws when set (size n)
  int jobs = 1;
  bool keep_per_rep = false;

  void validate() const;  // throws std::invalid_argument
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::vector<double> per_rep;  // filled when keep_per_rep
};

// Runs body(r) for r in [0, count) on up to jobs threads; body must only
// touch slot r of its output.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& body);

Sample draw_replicate_sample(const McConfig& cfg, std::int64_t r);
std::vector<int> draw_replicate_signs(const McConfig& cfg, std::int64_t r);

McEstimate estimate_Z(const McConfig& cfg);
McEstimate estimate_Zbar(const McConfig& cfg);
// E_eps[Zbar] computed exactly (all 2^n sign vectors, n <= 16) on each
// sampled X; only the sample side carries Monte Carlo error.
McEstimate estimate_Zbar_exhaustive(const McConfig& cfg);

struct SymmetrizationResult {
  McEstimate lhs;      // E[Z]
  McEstimate rhs;      // E[Zbar]
  bool pass = false;   // lhs <= 2 rhs + 3 combined stderr
  double shift = 0.0;  // a = E f(X) for a probe member f
  McEstimate shifted;  // E sup_f |sum eps_i (f(X_i) - a)|
  bool shifted_pass = false;
};

SymmetrizationResult symmetrization_check(const McConfig& cfg, bool exhaustive_signs = false);

// 3 standard errors, the slack used by every Monte Carlo pass/fail check.
inline constexpr double kMcSlack = 3.0;

struct SweepConfig {
  std::string family = "intervals-capped";
  std::vector<double> sigmas{0.1, 0.2, 0.4};
  std::vector<int> ns{50, 100};
  int d = 2;
  int reps = 2000;
  std::uint64_t seed = 0;
  int jobs = 1;
  Distribution dist = Distribution::uniform();
  std::vector<std::string> bounds{"thm1", "thm2", "prop4", "cor_set"};
  double constant = 1.0;  // for the constant family
};

struct BoundCheck {
  std::string name;
  double value = 0.0;
  bool valid = true;
  double margin = 0.0;  // value - (mean Z + 3 stderr)
  bool pass = true;     // invalid bounds are excluded and pass
  std::string note;
};

struct SweepRow {
  std::string family;
  int n = 0;
  int d = 0;
  double sigma = 0.0;  // sigma fed to the bounds
  McEstimate z;
  McEstimate zbar;
  bool symmetrization_pass = true;
  std::vector<BoundCheck> checks;

  bool all_pass() const;
};

// For intervals-capped the cap is sigma^2 at every grid point; other
// families use their own sigma and ignore the sigma grid.
std::vector<SweepRow> dominance_sweep(const SweepConfig& cfg);

}  // namespace vcmajor
