#include "vcmajor/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace vcmajor {

void McConfig::validate() const {
  if (n < 1) throw std::invalid_argument("McConfig: n must be >= 1");
  if (reps < 2) throw std::invalid_argument("McConfig: reps must be >= 2");
  if (!family) throw std::invalid_argument("McConfig: no family");
  if (jobs < 1) throw std::invalid_argument("McConfig: jobs must be >= 1");
  if (!per_index.empty() && per_index.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("McConfig: per-index laws must have size n");
}

void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& body) {
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(jobs, 1), std::max<std::int64_t>(count, 1)));
  if (workers <= 1) {
    for (std::int64_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t r = next++; r < count && !failed; r = next++) body(r);
      } catch (...) {
        bool expected = false;
        if (failed.compare_exchange_strong(expected, true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Sample draw_replicate_sample(const McConfig& cfg, std::int64_t r) {
  Rng rng = make_rng(cfg.seed, stream::kSample, static_cast<std::uint64_t>(r));
  if (!cfg.per_index.empty()) return draw_sample(cfg.per_index, rng);
  return draw_sample(cfg.dist, static_cast<std::size_t>(cfg.n), rng);
}

std::vector<int> draw_replicate_signs(const McConfig& cfg, std::int64_t r) {
  Rng rng = make_rng(cfg.seed, stream::kSigns, static_cast<std::uint64_t>(r));
  std::vector<int> eps(static_cast<std::size_t>(cfg.n));
  for (auto& e : eps) e = rademacher(rng);
  return eps;
}

namespace {

McEstimate run(const McConfig& cfg, const std::function<double(std::int64_t)>& replicate) {
  cfg.validate();
  std::vector<double> vals(static_cast<std::size_t>(cfg.reps));
  parallel_for(cfg.reps, cfg.jobs, [&](std::int64_t r) { vals[static_cast<std::size_t>(r)] = replicate(r); });
  const auto s = summarize(vals);
  McEstimate e{s.mean, s.std_error, s.reps, {}};
  if (cfg.keep_per_rep) e.per_rep = std::move(vals);
  return e;
}

double combined(double se_lhs, double se_rhs) { return std::sqrt(se_lhs * se_lhs + 4.0 * se_rhs * se_rhs); }

}  // namespace

McEstimate estimate_Z(const McConfig& cfg) {
  return run(cfg, [&](std::int64_t r) { return cfg.family->sup_empirical(draw_replicate_sample(cfg, r)); });
}

McEstimate estimate_Zbar(const McConfig& cfg) {
  return run(cfg, [&](std::int64_t r) {
    const auto s = draw_replicate_sample(cfg, r);
    return cfg.family->sup_rademacher(s.values, draw_replicate_signs(cfg, r));
  });
}

McEstimate estimate_Zbar_exhaustive(const McConfig& cfg) {
  if (cfg.n > 16) throw std::invalid_argument("estimate_Zbar_exhaustive: n must be <= 16");
  return run(cfg, [&](std::int64_t r) {
    const auto s = draw_replicate_sample(cfg, r);
    const std::uint64_t patterns = std::uint64_t{1} << cfg.n;
    std::vector<double> w(static_cast<std::size_t>(cfg.n));
    double total = 0.0;
    for (std::uint64_t p = 0; p < patterns; ++p) {
      for (int i = 0; i < cfg.n; ++i) w[static_cast<std::size_t>(i)] = ((p >> i) & 1u) ? 1.0 : -1.0;
      total += cfg.family->weighted_extremes(s.values, w).abs();
    }
    return total / static_cast<double>(patterns);
  });
}

SymmetrizationResult symmetrization_check(const McConfig& cfg, bool exhaustive_signs) {
  SymmetrizationResult out;
  out.lhs = estimate_Z(cfg);
  out.rhs = exhaustive_signs ? estimate_Zbar_exhaustive(cfg) : estimate_Zbar(cfg);
  out.pass = out.lhs.mean <= 2.0 * out.rhs.mean + kMcSlack * combined(out.lhs.std_error, out.rhs.std_error);

  // Shifted form with a_i = a = E f(X) for one probe member f.
  if (cfg.per_index.empty() && cfg.dist.has_analytic_probabilities()) {
    Rng rng = make_rng(cfg.seed, stream::kProbe, 0);
    out.shift = cfg.dist.mean(cfg.family->random_member(rng));
    const double a = out.shift;
    out.shifted = run(cfg, [&](std::int64_t r) {
      const auto s = draw_replicate_sample(cfg, r);
      const auto eps = draw_replicate_signs(cfg, r);
      std::vector<double> w(eps.begin(), eps.end());
      double sum = 0.0;
      for (double v : w) sum += v;
      const auto e = cfg.family->weighted_extremes(s.values, w);
      return std::max(e.max - a * sum, a * sum - e.min);
    });
    out.shifted_pass =
        out.lhs.mean <= 2.0 * out.shifted.mean + kMcSlack * combined(out.lhs.std_error, out.shifted.std_error);
  } else {
    out.shifted_pass = true;
  }
  return out;
}

bool SweepRow::all_pass() const {
  return symmetrization_pass && std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

std::vector<SweepRow> dominance_sweep(const SweepConfig& cfg) {
  if (cfg.ns.empty()) throw std::invalid_argument("dominance_sweep: empty n grid");
  const bool capped = cfg.family == "intervals-capped";
  if (capped && cfg.sigmas.empty()) throw std::invalid_argument("dominance_sweep: empty sigma grid");
  FamilyOptions fopt;
  fopt.dist = cfg.dist;
  fopt.constant = cfg.constant;
  FamilyPtr fixed;
  std::vector<double> sigmas = cfg.sigmas;
  if (!capped) {
    fixed = make_family(cfg.family, fopt);
    sigmas = {fixed->sigma_of(cfg.dist)};
  }

  std::vector<SweepRow> rows;
  std::uint64_t point = 0;
  for (int n : cfg.ns)
    for (double sigma : sigmas) {
      SweepRow row;
      row.n = n;
      row.d = cfg.d;
      row.sigma = sigma;
      McConfig mc;
      mc.n = n;
      mc.reps = cfg.reps;
      mc.seed = derive_seed(cfg.seed, stream::kSweep, point++);
      mc.dist = cfg.dist;
      mc.jobs = cfg.jobs;
      if (capped) {
        if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("dominance_sweep: sigma must lie in (0,1]");
        fopt.cap = sigma * sigma;
        mc.family = make_family("intervals-capped", fopt);
      } else {
        mc.family = fixed;
      }
      row.family = mc.family->name();
      row.z = estimate_Z(mc);
      row.zbar = estimate_Zbar(mc);
      row.symmetrization_pass =
          row.z.mean <= 2.0 * row.zbar.mean + kMcSlack * combined(row.z.std_error, row.zbar.std_error);

      BoundInputs in;
      in.n = n;
      in.d = cfg.d;
      in.sigma = std::min(sigma, 1.0);
      in.b = 1.0;
      const auto report = evaluate_all(in);
      const double observed = row.z.mean + kMcSlack * row.z.std_error;
      for (const auto& name : cfg.bounds) {
        BoundCheck c;
        c.name = name;
        const auto* e = report.find(name);
        if (!e) throw std::invalid_argument("dominance_sweep: unknown bound " + name);
        c.value = e->value;
        c.valid = e->valid;
        c.note = e->note;
        if (c.valid) {
          c.margin = c.value - observed;
          c.pass = c.margin >= 0.0;
        } else {
          c.margin = std::numeric_limits<double>::quiet_NaN();
          c.pass = true;
        }
        row.checks.push_back(std::move(c));
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace vcmajor
