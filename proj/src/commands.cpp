#include "vcmajor/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "vcmajor/bounds.hpp"
#include "vcmajor/chaining.hpp"
#include "vcmajor/families.hpp"
#include "vcmajor/montecarlo.hpp"
#include "vcmajor/shatter.hpp"

namespace vcmajor {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
const std::set<std::string> kCommonKeys{"seed", "jobs", "format", "out"};

// Typed access to one command's config object with unknown-key rejection.
class Config {
 public:
  Config(const json& j, std::string command, std::set<std::string> keys) : j_(j), command_(std::move(command)) {
    if (!j_.is_object()) throw ConfigError(command_ + ": config must be a JSON object");
    keys.insert(kCommonKeys.begin(), kCommonKeys.end());
    for (const auto& [k, v] : j_.items())
      if (!keys.count(k)) throw ConfigError(command_ + ": unknown config key '" + k + "'");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const json& raw(const std::string& key) const { return j_.at(key); }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    return convert<T>(j_.at(key), key);
  }

  // A scalar or a list of scalars.
  template <class T>
  std::vector<T> list(const std::string& key, std::vector<T> fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    std::vector<T> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(convert<T>(e, key));
    } else {
      out.push_back(convert<T>(v, key));
    }
    if (out.empty()) throw ConfigError(command_ + ": '" + key + "' must not be empty");
    return out;
  }

  const std::string& command() const { return command_; }

 private:
  template <class T>
  T convert(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError("");
        return v.get<double>();
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) throw ConfigError("");
        const auto x = v.get<std::int64_t>();
        if (x < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
            (x > 0 && static_cast<std::uint64_t>(x) > static_cast<std::uint64_t>(std::numeric_limits<T>::max())))
          throw ConfigError("");
        return static_cast<T>(x);
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError("");
        return v.get<bool>();
      } else {
        if (!v.is_string()) throw ConfigError("");
        return v.get<std::string>();
      }
    } catch (const ConfigError&) {
      throw ConfigError(command_ + ": '" + key + "' has the wrong type or range");
    }
  }

  const json& j_;
  std::string command_;
};

std::uint64_t seed_of(const Config& c, const CommandOptions& opt) {
  if (opt.seed) return *opt.seed;
  return c.get<std::uint64_t>("seed", kDefaultSeed);
}

int jobs_of(const Config& c, const CommandOptions& opt) {
  const int jobs = opt.jobs ? *opt.jobs : c.get<int>("jobs", 1);
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  return jobs;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

FamilyPtr family_of(const Config& c, const std::string& fallback, const Distribution& dist) {
  FamilyOptions fopt;
  fopt.dist = dist;
  fopt.cap = c.get<double>("cap", 0.25);
  fopt.constant = c.get<double>("constant", 1.0);
  try {
    return make_family(c.get<std::string>("family", fallback), fopt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(c.command() + ": " + e.what());
  }
}

Distribution dist_of(const Config& c) { return c.has("dist") ? parse_distribution(c.raw("dist")) : Distribution::uniform(); }

Cell real(double v) { return v; }
Cell integer(std::int64_t v) { return v; }

// ---------------------------------------------------------------------------

CommandOutput cmd_bounds(const json& j, const CommandOptions& opt) {
  const Config c(j, "bounds", {"n", "d", "sigma", "b", "cor2_argument", "curve"});
  (void)jobs_of(c, opt);
  const auto ns = c.list<std::int64_t>("n", {100});
  const auto ds = c.list<int>("d", {1});
  const auto sigmas = c.list<double>("sigma", {0.1});
  const double b = c.get<double>("b", 1.0);
  const auto arg_name = c.get<std::string>("cor2_argument", "sigma_over_2b");
  EvaluateOptions eopt;
  if (arg_name == "sigma_over_2b") eopt.cor2_argument = Cor2Argument::SigmaOver2b;
  else if (arg_name == "sigma_over_b") eopt.cor2_argument = Cor2Argument::SigmaOverB;
  else throw ConfigError("bounds: cor2_argument must be sigma_over_2b or sigma_over_b");
  std::optional<GammaCurve> curve;
  if (c.has("curve")) {
    const auto& cj = c.raw("curve");
    require(cj.is_object(), "bounds: curve must be an object");
    for (const auto& [k, v] : cj.items())
      require(k == "knots" || k == "values" || k == "stderrs", "bounds: unknown curve key '" + k + "'");
    try {
      curve = GammaCurve{cj.at("knots").get<std::vector<double>>(), cj.at("values").get<std::vector<double>>(),
                         cj.value("stderrs", std::vector<double>{})};
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bounds: malformed curve: ") + e.what());
    }
    eopt.curve = &*curve;
  }

  Report rep;
  rep.command = "bounds";
  std::vector<std::string> entry_names;
  std::int64_t invalid = 0;
  for (auto n : ns)
    for (int d : ds)
      for (double sigma : sigmas) {
        BoundInputs in{n, d, sigma, b};
        try {
          in.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("bounds: ") + e.what());
        }
        BoundReport br;
        try {
          br = evaluate_all(in, eopt);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("bounds: ") + e.what());
        }
        if (rep.table.columns.empty()) {
          rep.table.columns = {"n", "d", "sigma", "b", "b_branch"};
          for (const auto& e : br.entries) {
            entry_names.push_back(e.name);
            rep.table.columns.push_back(e.name);
            rep.table.columns.push_back(e.name + "_valid");
          }
          for (const char* col : {"tightest", "tightest_value", "tightest_indicator", "tightest_indicator_value", "notes"})
            rep.table.columns.push_back(col);
        }
        std::vector<Cell> row{integer(n), integer(d), real(sigma), real(b)};
        const auto* bs = br.find("b_of_sigma");
        const auto branch_end = bs->note.find(';');
        row.push_back(bs->valid ? Cell{bs->note.substr(0, branch_end)} : Cell{std::monostate{}});
        std::string notes;
        for (const auto& name : entry_names) {
          const auto* e = br.find(name);
          row.push_back(real(e->value));
          row.push_back(e->valid);
          if (!e->valid) ++invalid;
          if (!e->note.empty() && name != "b_of_sigma") {
            const bool prefixed = e->note.rfind(name + ":", 0) == 0;
            notes += (notes.empty() ? "" : " | ") + (prefixed ? e->note : name + ": " + e->note);
          }
        }
        auto value_or_null = [&](const std::string& name) -> Cell {
          if (name.empty()) return std::monostate{};
          return real(br.value(name));
        };
        row.push_back(br.tightest);
        row.push_back(value_or_null(br.tightest));
        row.push_back(br.tightest_indicator);
        row.push_back(value_or_null(br.tightest_indicator));
        row.push_back(notes);
        rep.table.add_row(std::move(row));
      }
  rep.summary = {{"rows", integer(static_cast<std::int64_t>(rep.table.rows.size()))},
                 {"invalid_entries", integer(invalid)},
                 {"cor2_argument", std::string(to_string(eopt.cor2_argument))}};
  return {rep, kExitOk};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_simulate(const json& j, const CommandOptions& opt) {
  const Config c(j, "simulate", {"family", "sigma", "n", "d", "reps", "dist", "bounds", "constant"});
  SweepConfig sc;
  sc.family = c.get<std::string>("family", "intervals-capped");
  sc.sigmas = c.list<double>("sigma", {0.1, 0.2, 0.4});
  sc.ns = c.list<int>("n", {50, 100});
  sc.d = c.get<int>("d", 2);
  sc.reps = c.get<int>("reps", 2000);
  sc.seed = seed_of(c, opt);
  sc.jobs = jobs_of(c, opt);
  sc.dist = dist_of(c);
  sc.bounds = c.list<std::string>("bounds", {"thm1", "thm2", "prop4", "cor_set"});
  sc.constant = c.get<double>("constant", 1.0);
  require(sc.reps >= 2, "simulate: reps must be >= 2");
  for (int n : sc.ns) require(n >= 1, "simulate: n must be >= 1");
  require(sc.d >= 0, "simulate: d must be >= 0");
  if (sc.family == "intervals-capped")
    for (double s : sc.sigmas) require(s > 0.0 && s <= 1.0, "simulate: sigma must lie in (0,1]");

  std::vector<SweepRow> rows;
  try {
    rows = dominance_sweep(sc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("simulate: ") + e.what());
  }

  Report rep;
  rep.command = "simulate";
  rep.table.columns = {"family", "n", "d", "sigma", "z_mean", "z_stderr", "zbar_mean", "zbar_stderr", "symmetrization_pass"};
  for (const auto& name : sc.bounds)
    for (const char* suffix : {"", "_valid", "_margin", "_pass"}) rep.table.columns.push_back(name + suffix);
  rep.table.columns.push_back("all_pass");
  std::int64_t failures = 0;
  for (const auto& r : rows) {
    std::vector<Cell> row{r.family, integer(r.n), integer(r.d), real(r.sigma), real(r.z.mean), real(r.z.std_error),
                          real(r.zbar.mean), real(r.zbar.std_error), r.symmetrization_pass};
    for (const auto& chk : r.checks) {
      row.push_back(real(chk.value));
      row.push_back(chk.valid);
      row.push_back(chk.valid ? Cell{real(chk.margin)} : Cell{std::monostate{}});
      row.push_back(chk.pass);
    }
    const bool pass = r.all_pass();
    if (!pass) ++failures;
    row.push_back(pass);
    rep.table.add_row(std::move(row));
  }
  rep.summary = {{"points", integer(static_cast<std::int64_t>(rows.size()))},
                 {"failures", integer(failures)},
                 {"pass", failures == 0},
                 {"reps", integer(sc.reps)},
                 {"seed", integer(static_cast<std::int64_t>(sc.seed))},
                 {"slack_stderr", real(kMcSlack)}};
  return {rep, failures == 0 ? kExitOk : kExitViolation};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_shatter(const json& j, const CommandOptions& opt) {
  const Config c(j, "shatter", {"family", "n", "samples", "dist", "budget", "cap", "constant", "gamma_reps", "gamma_u",
                                "trace_cap"});
  const auto dist = dist_of(c);
  const auto family = family_of(c, "intervals", dist);
  const auto ns = c.list<int>("n", {3, 5, 8});
  const int samples = c.get<int>("samples", 10);
  const auto budget = c.get<std::int64_t>("budget", 2'000'000);
  const int gamma_reps = c.get<int>("gamma_reps", 0);
  const double gamma_u = c.get<double>("gamma_u", 0.5);
  const int trace_cap = c.get<int>("trace_cap", kDefaultTraceCap);
  const auto seed = seed_of(c, opt);
  (void)jobs_of(c, opt);
  require(samples >= 1, "shatter: samples must be >= 1");
  require(gamma_reps == 0 || gamma_reps >= 2, "shatter: gamma_reps must be 0 or >= 2");
  require(trace_cap >= 1 && trace_cap <= 128, "shatter: trace_cap must lie in [1,128]");
  for (int n : ns) require(n >= 1 && n <= trace_cap, "shatter: n must lie in [1, trace_cap]");

  Report rep;
  rep.command = "shatter";
  rep.table.columns = {"family", "n", "sample", "dim_estimate", "declared_dim", "exhaustive",
                       "levels", "max_traces", "sauer_bound", "sauer_ok"};
  const int declared = family->declared_weak_dim();
  int max_dim = 0;
  bool all_sauer = true;
  std::uint64_t index = 0;
  for (int n : ns)
    for (int s = 0; s < samples; ++s) {
      Rng rng = make_rng(seed, stream::kSample, index++);
      const auto sample = draw_sample(dist, static_cast<std::size_t>(n), rng);
      const auto grid = auto_u_grid(*family, sample.values);
      int dim = 0;
      bool exhaustive = true, sauer_ok = true;
      std::size_t max_traces = 0;
      for (double u : grid) {
        const auto t = trace(family->level_family(u), sample.values, trace_cap);
        const auto r = vc_dim_on_sample(t, budget, seed);
        dim = std::max(dim, r.dim);
        exhaustive = exhaustive && r.exhaustive;
        max_traces = std::max(max_traces, t.size());
        sauer_ok = sauer_ok && sauer_check(t, declared);
      }
      max_dim = std::max(max_dim, dim);
      all_sauer = all_sauer && sauer_ok;
      rep.table.add_row({family->name(), integer(n), integer(s), integer(dim), integer(declared), exhaustive,
                         integer(static_cast<std::int64_t>(grid.size())), integer(static_cast<std::int64_t>(max_traces)),
                         integer(static_cast<std::int64_t>(std::min<std::uint64_t>(sauer_bound(n, declared),
                                                                                   std::numeric_limits<std::int64_t>::max()))),
                         sauer_ok});
    }
  rep.summary = {{"family", family->name()},
                 {"declared_dim", integer(declared)},
                 {"dim_note", family->dim_note()},
                 {"max_dim_estimate", integer(max_dim)},
                 {"all_sauer_ok", all_sauer}};
  if (gamma_reps > 0) {
    rep.summary.emplace_back("gamma_u", real(gamma_u));
    for (int n : ns) {
      const auto e = gamma_u_estimate(*family, gamma_u, dist, n, gamma_reps, seed, trace_cap);
      rep.summary.emplace_back("gamma_mean_n" + std::to_string(n), real(e.mean));
      rep.summary.emplace_back("gamma_stderr_n" + std::to_string(n), real(e.std_error));
      rep.summary.emplace_back("gamma_bar_n" + std::to_string(n), real(gamma_bar(n, declared)));
    }
  }
  return {rep, kExitOk};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_chain(const json& j, const CommandOptions& opt) {
  const Config c(j, "chain", {"family", "n", "d", "eta0", "dist", "cap", "constant", "trace_cap", "level"});
  const auto dist = dist_of(c);
  const auto family = family_of(c, "intervals", dist);
  const int n = c.get<int>("n", 8);
  const int trace_cap = c.get<int>("trace_cap", 64);
  const double level = c.get<double>("level", 0.5);
  const int d = c.get<int>("d", family->declared_vc_major_dim().value_or(family->declared_weak_dim()));
  const auto seed = seed_of(c, opt);
  (void)jobs_of(c, opt);
  require(trace_cap >= 1 && trace_cap <= 128, "chain: trace_cap must lie in [1,128]");
  require(n >= 1 && n <= trace_cap, "chain: n must lie in [1, trace_cap]");
  require(d >= 1, "chain: d must be >= 1");

  Rng rng = make_rng(seed, stream::kSample, 0);
  const auto sample = draw_sample(dist, static_cast<std::size_t>(n), rng);
  Rng sign_rng = make_rng(seed, stream::kSigns, 0);
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (auto& e : eps) e = rademacher(sign_rng);
  const auto t = trace(family->level_family(level), sample.values, trace_cap);
  const double realized = realized_eta0(t);
  const double eta0 = c.get<double>("eta0", realized > 0.0 ? realized : 1.0);
  require(eta0 > 0.0 && eta0 <= 1.0, "chain: eta0 must lie in (0,1]");

  const auto cr = chaining_decomposition(t, eps, eta0, d);
  Report rep;
  rep.command = "chain";
  rep.table.columns = {"k", "eta_k", "packing_size", "h_eta_k", "level_sup", "cumulative"};
  for (const auto& l : cr.levels)
    rep.table.add_row({integer(l.k), real(l.eta), integer(static_cast<std::int64_t>(l.packing_size)), real(l.h),
                       real(l.level_sup), real(l.cumulative)});
  const double bound = conditional_chaining_bound(t, d);
  rep.summary = {{"family", family->name()},
                 {"n", integer(n)},
                 {"d", integer(d)},
                 {"traces", integer(static_cast<std::int64_t>(t.size()))},
                 {"eta0", real(eta0)},
                 {"realized_eta0", real(realized)},
                 {"zbar", real(cr.zbar)},
                 {"total", real(cr.total)},
                 {"telescoping_ok", cr.telescoping_ok},
                 {"increments_ok", cr.increments_ok},
                 {"final_exact", cr.final_exact},
                 {"master_ok", cr.master_ok},
                 {"conditional_bound", real(bound)}};
  if (n <= 20) {
    const double exact = exact_conditional_rademacher(t);
    rep.summary.emplace_back("exact_conditional_zbar", real(exact));
    rep.summary.emplace_back("bound_ok", exact <= bound);
  }
  return {rep, kExitOk};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_compare(const json& j, const CommandOptions& opt) {
  const Config c(j, "compare", {"family", "n", "sigma", "d", "reps", "dist", "cap", "constant", "gamma_reps",
                                "trace_cap"});
  const auto dist = dist_of(c);
  const auto family_name = c.get<std::string>("family", "intervals-capped");
  const auto ns = c.list<int>("n", {20});
  const bool capped = family_name == "intervals-capped";
  const auto sigmas = c.list<double>("sigma", {0.3});
  const int reps = c.get<int>("reps", 1000);
  const int gamma_reps = c.get<int>("gamma_reps", 0);
  const int trace_cap = c.get<int>("trace_cap", kDefaultTraceCap);
  const auto seed = seed_of(c, opt);
  const int jobs = jobs_of(c, opt);
  require(reps >= 2, "compare: reps must be >= 2");
  require(gamma_reps == 0 || gamma_reps >= 2, "compare: gamma_reps must be 0 or >= 2");

  const std::vector<std::string> names{"thm1", "thm1_general", "thm2",  "cor1",        "cor2",
                                       "cor_set", "prop4",     "betal", "gk_reference"};
  Report rep;
  rep.command = "compare";
  rep.table.columns = {"family", "n", "d", "sigma", "z_mean", "z_stderr", "zbar_mean", "zbar_stderr"};
  for (const auto& nm : names)
    for (const char* suffix : {"", "_valid", "_ratio"}) rep.table.columns.push_back(nm + suffix);
  rep.table.columns.push_back("tightest");
  rep.table.columns.push_back("tightest_indicator");

  std::uint64_t point = 0;
  for (int n : ns)
    for (double sigma_in : capped ? sigmas : std::vector<double>{0.0}) {
      require(n >= 1, "compare: n must be >= 1");
      FamilyOptions fopt;
      fopt.dist = dist;
      fopt.constant = c.get<double>("constant", 1.0);
      if (capped) {
        require(sigma_in > 0.0 && sigma_in <= 1.0, "compare: sigma must lie in (0,1]");
        fopt.cap = sigma_in * sigma_in;
      } else {
        fopt.cap = c.get<double>("cap", 0.25);
      }
      FamilyPtr family;
      try {
        family = make_family(family_name, fopt);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("compare: ") + e.what());
      }
      const int d = c.get<int>("d", family->declared_weak_dim());
      const double sigma = capped ? sigma_in : family->sigma_of(dist);
      McConfig mc;
      mc.n = n;
      mc.reps = reps;
      mc.seed = derive_seed(seed, stream::kSweep, point++);
      mc.family = family;
      mc.dist = dist;
      mc.jobs = jobs;
      const auto z = estimate_Z(mc);
      const auto zbar = estimate_Zbar(mc);

      std::optional<GammaCurve> curve;
      EvaluateOptions eopt;
      if (gamma_reps > 0 && n <= trace_cap) {
        const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        curve = gamma_curve(*family, dist, n, grid, gamma_reps, mc.seed, trace_cap);
        eopt.curve = &*curve;
      }
      const auto br = evaluate_all(BoundInputs{n, d, std::min(sigma, 1.0), 1.0}, eopt);
      std::vector<Cell> row{family->name(), integer(n), integer(d), real(sigma), real(z.mean), real(z.std_error),
                            real(zbar.mean), real(zbar.std_error)};
      for (const auto& nm : names) {
        const auto* e = br.find(nm);
        row.push_back(real(e->value));
        row.push_back(e->valid);
        row.push_back(e->valid && z.mean > 0.0 ? Cell{real(e->value / z.mean)} : Cell{std::monostate{}});
      }
      row.push_back(br.tightest);
      row.push_back(br.tightest_indicator);
      rep.table.add_row(std::move(row));
    }
  rep.summary = {{"points", integer(static_cast<std::int64_t>(rep.table.rows.size()))},
                 {"reps", integer(reps)},
                 {"seed", integer(static_cast<std::int64_t>(seed))}};
  return {rep, kExitOk};
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("format must be csv or json");
}

std::vector<std::string> command_names() { return {"bounds", "simulate", "shatter", "chain", "compare"}; }

CommandOutput run_command(const std::string& command, const json& config, const CommandOptions& opt) {
  const json& cfg = config.is_null() ? json::object() : config;
  try {
    if (command == "bounds") return cmd_bounds(cfg, opt);
    if (command == "simulate") return cmd_simulate(cfg, opt);
    if (command == "shatter") return cmd_shatter(cfg, opt);
    if (command == "chain") return cmd_chain(cfg, opt);
    if (command == "compare") return cmd_compare(cfg, opt);
  } catch (const UnsupportedFamily& e) {
    throw ConfigError(command + ": " + e.what());
  } catch (const CapExceeded& e) {
    throw ConfigError(command + ": " + e.what());
  }
  throw ConfigError("unknown command: " + command);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

Distribution parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("dist must be an object with a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  auto vec = [&](const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("dist: missing '") + key + "'");
    try {
      return j.at(key).get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("dist: '") + key + "' must be a list of numbers");
    }
  };
  auto only = [&](std::set<std::string> keys) {
    keys.insert("kind");
    for (const auto& [k, v] : j.items())
      if (!keys.count(k)) throw ConfigError("dist: unknown key '" + k + "'");
  };
  try {
    if (kind == "uniform") {
      only({});
      return Distribution::uniform();
    }
    if (kind == "discrete") {
      only({"atoms", "probs"});
      return Distribution::discrete(vec("atoms"), vec("probs"));
    }
    if (kind == "quantile") {
      only({"probs", "values"});
      return Distribution::quantile_table(vec("probs"), vec("values"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("dist: ") + e.what());
  }
  throw ConfigError("dist: kind must be uniform, discrete or quantile");
}

std::string render(const Report& r, Format f) { return f == Format::Json ? to_json(r) : to_csv(r.table); }

std::string render_summary(const Report& r) { return summary_to_csv(r.summary); }

}  // namespace vcmajor
