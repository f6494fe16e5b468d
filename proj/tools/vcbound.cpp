// vcbound: bound evaluation, Monte Carlo checks and combinatorial diagnostics.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vcmajor/commands.hpp"
#include "vcmajor/quadrature.hpp"

namespace {

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::optional<std::string> format;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw vcmajor::ConfigError("cannot write " + path);
  f << body;
}

int run(const std::string& command, const Args& a) {
  using namespace vcmajor;
  nlohmann::json cfg = a.config.empty() ? nlohmann::json::object() : load_config(a.config);
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  std::string format = "csv";
  if (a.format) format = *a.format;
  else if (cfg.contains("format")) format = cfg.at("format").get<std::string>();
  const auto f = parse_format(format);
  std::string out = a.out;
  if (out.empty() && cfg.contains("out")) out = cfg.at("out").get<std::string>();

  const auto result = run_command(command, cfg, CommandOptions{a.seed, a.jobs});
  const auto body = render(result.report, f);
  if (out.empty()) {
    std::cout << body;
    if (f == Format::Csv && !result.report.summary.empty()) std::cout << "\n" << render_summary(result.report);
  } else {
    write_file(out, body);
    if (f == Format::Csv) write_file(out + ".summary.csv", render_summary(result.report));
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on suprema of empirical processes for VC-major families"};
  app.require_subcommand(1);
  Args args;
  std::string chosen;
  for (const auto& name : vcmajor::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "master seed");
    sub->add_option("--out", args.out, "output path (stdout when omitted)");
    sub->add_option("--format", args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vcmajor::kExitConfig;
  }
  try {
    return run(chosen, args);
  } catch (const vcmajor::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return vcmajor::kExitConfig;
  } catch (const vcmajor::QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return vcmajor::kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return vcmajor::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return vcmajor::kExitConfig;
  }
}
