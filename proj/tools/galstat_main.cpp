#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "galstat/report/report.hpp"

namespace {

constexpr int kConfigError = 2;

int run_command(const std::string& config_path, const std::string& format, const std::optional<std::uint64_t>& seed,
                const std::vector<std::string>& suites, bool parallel, bool timings, const std::string& output) {
  galstat::SuiteConfig cfg;
  try {
    cfg = galstat::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (!suites.empty()) cfg.suites = galstat::expand_suites(suites);
    if (parallel) cfg.parallel = true;
  } catch (const galstat::InputError& e) {
    std::cerr << "galstat: " << e.what() << "\n";
    return kConfigError;
  }

  std::vector<galstat::SuiteResult> results;
  try {
    results = galstat::run(cfg);
  } catch (const galstat::ConfigError& e) {
    std::cerr << "galstat: " << e.what() << "\n";
    return kConfigError;
  }
  const galstat::Report report = galstat::make_report(cfg, std::move(results));
  const std::string doc =
      galstat::emit_report(report, format == "json" ? galstat::Format::json : galstat::Format::text, timings);
  if (output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "galstat: cannot write '" << output << "'\n";
      return kConfigError;
    }
    out << doc;
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galilean spin-statistics verification suites"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run the configured suites and print a report");
  std::string config_path;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  bool parallel = false;
  bool no_timings = false;
  std::string output;
  run->add_option("--config", config_path, "configuration file")->required();
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--seed", seed, "override run.seed");
  run->add_option("--suite", suites, "suite to run (repeatable; overrides run.suites)");
  run->add_flag("--parallel", parallel, "run suites concurrently");
  run->add_flag("--no-timings", no_timings, "leave per-verdict timings out of the report");
  run->add_option("-o,--output", output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return run_command(config_path, format, seed, suites, parallel, !no_timings, output);
}
