// Command-line front end: runs verification suites and writes reports.
//
// Exit codes: 0 every check passed, 1 a check failed, 2 configuration or
// usage error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "asymptopia/config.hpp"
#include "asymptopia/errors.hpp"
#include "asymptopia/report.hpp"
#include "asymptopia/suites.hpp"

namespace {

using namespace asymptopia;

struct Options {
  std::string config;
  std::string suite;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "config file, or 'default' for the built-in experiment")->required();
  sub->add_option("--suite", o.suite, "laws, braiding, homotopy, decay, seqalg or all");
  sub->add_option("--out", o.out, "output directory (overrides output_dir)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", o.seed, "seed for randomized sweeps (overrides the config)");
}

std::string radius_text(const ReportRow& r) { return r.radius ? format_number(*r.radius) : "-"; }

int run(const std::string& command, const Options& o) {
  std::string suite = o.suite;
  if (command == "verify" || command == "report") {
    if (suite.empty()) suite = "all";
  } else {
    if (!suite.empty() && suite != command)
      throw UsageError("subcommand '" + command + "' runs suite '" + command + "', not '" + suite + "'");
    suite = command;
  }

  RunConfig config = load_config(o.config);
  if (o.seed) config.seed = *o.seed;
  if (!o.out.empty()) config.output_dir = o.out;
  const Experiment experiment = build_experiment(config);

  char header[160];
  std::snprintf(header, sizeof header, "plan: %zu rows  suite=%s  config=%016llx  grid=%016llx\n",
                plan_rows(experiment, suite), suite.c_str(),
                static_cast<unsigned long long>(config_hash(config)),
                static_cast<unsigned long long>(experiment.grid->checksum()));
  std::cout << header;
  std::cout << "tail policy: N0=" << config.tail_policy.window_start << " K=" << config.tail_policy.sample_count
            << " tau=" << format_number(config.tail_policy.tolerance) << "\n";

  const auto start = std::chrono::steady_clock::now();
  const Report report = run_suite(experiment, suite);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const ReportFormat format = o.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
  const std::string path = emit_report(report, format, config.output_dir);

  std::size_t passed = 0;
  for (const auto& r : report.rows) {
    passed += r.pass ? 1 : 0;
    if (command != "report")
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.check_id << " " << (r.charge_pair.empty() ? "-" : r.charge_pair)
                << " " << (r.cone_id.empty() ? "-" : r.cone_id) << " r=" << radius_text(r)
                << " residual=" << format_number(r.residual) << " threshold=" << format_number(r.threshold) << "\n";
  }
  char summary[160];
  std::snprintf(summary, sizeof summary, "summary: %zu/%zu passed in %.2f s, report written to ", passed,
                report.rows.size(), seconds);
  std::cout << summary << path << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic braiding of charge automorphisms in the free massless scalar field"};
  app.require_subcommand(1);
  Options options;
  const char* commands[][2] = {{"verify", "run a suite (default: all) and print every check"},
                               {"braiding", "exact against asymptotic braiding"},
                               {"homotopy", "braiding limits along a chain of cones"},
                               {"decay", "decay of the implementation, Abelianness and extension residuals"},
                               {"seqalg", "sequence-algebra corpus"},
                               {"report", "run a suite and only write the report file"}};
  for (const auto& c : commands) add_common(app.add_subcommand(c[0], c[1]), options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, options);
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check aborted: " << e.what() << "\n";
    return 1;
  }
}
