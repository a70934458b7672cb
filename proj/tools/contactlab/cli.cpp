#include "contactlab/cli.hpp"

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "contactlab/errors.hpp"
#include "contactlab/fixtures.hpp"
#include "contactlab/manifold.hpp"
#include "contactlab/suite.hpp"

namespace contactlab::cli {

namespace {

struct Flags {
  RunOptions run;
  std::string report;
};

void add_run_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--points", f.run.points, "Number of sample points")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--seed", f.run.seed, "Sampling seed")->capture_default_str();
  cmd.add_option("--tol", f.run.tol, "Pass tolerance on max residuals")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--order", f.run.order, "Jet order (>= 2; 3 enables every check)")
      ->capture_default_str()
      ->check(CLI::Range(2, 10));
  cmd.add_option("--report", f.report, "Write a JSON report to this path");
  cmd.add_option("--checks", f.run.checks, "Comma-separated subset of checks to run")
      ->delimiter(',');
}

int execute(const ManifoldSpec& m, const Flags& f, std::ostream& out, std::ostream& err) {
  const SuiteResult result = run_suite(m, f.run);
  out << summary_text(result);
  if (!f.report.empty()) {
    std::ofstream file(f.report, std::ios::binary);
    const std::string json = report_json(result);
    file << json;
    file.close();
    if (!file) {
      err << "error: cannot write report to '" << f.report << "'\n";
      return kExitError;
    }
  }
  return result.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification engine for Kenmotsu manifolds and *-Ricci solitons", "contactlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags run_flags;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run the check suite on a config file");
  run->add_option("config", config_path, "Manifold config file")->required();
  add_run_flags(*run, run_flags);

  Flags example_flags;
  std::string example_name;
  CLI::App* examples = app.add_subcommand("examples", "Run a built-in fixture, or 'list' them");
  examples->add_option("name", example_name, "Fixture name or 'list'")->required();
  add_run_flags(*examples, example_flags);

  app.add_subcommand("checks", "List the names of all checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (app.got_subcommand("checks")) {
      for (const auto& name : check_names()) out << name << "\n";
      return kExitOk;
    }
    if (app.got_subcommand(run)) {
      return execute(load_manifold_file(config_path), run_flags, out, err);
    }
    if (example_name == "list") {
      for (const auto& f : builtin_fixtures()) out << f.name << "\n";
      return kExitOk;
    }
    const Fixture* fixture = find_fixture(example_name);
    if (!fixture) {
      err << "error: unknown example '" << example_name << "'; available:";
      for (const auto& f : builtin_fixtures()) err << " " << f.name;
      err << "\n";
      return kExitError;
    }
    return execute(load_manifold(fixture->config), example_flags, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace contactlab::cli
