#include <CLI11.hpp>

#include <iostream>

#include "bhold/error.hpp"
#include "commands.hpp"

using namespace bhold;
using namespace bhold::cli;

namespace {

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SearchExhausted:
    case ErrorCode::LidNotNegative:
    case ErrorCode::NonConvergence:
    case ErrorCode::NoCertificate:
      return exit_fail;
    default:
      return exit_usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary Hölder regularity toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path, "INI run configuration")->check(CLI::ExistingFile);

  std::string side = "sub";
  auto* exponent = app.add_subcommand("exponent", "Hölder exponent, branch and admissible b");
  auto* constants = app.add_subcommand("constants", "Table constants for the configured (a, b)");
  constants->add_option("--side", side)->check(CLI::IsMember({"sub", "sup"}));
  auto* check = app.add_subcommand("check-barrier", "Certify the barrier on one side");
  check->add_option("--side", side)->required()->check(CLI::IsMember({"sub", "sup"}));
  bool text = false;
  check->add_flag("--text", text, "Also print a text summary");
  auto* solve = app.add_subcommand("solve", "Solve the Dirichlet Monge-Ampere problem");

  FitOptions fit;
  std::vector<double> point;
  auto* fitcmd = app.add_subcommand("fit-exponent", "Fit the boundary growth exponent of a field");
  fitcmd->add_option("--point", point, "Boundary point x,y")->delimiter(',');
  fitcmd->add_option("--window", fit.window, "r0,r1[,count]")->delimiter(',');
  fitcmd->add_option("--source", fit.source, "solve, exact or cone")->check(CLI::IsMember({"solve", "exact", "cone"}));
  fitcmd->add_option("--field", fit.field, "Binary field dump")->check(CLI::ExistingFile);
  fitcmd->add_option("--chords", fit.chords);

  ExampleOptions ex;
  auto* example = app.add_subcommand("example-affine-sphere", "End-to-end check on the affine sphere example");
  example->add_option("--n", ex.n, "Dimension");
  example->add_flag("--skip-solver", ex.skip_solver);
  example->add_option("--step", ex.h, "Solver grid step");
  example->add_option("--grid", ex.grid, "Barrier grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    const RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
    const Side s = side == "sup" ? Side::supersolution : Side::subsolution;
    if (*exponent) return cmd_exponent(cfg, std::cout);
    if (*constants) return cmd_constants(cfg, s, std::cout);
    if (*check) return cmd_check_barrier(cfg, s, text, std::cout);
    if (*solve) return cmd_solve(cfg, std::cout);
    if (*fitcmd) {
      if (!point.empty()) fit.point = point;
      return cmd_fit_exponent(cfg, fit, std::cout);
    }
    if (*example) {
      ex.seed = cfg.seed;
      if (ex.n != 2 && ex.n >= 2 && !ex.skip_solver) ex.skip_solver = true;
      return cmd_example_affine_sphere(ex, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
