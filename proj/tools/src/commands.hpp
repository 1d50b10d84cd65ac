#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace bhold::cli {

enum Exit { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

int cmd_exponent(const RunConfig& cfg, std::ostream& out);
int cmd_constants(const RunConfig& cfg, Side side, std::ostream& out);
int cmd_check_barrier(const RunConfig& cfg, Side side, bool text, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);

struct FitOptions {
  std::optional<std::vector<double>> point;
  std::vector<double> window{0.02, 0.1, 16};  ///< first radius, last radius, count
  std::string source = "solve";                ///< solve, exact, cone (ignored when a field file is given)
  std::string field;
  int chords = 16;
};

int cmd_fit_exponent(const RunConfig& cfg, const FitOptions& opts, std::ostream& out);

struct ExampleOptions {
  int n = 2;
  bool skip_solver = false;
  double h = 1.0 / 64.0;
  int grid = 200;
  std::uint64_t seed = 42;
};

int cmd_example_affine_sphere(const ExampleOptions& opts, std::ostream& out);

/// Shortest round-trip decimal form.
std::string fmt(double x);

}  // namespace bhold::cli
