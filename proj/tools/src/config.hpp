#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhold/envelope.hpp"
#include "bhold/geometry.hpp"
#include "bhold/masolver.hpp"
#include "bhold/operators.hpp"
#include "bhold/params.hpp"

namespace bhold::cli {

/// Bad or inconsistent configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // [params]
  StructureParams params;
  Rational a{2};

  // [domain]
  std::shared_ptr<const ConvexDomain> domain;
  std::string boundary = "affine_sphere";  ///< affine_sphere, zero, quadratic, file
  std::vector<BoundarySample> boundary_samples;  ///< boundary = file

  // [barrier]
  Vec point;
  std::optional<Rational> b;
  double delta = 0.1;
  int grid = 200;
  double eta_exterior = 0.0;
  std::string op = "power";  ///< power, monge_ampere, sigma_k
  int k = 2;
  std::string lid = "exact";  ///< exact (affine-sphere U) or field
  std::string lid_field;
  double safety = 0.9;
  int boundary_checks = 2000;
  int max_steps = 60;

  // [solver]
  SolveConfig solve;
  std::string rhs = "affine_sphere";  ///< affine_sphere or constant
  double rhs_constant = 1.0;
  double rhs_floor = 1e-6;

  // [run]
  std::uint64_t seed = 42;
  std::string output;     ///< CSV report path; stdout when empty
  std::string field_out;  ///< binary field dump written by solve
  std::string field_csv;  ///< CSV field dump written by solve
  std::string field_in;   ///< binary field read by fit-exponent
  std::string samples_out;

  double a_value() const;
  Operator make_operator() const;
  BoundaryData boundary_data() const;
  MaRhs make_rhs() const;
};

/// Reads an INI file. Unknown sections or keys, unparsable values and missing
/// referenced files raise ConfigError.
RunConfig load_config(const std::string& path);
/// Defaults describing the hyperbolic affine sphere example in dimension 2.
RunConfig default_config();

/// "x, y, ..." or whitespace-separated numbers.
std::vector<double> parse_numbers(const std::string& text);
/// x,y,value rows with a header line.
std::vector<BoundarySample> read_boundary_csv(const std::string& path);
/// x,y rows with a header line.
std::vector<Vec2> read_vertices_csv(const std::string& path);

}  // namespace bhold::cli
