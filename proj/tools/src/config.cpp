#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bhold/affine_sphere.hpp"
#include "bhold/error.hpp"

namespace bhold::cli {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"params", {"n", "A", "alpha", "beta", "gamma", "B", "s", "t", "a"}},
      {"domain", {"shape", "center", "radius", "vertices", "vertices_file", "boundary", "boundary_file"}},
      {"barrier", {"point", "b", "delta", "grid", "eta_exterior", "operator", "k", "lid", "lid_field", "safety",
                   "boundary_samples", "max_steps"}},
      {"solver", {"h", "directions", "scheme", "tolerance", "max_iterations", "levels", "tau", "damping",
                  "initial_dip", "eps_u", "envelope_samples", "rhs", "rhs_constant", "rhs_floor"}},
      {"run", {"seed", "output", "field_out", "field_csv", "field_in", "samples_out"}},
  };
  return s;
}

Rational to_rational(const std::string& key, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + text + "' for " + key);
  }
}

double to_real(const std::string& key, const std::string& text) { return to_double(to_rational(key, text)); }

long long to_int(const std::string& key, const std::string& text) {
  const Rational q = to_rational(key, text);
  if (!is_integer(q)) throw ConfigError(key + " must be an integer");
  return static_cast<long long>(to_double(q));
}

std::string resolve(const fs::path& base, const std::string& file, bool must_exist) {
  fs::path p(file);
  if (p.is_relative()) p = base / p;
  if (must_exist && !fs::exists(p)) throw ConfigError("file not found: " + p.string());
  return p.string();
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path, size_t columns) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns) throw ConfigError(path + ": expected " + std::to_string(columns) + " columns in '" + line + "'");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::vector<double> parse_numbers(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';') c = ' ';
  std::stringstream ss(t);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) out.push_back(to_real("number list", tok));
  return out;
}

std::vector<BoundarySample> read_boundary_csv(const std::string& path) {
  std::vector<BoundarySample> out;
  for (const auto& row : read_csv_rows(path, 3))
    out.push_back({Vec2(to_real("x", row[0]), to_real("y", row[1])), to_real("value", row[2])});
  if (out.size() < 3) throw ConfigError(path + ": need at least three boundary samples");
  return out;
}

std::vector<Vec2> read_vertices_csv(const std::string& path) {
  std::vector<Vec2> out;
  for (const auto& row : read_csv_rows(path, 2)) out.emplace_back(to_real("x", row[0]), to_real("y", row[1]));
  return out;
}

double RunConfig::a_value() const { return to_double(a); }

Operator RunConfig::make_operator() const {
  const StructureValues v = params.values();
  if (op == "power") return power_operator(v.B, v.s, v.t);
  if (op == "monge_ampere") return monge_ampere_operator();
  if (op == "sigma_k") return sigma_k_operator(k);
  throw ConfigError("unknown operator '" + op + "'");
}

BoundaryData RunConfig::boundary_data() const {
  if (boundary == "affine_sphere") return [](const Vec2& p) { return -std::sqrt(std::max(0.0, p.y())); };
  if (boundary == "zero") return [](const Vec2&) { return 0.0; };
  if (boundary == "quadratic") return [](const Vec2& p) { return 0.5 * p.squaredNorm(); };
  if (boundary == "file") return interpolate_boundary(boundary_samples, *domain);
  throw ConfigError("unknown boundary data '" + boundary + "'");
}

MaRhs RunConfig::make_rhs() const {
  if (rhs == "affine_sphere") return singular_power_rhs(1.0, 4.0, [](const Vec2&) { return 0.0; }, rhs_floor);
  if (rhs == "constant") return constant_rhs(rhs_constant);
  throw ConfigError("unknown right-hand side '" + rhs + "'");
}

RunConfig default_config() {
  RunConfig c;
  c.params = affine_sphere::params(2);
  c.domain = std::make_shared<ConvexDomain>(affine_sphere::domain(2));
  c.point = Vec::Zero(2);
  return c;
}

RunConfig load_config(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path);
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  for (const auto& [sec, body] : tree) {
    auto it = schema().find(sec);
    if (it == schema().end()) throw ConfigError("unknown section [" + sec + "]");
    if (!body.data().empty()) throw ConfigError("key '" + sec + "' outside a section");
    for (const auto& [key, val] : body)
      if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + sec + "]");
  }
  auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(sec + "/" + key, '/'))) return *v;
    return std::nullopt;
  };

  RunConfig c;
  // [params]
  const int n = static_cast<int>(get("params", "n") ? to_int("n", *get("params", "n")) : 2);
  if (n < 2) throw ConfigError("n must be >= 2");
  c.params = affine_sphere::params(n);
  auto rat = [&](const char* key, Rational& dst) {
    if (auto v = get("params", key)) dst = to_rational(key, *v);
  };
  rat("A", c.params.A);
  rat("alpha", c.params.alpha);
  rat("beta", c.params.beta);
  rat("gamma", c.params.gamma);
  rat("B", c.params.B);
  rat("s", c.params.s);
  rat("t", c.params.t);
  rat("a", c.a);
  try {
    c.params.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  // [domain]
  const std::string shape = get("domain", "shape").value_or("ball");
  try {
    if (shape == "ball") {
      Vec center = affine_sphere::domain(n).center();
      double radius = affine_sphere::domain(n).radius();
      if (auto v = get("domain", "center")) center = to_vec(parse_numbers(*v));
      if (auto v = get("domain", "radius")) radius = to_real("radius", *v);
      if (center.size() != n) throw ConfigError("domain center must have n coordinates");
      c.domain = std::make_shared<ConvexDomain>(ConvexDomain::ball(center, radius));
    } else if (shape == "polygon") {
      if (n != 2) throw ConfigError("polygon domains need n = 2");
      std::vector<Vec2> verts;
      if (auto f = get("domain", "vertices_file")) {
        verts = read_vertices_csv(resolve(base, *f, true));
      } else if (auto v = get("domain", "vertices")) {
        const auto xs = parse_numbers(*v);
        if (xs.size() % 2) throw ConfigError("vertices need an even count of coordinates");
        for (size_t i = 0; i + 1 < xs.size(); i += 2) verts.emplace_back(xs[i], xs[i + 1]);
      } else {
        throw ConfigError("polygon domain needs vertices or vertices_file");
      }
      c.domain = std::make_shared<ConvexDomain>(ConvexDomain::polygon(verts));
    } else {
      throw ConfigError("unknown domain shape '" + shape + "'");
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  c.boundary = get("domain", "boundary").value_or(get("domain", "boundary_file") ? "file" : "affine_sphere");
  if (c.boundary == "file") {
    auto f = get("domain", "boundary_file");
    if (!f) throw ConfigError("boundary = file needs boundary_file");
    c.boundary_samples = read_boundary_csv(resolve(base, *f, true));
  }

  // [barrier]
  if (auto v = get("barrier", "point")) {
    c.point = to_vec(parse_numbers(*v));
  } else if (c.domain->shape() == ConvexDomain::Shape::ball) {
    c.point = c.domain->center();
    c.point(n - 1) -= c.domain->radius();
  } else {
    const Vec2 q = c.domain->boundary_point(0.0);
    c.point = Vec(2);
    c.point << q.x(), q.y();
  }
  if (c.point.size() != n) throw ConfigError("point must have n coordinates");
  if (auto v = get("barrier", "b")) c.b = to_rational("b", *v);
  if (auto v = get("barrier", "delta")) c.delta = to_real("delta", *v);
  if (auto v = get("barrier", "grid")) c.grid = static_cast<int>(to_int("grid", *v));
  if (auto v = get("barrier", "eta_exterior")) c.eta_exterior = to_real("eta_exterior", *v);
  if (auto v = get("barrier", "operator")) c.op = *v;
  if (auto v = get("barrier", "k")) c.k = static_cast<int>(to_int("k", *v));
  if (auto v = get("barrier", "lid")) c.lid = *v;
  if (auto v = get("barrier", "lid_field")) c.lid_field = resolve(base, *v, true);
  if (auto v = get("barrier", "safety")) c.safety = to_real("safety", *v);
  if (auto v = get("barrier", "boundary_samples")) c.boundary_checks = static_cast<int>(to_int("boundary_samples", *v));
  if (auto v = get("barrier", "max_steps")) c.max_steps = static_cast<int>(to_int("max_steps", *v));
  if (c.op != "power" && c.op != "monge_ampere" && c.op != "sigma_k") throw ConfigError("unknown operator '" + c.op + "'");
  if (c.lid != "exact" && c.lid != "field") throw ConfigError("lid must be exact or field");
  if (c.lid == "field" && c.lid_field.empty()) throw ConfigError("lid = field needs lid_field");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (c.grid < 2) throw ConfigError("grid must be >= 2");

  // [solver]
  SolveConfig& s = c.solve;
  if (auto v = get("solver", "h")) s.h = to_real("h", *v);
  if (auto v = get("solver", "directions")) s.directions = static_cast<int>(to_int("directions", *v));
  if (auto v = get("solver", "scheme")) {
    if (*v == "superbase") s.scheme = Scheme::superbase;
    else if (*v == "orthogonal_pairs") s.scheme = Scheme::orthogonal_pairs;
    else throw ConfigError("unknown scheme '" + *v + "'");
  }
  if (auto v = get("solver", "tolerance")) s.tolerance = to_real("tolerance", *v);
  if (auto v = get("solver", "max_iterations")) s.max_iterations = static_cast<int>(to_int("max_iterations", *v));
  if (auto v = get("solver", "levels")) s.levels = static_cast<int>(to_int("levels", *v));
  if (auto v = get("solver", "tau")) s.boundary_tau = to_real("tau", *v);
  if (auto v = get("solver", "damping")) s.damping = to_real("damping", *v);
  if (auto v = get("solver", "initial_dip")) s.initial_dip = to_real("initial_dip", *v);
  if (auto v = get("solver", "eps_u")) s.eps_u = to_real("eps_u", *v);
  if (auto v = get("solver", "envelope_samples")) s.envelope_samples = static_cast<int>(to_int("envelope_samples", *v));
  if (auto v = get("solver", "rhs")) c.rhs = *v;
  if (auto v = get("solver", "rhs_constant")) c.rhs_constant = to_real("rhs_constant", *v);
  if (auto v = get("solver", "rhs_floor")) c.rhs_floor = to_real("rhs_floor", *v);
  if (c.rhs != "affine_sphere" && c.rhs != "constant") throw ConfigError("unknown rhs '" + c.rhs + "'");
  try {
    s.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  // [run]
  if (auto v = get("run", "seed")) c.seed = static_cast<std::uint64_t>(to_int("seed", *v));
  if (auto v = get("run", "output")) c.output = resolve(base, *v, false);
  if (auto v = get("run", "field_out")) c.field_out = resolve(base, *v, false);
  if (auto v = get("run", "field_csv")) c.field_csv = resolve(base, *v, false);
  if (auto v = get("run", "field_in")) c.field_in = resolve(base, *v, true);
  if (auto v = get("run", "samples_out")) c.samples_out = resolve(base, *v, false);
  return c;
}

}  // namespace bhold::cli
