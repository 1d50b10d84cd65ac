#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "bhold/affine_sphere.hpp"
#include "bhold/constants.hpp"
#include "bhold/error.hpp"
#include "bhold/verifier.hpp"

namespace bhold::cli {

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string interval_text(const BInterval& iv) {
  std::string s = iv.lower_open ? "(" : "[";
  s += fmt(to_double(iv.lower)) + ",";
  if (iv.upper) s += fmt(to_double(*iv.upper)) + (iv.upper_open ? ")" : "]");
  else s += "inf)";
  return s;
}

double chosen_b(const RunConfig& cfg, Side side) {
  if (cfg.b) return to_double(*cfg.b);
  return to_double(admissible_b_interval(cfg.a, cfg.params, side).b0);
}

Vec2 as_vec2(const Vec& v) { return Vec2(v(0), v(1)); }

Vec from_vec2(const Vec2& v) {
  Vec x(2);
  x << v.x(), v.y();
  return x;
}

// Writes to the configured path, or to `fallback` when none is set.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  write(f);
}

ScalarField exact_u() {
  return [](const Vec& x) { return affine_sphere::exact(x); };
}

struct Reporter {
  std::ostream& out;
  int failed = 0;
  void line(bool ok, const std::string& name, const std::string& detail) {
    if (!ok) ++failed;
    out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
  }
};

}  // namespace

int cmd_exponent(const RunConfig& cfg, std::ostream& out) {
  const ExponentResult e = mu_exponent(cfg.a, cfg.params);
  out << "mu=" << fmt(e.mu_value) << " branch=" << to_string(e.branch);
  const BInterval sub = admissible_b_interval(cfg.a, cfg.params, Side::subsolution);
  const BInterval sup = admissible_b_interval(cfg.a, cfg.params, Side::supersolution);
  if (e.branch == Branch::formula) out << " b0=" << fmt(to_double(sub.b0));
  out << '\n';
  out << "mu_exact=" << to_string(e.mu) << " a=" << to_string(cfg.a) << " a_used=" << to_string(e.a_used) << '\n';
  out << "b_sub=" << interval_text(sub) << " b_sup=" << interval_text(sup) << '\n';
  return exit_pass;
}

int cmd_constants(const RunConfig& cfg, Side side, std::ostream& out) {
  const double a = cfg.a_value();
  const double b = chosen_b(cfg, side);
  const BoundaryTypeCert cert = classify_boundary_point(*cfg.domain, cfg.point, CertKind::interior, std::max(a, 1.0));
  ConstantInputs in;
  in.a = a;
  in.b = b;
  in.delta = cfg.delta;
  in.eta = cert.eta;
  in.eta_prime = cert.eta;
  in.eps = cert.eps;
  in.diam = cfg.domain->diam();
  in.p = cfg.params.values();
  try {
    const BarrierParams bp{a, b, std::pow(2.0, 1.0 - a / 2.0) * cert.eta, cfg.delta};
    in.rho = in.rho_prime = estimate_rho(bp, cert.eta, cert.eps);
  } catch (const Error&) {
    // keep rho = 1
  }
  ConstantSet cs;
  if (side == Side::supersolution && a >= 2.0) cs = table2_constants(in, false);
  else if (a >= 2.0) cs = table1_constants(in, false);
  else cs = table3_constants(in, false);
  emit(cfg.output, out, [&](std::ostream& os) { write_constants_csv(cs, os); });
  return cs.all_positive() ? exit_pass : exit_fail;
}

int cmd_check_barrier(const RunConfig& cfg, Side side, bool text, std::ostream& out) {
  const double a = cfg.a_value();
  const double b = chosen_b(cfg, side);
  const BoundaryTypeCert cert = classify_boundary_point(*cfg.domain, cfg.point, CertKind::interior, a);
  const Operator F = cfg.make_operator();
  VerificationReport rep;
  if (side == Side::subsolution) {
    SubsolutionOptions o;
    o.grid = cfg.grid;
    o.delta = cfg.delta;
    o.eta_exterior = cfg.eta_exterior;
    o.max_halvings = cfg.max_steps;
    o.keep_samples = !cfg.samples_out.empty();
    rep = search_xi_subsolution(cfg.params, *cfg.domain, cert, b, F, o);
  } else {
    if (cfg.domain->dim() != 2) throw ConfigError("supersolution certification needs a planar domain");
    LidData lid;
    if (cfg.lid == "exact") {
      lid.u = exact_u();
    } else {
      std::ifstream f(cfg.lid_field, std::ios::binary);
      auto field = std::make_shared<GridField>(read_field_binary(f));
      lid.u = [field](const Vec& x) { return field->interpolate(as_vec2(x)); };
    }
    const BoundaryData g = cfg.boundary_data();
    lid.phi_lower = std::make_shared<BoundaryEnvelope>(
        concave_envelope(sample_boundary(*cfg.domain, g, cfg.solve.envelope_samples), *cfg.domain));
    SupersolutionOptions o;
    o.grid = cfg.grid;
    o.max_doublings = cfg.max_steps;
    o.boundary_samples = cfg.boundary_checks;
    o.safety = cfg.safety;
    o.keep_samples = !cfg.samples_out.empty();
    rep = certify_supersolution(cfg.params, *cfg.domain, cert, b, lid, F, o);
  }
  emit(cfg.output, out, [&](std::ostream& os) { write_report_csv(rep, os); });
  if (!cfg.samples_out.empty()) emit(cfg.samples_out, out, [&](std::ostream& os) { write_samples_csv(rep, os); });
  if (text) write_report_text(rep, cfg.output.empty() ? std::cerr : out);
  return rep.passed() ? exit_pass : exit_fail;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.domain->dim() != 2) throw ConfigError("the solver works on planar domains");
  const MaRhs f = cfg.make_rhs();
  SolveStats stats;
  GridField field;
  int code = exit_pass;
  try {
    field = cfg.boundary == "file" ? solve_dirichlet_ma(*cfg.domain, f, cfg.boundary_samples, cfg.solve, &stats)
                                   : solve_dirichlet_ma(*cfg.domain, f, cfg.boundary_data(), cfg.solve, &stats);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonConvergence) throw;
    code = exit_fail;
    out << "error=" << e.what() << '\n';
  }
  for (const auto& l : stats.levels)
    out << "level h=" << fmt(l.h) << " unknowns=" << l.unknowns << " newton=" << l.newton_iterations
        << " gs_sweeps=" << l.gs_sweeps << " residual=" << fmt(l.residual) << " converged=" << (l.converged ? "true" : "false")
        << '\n';
  if (code != exit_pass) return code;
  const double res = residual(field, f, cfg.solve);
  out << "residual=" << fmt(res) << " tolerance=" << fmt(cfg.solve.tolerance)
      << " converged=" << (res < cfg.solve.tolerance ? "true" : "false") << '\n';
  std::function<double(const Vec2&)> exact;
  if (cfg.boundary == "affine_sphere" && cfg.rhs == "affine_sphere")
    exact = [](const Vec2& q) { return affine_sphere::exact(from_vec2(q)); };
  if (cfg.boundary == "quadratic" && cfg.rhs == "constant" && cfg.rhs_constant == 1.0)
    exact = [](const Vec2& q) { return 0.5 * q.squaredNorm(); };
  if (exact) {
    double err = 0.0;
    for (int j = 0; j < field.ny; ++j)
      for (int i = 0; i < field.nx; ++i)
        if (field.kind(i, j) == NodeKind::interior)
          err = std::max(err, std::abs(field.u[field.index(i, j)] - exact(field.node(i, j))));
    out << "linf_error_exact=" << fmt(err) << '\n';
  }
  if (!cfg.field_out.empty()) emit(cfg.field_out, out, [&](std::ostream& os) { write_field_binary(field, os); });
  if (!cfg.field_csv.empty()) emit(cfg.field_csv, out, [&](std::ostream& os) { write_field_csv(field, os); });
  return res < cfg.solve.tolerance ? exit_pass : exit_fail;
}

int cmd_fit_exponent(const RunConfig& cfg, const FitOptions& opts, std::ostream& out) {
  if (cfg.domain->dim() != 2) throw ConfigError("fit-exponent works on planar fields");
  if (opts.window.size() < 2 || opts.window.size() > 3) throw ConfigError("window is r0,r1[,count]");
  const int count = opts.window.size() == 3 ? static_cast<int>(opts.window[2]) : 16;
  if (!(opts.window[0] > 0.0 && opts.window[1] > opts.window[0]) || count < 2) throw ConfigError("bad window");
  Vec P = cfg.point;
  if (opts.point) {
    if (opts.point->size() != 2) throw ConfigError("point needs two coordinates");
    P = Vec(2);
    P << (*opts.point)[0], (*opts.point)[1];
  }
  if (!cfg.domain->on_boundary(P, 1e-9)) throw ConfigError("point is not on the domain boundary");

  const std::string file = !opts.field.empty() ? opts.field : cfg.field_in;
  GridField field;
  const BoundaryData g = cfg.boundary_data();
  if (!file.empty()) {
    std::ifstream f(file, std::ios::binary);
    if (!f) throw ConfigError("cannot open field " + file);
    field = read_field_binary(f);
  } else if (opts.source == "exact") {
    field = sample_field(*cfg.domain, g, [](const Vec2& p) { return affine_sphere::exact(from_vec2(p)); }, cfg.solve.h,
                         cfg.solve.boundary_tau);
  } else if (opts.source == "cone") {
    auto dom = cfg.domain;
    field = sample_field(*cfg.domain, [](const Vec2&) { return 0.0; },
                         [dom](const Vec2& p) { return -dom->signed_distance(from_vec2(p)); }, cfg.solve.h,
                         cfg.solve.boundary_tau);
  } else if (opts.source == "solve") {
    field = solve_dirichlet_ma(*cfg.domain, cfg.make_rhs(), g, cfg.solve);
  } else {
    throw ConfigError("unknown field source '" + opts.source + "'");
  }

  SandwichOptions so;
  for (int k = 0; k < count; ++k) so.radii.push_back(opts.window[0] + (opts.window[1] - opts.window[0]) * k / (count - 1));
  so.chords = opts.chords;
  so.seed = cfg.seed;
  const double mu_target = mu_exponent(cfg.a, cfg.params).mu_value;
  // Grid cells at the anchor straddle the boundary, so boundary points take the Dirichlet data.
  const BoundaryData boundary_g = opts.source == "cone" && file.empty() ? BoundaryData([](const Vec2&) { return 0.0; }) : g;
  const ScalarField u = [&](const Vec& x) {
    if (cfg.domain->signed_distance(x) <= 1e-12) return boundary_g(as_vec2(x));
    return field.interpolate(as_vec2(x));
  };
  const SandwichFit fit = sandwich_fit(u, *cfg.domain, P, mu_target, so);
  out << "mu_hat=" << fmt(fit.mu_normal) << " mu_chords=" << fmt(fit.mu_chords) << " mu_lower=" << fmt(fit.mu_lower)
      << " mu_upper=" << fmt(fit.mu_upper) << '\n';
  out << "m_hat=" << fmt(fit.m_hat) << " M_hat=" << fmt(fit.M_hat) << " mu_target=" << fmt(mu_target)
      << " samples=" << fit.samples << '\n';
  return exit_pass;
}

int cmd_example_affine_sphere(const ExampleOptions& opts, std::ostream& out) {
  const int n = opts.n;
  if (n < 2) throw ConfigError("n must be >= 2");
  Reporter rep{out};
  const StructureParams p = affine_sphere::params(n);
  const ConvexDomain dom = affine_sphere::domain(n);
  out << "hyperbolic affine sphere, n = " << n << '\n';

  const ExponentResult e = mu_exponent(Rational(2), p);
  const BInterval sub = admissible_b_interval(Rational(2), p, Side::subsolution);
  const MuCheck mc = mu_equals_two_over_ab(Rational(2), sub.b0, p);
  rep.line(e.mu == Rational(1, 2) && e.branch == Branch::formula, "exponent",
           "mu(2) = " + to_string(e.mu) + ", b0 = " + to_string(sub.b0));
  rep.line(mc.applicable && mc.equal, "mu = 2/(a b0)", "2/(a b0) = " + to_string(mc.two_over_ab));

  // det D^2 U |U|^{n+2} = 1 through the lemma eigenvalues.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> U01(0.0, 1.0);
  double worst = 0.0;
  int points = 0;
  while (points < 10000) {
    const double r = 0.5 * U01(rng), xn = U01(rng);
    Vec x = Vec::Zero(n);
    x(0) = r;
    x(n - 1) = xn;
    if (dom.signed_distance(x) < 1e-6) continue;
    const BarrierEval jet = affine_sphere::exact_jet(r, xn);
    const EigenSet es = hessian_eigenvalues(jet, n);
    double det = 1.0;
    for (double v : es.values()) det *= v;
    worst = std::max(worst, std::abs(det * std::pow(std::abs(jet.W), n + 2) - 1.0));
    ++points;
  }
  rep.line(worst < 1e-10, "exact solution identity", "max |det D^2U |U|^(n+2) - 1| = " + fmt(worst) + " over " +
                                                          std::to_string(points) + " points");

  const EigenOracleResult eo = eigen_oracle_check(1000, 2, 6, opts.seed);
  rep.line(eo.max_error < 1e-10 && eo.bound_failures == 0, "eigenvalue oracle",
           "max error " + fmt(eo.max_error) + " over " + std::to_string(eo.compared) + " states");

  const Vec P = [&] {
    Vec q = dom.center();
    q(n - 1) -= dom.radius();
    return q;
  }();
  const BoundaryTypeCert cert = classify_boundary_point(dom, P, CertKind::interior, 2.0);
  const Operator F = power_operator(1.0, n - 1.0, 1.0);
  const double b0 = to_double(sub.b0);
  SubsolutionOptions so;
  so.grid = opts.grid;
  const VerificationReport rs = search_xi_subsolution(p, dom, cert, b0, F, so);
  rep.line(rs.passed(), "subsolution", "xi = " + fmt(rs.xi) + ", min H~ = " + fmt(rs.H_min) +
                                           ", refined min H~ = " + fmt(rs.refine_H_min));

  if (n == 2) {
    const BoundaryData g = [](const Vec2& q) { return -std::sqrt(std::max(0.0, q.y())); };
    const auto samples = sample_boundary(dom, g, 1024);
    LidData lid{exact_u(), std::make_shared<BoundaryEnvelope>(concave_envelope(samples, dom)), 0.0};
    SupersolutionOptions po;
    po.grid = opts.grid;
    const VerificationReport rp = certify_supersolution(p, dom, cert, b0, lid, F, po);
    rep.line(rp.passed(), "supersolution", "xi = " + fmt(rp.xi) + ", max H~ = " + fmt(rp.H_max) +
                                               ", boundary margin = " + fmt(rp.boundary_margin));

    // Comparison sandwich with the certified parameters.
    const BoundaryEnvelope upper = convex_envelope(samples, dom);
    const BoundaryEnvelope& lower = *lid.phi_lower;
    int bad = 0, checked = 0;
    auto scan = [&](double xi, double eta, bool below) {
      const BarrierParams bp{2.0, b0, xi, below ? so.delta : 0.0};
      const double top = eta * std::pow(cert.eps, 2.0) / 4.0;
      for (int j = 0; j < 100; ++j) {
        const double xn = top * (j + 1) / 101.0;
        const double rmax = std::sqrt(xn / eta);
        for (int i = -99; i <= 99; ++i) {
          const double r = rmax * i / 100.0;
          const Vec x = cert.frame.to_global((Vec(2) << r, xn).finished());
          const double w = barrier_value(std::abs(r), xn, bp).value_or(0.0);
          const double ux = affine_sphere::exact(x);
          const bool ok = below ? (w + upper.value(x) <= ux + 1e-12) : (ux <= w + lower.value(x) + 1e-12);
          bad += ok ? 0 : 1;
          ++checked;
        }
      }
    };
    scan(rs.xi, cert.eta, true);
    scan(rp.xi, cert.eta, false);
    rep.line(bad == 0, "comparison sandwich", std::to_string(checked - bad) + "/" + std::to_string(checked) + " grid points ordered");
  }

  if (n == 2 && !opts.skip_solver) {
    SolveConfig sc;
    sc.h = opts.h;
    const MaRhs f = singular_power_rhs(1.0, 4.0, [](const Vec2&) { return 0.0; }, 1e-6);
    const BoundaryData g = [](const Vec2& q) { return -std::sqrt(std::max(0.0, q.y())); };
    const GridField field = solve_dirichlet_ma(dom, f, g, sc);
    const double res = residual(field, f, sc);
    double err = 0.0;
    for (int j = 0; j < field.ny; ++j)
      for (int i = 0; i < field.nx; ++i)
        if (field.kind(i, j) == NodeKind::interior)
          err = std::max(err, std::abs(field.u[field.index(i, j)] - affine_sphere::exact(from_vec2(field.node(i, j)))));
    rep.line(res < sc.tolerance, "solver", "h = " + fmt(sc.h) + ", residual = " + fmt(res) + ", max error vs U = " + fmt(err));
    std::vector<double> radii;
    for (int k = 0; k < 12; ++k) radii.push_back(0.02 * std::pow(5.0, k / 11.0));
    const double mu_hat = boundary_exponent(field, Vec2(0.0, 0.0), Vec2(0.0, 1.0), radii);
    rep.line(mu_hat >= 0.45 && mu_hat <= 0.55, "boundary exponent", "fitted mu = " + fmt(mu_hat) + " against 1/2");
  }
  out << (rep.failed == 0 ? "all checks passed" : std::to_string(rep.failed) + " check(s) failed") << '\n';
  return rep.failed == 0 ? exit_pass : exit_fail;
}

}  // namespace bhold::cli
