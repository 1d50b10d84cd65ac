#include "bhold/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "bhold/constants.hpp"
#include "bhold/error.hpp"

namespace bhold {

PowerFit fit_power_law(const std::vector<double>& dist, const std::vector<double>& dev) {
  if (dist.size() != dev.size()) throw Error(ErrorCode::InvalidParams, "size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (!(dist[i] > 0.0 && dev[i] > 0.0) || !std::isfinite(dev[i])) continue;
    const double x = std::log(dist[i]), y = std::log(dev[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || den <= 0.0) throw Error(ErrorCode::InsufficientSamples, "need two distinct distances");
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / den;
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  f.samples = n;
  return f;
}

}  // namespace bhold

namespace bhold {

namespace {

constexpr double kSignTol = 1e-12;

// Global point for local (x' = r e1, x_n) in the certificate frame.
Vec to_global(const BoundaryTypeCert& cert, double r, double xn, int n) {
  Vec loc = Vec::Zero(n);
  loc(0) = r;
  loc(n - 1) = xn;
  return cert.frame.to_global(loc);
}

bool b_admissible(double a, double b, const StructureParams& p, Side side) {
  const BInterval iv = admissible_b_interval(a, p, side);
  if (iv.contains(b)) return true;
  const double b0 = to_double(iv.b0);
  return std::abs(b - b0) <= kSignTol * std::max(1.0, std::abs(b0));
}

struct GridStats {
  int points = 0;
  int outside_support = 0;
  int lemma_failures = 0;
  double H_min = std::numeric_limits<double>::infinity();
  double H_max = -std::numeric_limits<double>::infinity();
  std::vector<HSample> samples;
};

// H~[W] on the tensor grid of {eta |x'|^a < x_n < eta eps^a / 4}; both signs of r in the plane.
GridStats scan_cup(const BarrierParams& bp, const StructureValues& sv, const ConvexDomain& dom,
                   const BoundaryTypeCert& cert, double eta, double eps, int N, const Operator& F, bool keep) {
  GridStats g;
  const int n = dom.dim();
  const double a = bp.a;
  const double top = eta * std::pow(eps, a) / 4.0;
  for (int j = 0; j < N; ++j) {
    const double xn = top * (j + 1) / (N + 1);
    const double rmax = std::pow(xn / eta, 1.0 / a);
    for (int i = 0; i < N; ++i) {
      const double r = rmax * i / N;
      if (!barrier_value(r, xn, bp)) {
        ++g.outside_support;
        continue;
      }
      const BarrierEval be = eval_barrier(r, xn, bp);
      EigenSet es;
      try {
        es = hessian_eigenvalues(be, n);
      } catch (const Error&) {
        ++g.lemma_failures;
        continue;
      }
      double worst_lo = std::numeric_limits<double>::infinity();
      double worst_hi = -worst_lo;
      const int sides = (n == 2 && r > 0.0) ? 2 : 1;
      for (int sgn = 0; sgn < sides; ++sgn) {
        const Vec x = to_global(cert, sgn == 0 ? r : -r, xn, n);
        const double d = dom.signed_distance(x);
        const double H = H_tilde(be, es, sv, F, d);
        worst_lo = std::min(worst_lo, H);
        worst_hi = std::max(worst_hi, H);
      }
      g.H_min = std::min(g.H_min, worst_lo);
      g.H_max = std::max(g.H_max, worst_hi);
      ++g.points;
      if (keep) g.samples.push_back({r, xn, worst_lo});
    }
  }
  return g;
}

void copy_constants(VerificationReport& rep, const ConstantSet& cs) {
  for (const auto& [k, v] : cs.values) rep.constants[k] = v;
}

}  // namespace

SandwichFit sandwich_fit(const ScalarField& u, const ConvexDomain& dom, const Vec& P, double mu_target,
                         const SandwichOptions& opts) {
  std::vector<double> radii = opts.radii;
  if (radii.empty()) {
    for (int k = 0; k < 16; ++k) radii.push_back(0.02 + (0.1 - 0.02) * k / 15.0);
  }
  const Vec nu = dom.inward_normal(P);
  const int n = static_cast<int>(P.size());
  const double u0 = u(P);
  SandwichFit out;
  out.m_hat = std::numeric_limits<double>::infinity();
  out.M_hat = 0.0;
  auto record = [&](double rho, double dev) {
    const double ratio = dev / std::pow(rho, mu_target);
    out.m_hat = std::min(out.m_hat, ratio);
    out.M_hat = std::max(out.M_hat, ratio);
    ++out.samples;
  };

  std::vector<double> dn, vn;
  for (double rho : radii) {
    const Vec y = P + rho * nu;
    if (!dom.contains(y)) continue;
    const double dev = std::abs(u(y) - u0);
    dn.push_back(rho);
    vn.push_back(dev);
    record(rho, dev);
  }
  out.mu_normal = fit_power_law(dn, vn).exponent;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ang(-opts.max_angle, opts.max_angle);
  std::normal_distribution<double> gauss;
  std::vector<double> dc, vc;
  for (int c = 0; c < opts.chords; ++c) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v(k) = gauss(rng);
    v -= v.dot(nu) * nu;
    if (v.norm() < 1e-12) continue;
    v.normalize();
    const double th = ang(rng);
    const Vec dir = std::cos(th) * nu + std::sin(th) * v;
    for (double rho : radii) {
      const Vec y = P + rho * dir;
      if (!dom.contains(y)) continue;
      double uy;
      try {
        uy = u(y);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OutsideMask) continue;
        throw;
      }
      const double dev = std::abs(uy - u0);
      dc.push_back(rho);
      vc.push_back(dev);
      record(rho, dev);
    }
  }
  out.mu_chords = opts.chords > 0 ? fit_power_law(dc, vc).exponent : out.mu_normal;
  out.mu_lower = std::min(out.mu_normal, out.mu_chords);
  out.mu_upper = std::max(out.mu_normal, out.mu_chords);
  return out;
}

VerificationReport search_xi_subsolution(const StructureParams& p, const ConvexDomain& dom,
                                         const BoundaryTypeCert& interior, double b, const Operator& F,
                                         const SubsolutionOptions& opts) {
  if (interior.kind != CertKind::interior) throw Error(ErrorCode::InvalidParams, "an interior certificate is required");
  if (opts.grid < 2) throw Error(ErrorCode::EmptyRegion, "grid too small");
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) throw Error(ErrorCode::InvalidParams, "delta must lie in (0,1)");
  const StructureValues sv = p.values();
  const double a = interior.a;
  const SignConditions sc = sign_conditions(a, b, sv);
  if (!b_admissible(a, b, p, Side::subsolution) || sc.cond1 > kSignTol || sc.cond2 > kSignTol)
    throw Error(ErrorCode::SignConditionViolated, "b = " + std::to_string(b) + " violates the subsolution exponent conditions");

  double eta_ext = opts.eta_exterior;
  if (!(eta_ext > 0.0)) eta_ext = classify_boundary_point(dom, interior.P, CertKind::exterior, a).eta;

  VerificationReport rep;
  rep.side = "subsolution";
  rep.a = a;
  rep.b = b;
  rep.delta = opts.delta;
  rep.eta = eta_ext;
  rep.eta_prime = interior.eta;
  rep.eps = interior.eps;
  rep.grid = opts.grid;
  try {
    ConstantInputs in;
    in.a = a;
    in.b = b;
    in.delta = opts.delta;
    in.eta = eta_ext;
    in.eta_prime = interior.eta;
    in.eps = interior.eps;
    in.diam = dom.diam();
    in.p = sv;
    if (a >= 2.0) copy_constants(rep, table1_constants(in, false));
    else if (b > 1.0) copy_constants(rep, table3_constants(in, false));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("constants unavailable: ") + e.what());
  }

  double xi = std::min(1.0, eta_ext * std::pow(opts.delta, a / 2.0));
  for (int k = 0; k <= opts.max_halvings; ++k, xi /= 2.0) {
    const BarrierParams bp{a, b, xi, opts.delta};
    GridStats g = scan_cup(bp, sv, dom, interior, interior.eta, interior.eps, opts.grid, F, opts.keep_samples);
    rep.xi = xi;
    rep.steps = k;
    rep.points = g.points;
    rep.outside_support = g.outside_support;
    rep.lemma_failures = g.lemma_failures;
    rep.H_min = g.H_min;
    rep.H_max = g.H_max;
    rep.margin = g.H_min - 1.0;
    rep.samples = std::move(g.samples);
    if (g.points == 0 || g.outside_support > 0 || g.lemma_failures > 0 || !(g.H_min >= 1.0)) continue;
    const GridStats fine = scan_cup(bp, sv, dom, interior, interior.eta, interior.eps, 2 * opts.grid, F, false);
    rep.refine_H_min = fine.H_min;
    rep.refine_H_max = fine.H_max;
    rep.refine_pass = fine.outside_support == 0 && fine.lemma_failures == 0 && fine.H_min >= 1.0 - opts.refine_slack;
    if (!rep.refine_pass) {
      rep.notes.push_back("refinement rejected xi = " + std::to_string(xi));
      continue;
    }
    rep.pass_sub = true;
    return rep;
  }
  throw Error(ErrorCode::SearchExhausted, "no xi certified after " + std::to_string(opts.max_halvings) + " halvings");
}

VerificationReport certify_supersolution(const StructureParams& p, const ConvexDomain& dom,
                                         const BoundaryTypeCert& interior, double b, const LidData& lid,
                                         const Operator& F, const SupersolutionOptions& opts) {
  if (interior.kind != CertKind::interior) throw Error(ErrorCode::InvalidParams, "an interior certificate is required");
  if (opts.grid < 2) throw Error(ErrorCode::EmptyRegion, "grid too small");
  if (!lid.u || !lid.phi_lower) throw Error(ErrorCode::InvalidParams, "lid data needs u and the concave envelope");
  // A = 0 makes the upper bound vacuous.
  if (!(p.A > 0)) throw Error(ErrorCode::InvalidParams, "supersolution verification needs A > 0");
  const StructureValues sv = p.values();
  const double a = interior.a, eta = interior.eta, eps = interior.eps;
  const int n = dom.dim();
  const SignConditions sc = sign_conditions(a, b, sv);
  if (!b_admissible(a, b, p, Side::supersolution) || sc.cond1 < -kSignTol || sc.cond2 > kSignTol)
    throw Error(ErrorCode::SignConditionViolated, "b = " + std::to_string(b) + " violates the supersolution exponent conditions");

  const double top = eta * std::pow(eps, a) / 4.0;
  const double R = std::pow(0.25, 1.0 / a) * eps;
  const int half = std::max(1, opts.boundary_samples / 2);

  // Lid sampling: max u and min phi_* on L.
  double max_u = -std::numeric_limits<double>::infinity();
  double min_phi = std::numeric_limits<double>::infinity();
  for (int k = 0; k < half; ++k) {
    const double r = R * (2.0 * k / half - 1.0) * (1.0 - 1e-9);
    const Vec x = to_global(interior, r, top, n);
    max_u = std::max(max_u, lid.u(x));
    min_phi = std::min(min_phi, lid.phi_lower->value(x));
  }
  if (max_u >= 0.0) throw Error(ErrorCode::LidNotNegative, "max of u on the lid is " + std::to_string(max_u));

  VerificationReport rep;
  rep.side = "supersolution";
  rep.a = a;
  rep.b = b;
  rep.eta = eta;
  rep.eps = eps;
  rep.grid = opts.grid;
  rep.lid_gap = min_phi - max_u;
  const double budget = opts.safety * rep.lid_gap;
  const double m_est = budget - lid.seminorm;
  if (!(m_est > 0.0)) rep.notes.push_back("estimated m is not positive: " + std::to_string(m_est));
  rep.xi0 = top * std::pow(budget, -a * b / 2.0);
  try {
    ConstantInputs in;
    in.a = a;
    in.b = b;
    in.eta = eta;
    in.eps = eps;
    in.diam = dom.diam();
    in.p = sv;
    if (a >= 2.0) copy_constants(rep, table2_constants(in, false));
    else if (b > 1.0) copy_constants(rep, table3_constants(in, false));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("constants unavailable: ") + e.what());
  }

  double xi = std::max(std::pow(2.0, 1.0 - a / 2.0) * eta, rep.xi0);
  bool ok = false;
  for (int k = 0; k <= opts.max_doublings; ++k, xi *= 2.0) {
    const BarrierParams bp{a, b, xi, 0.0};
    GridStats g = scan_cup(bp, sv, dom, interior, eta, eps, opts.grid, F, opts.keep_samples);
    rep.xi = xi;
    rep.steps = k;
    rep.points = g.points;
    rep.outside_support = g.outside_support;
    rep.lemma_failures = g.lemma_failures;
    rep.H_min = g.H_min;
    rep.H_max = g.H_max;
    rep.margin = 1.0 - g.H_max;
    rep.samples = std::move(g.samples);
    if (g.points == 0 || g.lemma_failures > 0 || !(g.H_max <= 1.0)) continue;
    const GridStats fine = scan_cup(bp, sv, dom, interior, eta, eps, 2 * opts.grid, F, false);
    rep.refine_H_min = fine.H_min;
    rep.refine_H_max = fine.H_max;
    rep.refine_pass = fine.lemma_failures == 0 && fine.H_max <= 1.0 + opts.refine_slack;
    if (!rep.refine_pass) {
      rep.notes.push_back("refinement rejected xi = " + std::to_string(xi));
      continue;
    }
    ok = true;
    break;
  }
  if (!ok) throw Error(ErrorCode::SearchExhausted, "no xi certified after " + std::to_string(opts.max_doublings) + " doublings");
  if (rep.outside_support > 0)
    rep.notes.push_back(std::to_string(rep.outside_support) + " grid points of V lie outside the support of W");

  // W_sup = W + phi_* >= u on L and S.
  const BarrierParams bp{a, b, rep.xi, 0.0};
  rep.boundary_margin = std::numeric_limits<double>::infinity();
  int skipped = 0;
  for (int k = 0; k < 2 * half; ++k) {
    const bool on_lid = k < half;
    const int i = on_lid ? k : k - half;
    const double r = R * (2.0 * i / half - 1.0) * (1.0 - 1e-9);
    const double xn = on_lid ? top : eta * std::pow(std::abs(r), a);
    if (!(xn > 0.0)) continue;
    const Vec x = to_global(interior, r, xn, n);
    double ux;
    try {
      ux = lid.u(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutsideMask) throw;
      ++skipped;
      continue;
    }
    const auto w = barrier_value(std::abs(r), xn, bp);
    const double Wsup = w.value_or(0.0) + lid.phi_lower->value(x);
    rep.boundary_margin = std::min(rep.boundary_margin, Wsup - ux);
    ++rep.boundary_samples;
  }
  if (skipped > 0) rep.notes.push_back(std::to_string(skipped) + " boundary samples fell outside the field mask");
  rep.boundary_pass = rep.boundary_samples > 0 && rep.boundary_margin >= -1e-12;
  rep.pass_sup = rep.refine_pass && rep.boundary_pass;
  return rep;
}

Eigen::MatrixXd assemble_rotational_hessian(const BarrierEval& be, const Vec& e_radial, int n) {
  if (n < 2 || e_radial.size() != n - 1) throw Error(ErrorCode::InvalidParams, "radial direction must have n-1 entries");
  const Vec e = e_radial.normalized();
  const double q = be.radial_ratio();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  H.topLeftCorner(n - 1, n - 1) = q * (Eigen::MatrixXd::Identity(n - 1, n - 1) - e * e.transpose()) + be.W_rr * e * e.transpose();
  H.block(0, n - 1, n - 1, 1) = be.W_rn * e;
  H.block(n - 1, 0, 1, n - 1) = be.W_rn * e.transpose();
  H(n - 1, n - 1) = be.W_nn;
  return H;
}

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd A, double tol, int max_sweeps) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw Error(ErrorCode::InvalidParams, "matrix must be square");
  const double scale = std::max(A.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (std::sqrt(off) <= tol * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

EigenOracleResult eigen_oracle_check(int samples, int n_lo, int n_hi, std::uint64_t seed) {
  if (n_lo < 2 || n_hi < n_lo) throw Error(ErrorCode::InvalidParams, "need 2 <= n_lo <= n_hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 3.0), rad(0.01, 1.0);
  std::uniform_int_distribution<int> dim(n_lo, n_hi);
  std::normal_distribution<double> gauss;
  EigenOracleResult res;
  // Draws until `samples` admissible states have been compared.
  for (long long draw = 0; res.compared < samples && draw < 100LL * samples + 100; ++draw) {
    BarrierEval be;
    be.r = rad(rng);
    be.x_n = rad(rng);
    be.W_rr = val(rng);
    be.W_nn = val(rng);
    be.W_rn = val(rng);
    be.W_r = val(rng) * be.r;
    const int n = dim(rng);
    EigenSet es;
    try {
      es = hessian_eigenvalues(be, n);
    } catch (const Error&) {
      ++res.rejected;
      continue;
    }
    // The lemma also takes W_r > 0 away from the axis.
    if (!(be.W_r > 0.0)) {
      ++res.rejected;
      continue;
    }
    Vec e(n - 1);
    for (int i = 0; i < n - 1; ++i) e(i) = gauss(rng);
    if (e.norm() < 1e-12) e(0) = 1.0;
    const std::vector<double> num = jacobi_eigenvalues(assemble_rotational_hessian(be, e, n));
    const std::vector<double> lem = es.values();
    for (int i = 0; i < n; ++i) res.max_error = std::max(res.max_error, std::abs(num[i] - lem[i]));
    if (!eigen_bound_check(es, be)) ++res.bound_failures;
    ++res.compared;
  }
  return res;
}

void write_report_csv(const VerificationReport& rep, std::ostream& os) {
  os.precision(17);
  os << "key,value\n";
  os << "side," << rep.side << '\n'
     << "a," << rep.a << '\n'
     << "b," << rep.b << '\n'
     << "xi," << rep.xi << '\n'
     << "delta," << rep.delta << '\n'
     << "eta," << rep.eta << '\n'
     << "eta_prime," << rep.eta_prime << '\n'
     << "eps," << rep.eps << '\n'
     << "steps," << rep.steps << '\n'
     << "grid," << rep.grid << '\n'
     << "points," << rep.points << '\n'
     << "outside_support," << rep.outside_support << '\n'
     << "lemma_failures," << rep.lemma_failures << '\n'
     << "H_min," << rep.H_min << '\n'
     << "H_max," << rep.H_max << '\n'
     << "margin," << rep.margin << '\n'
     << "refine_pass," << (rep.refine_pass ? "true" : "false") << '\n'
     << "refine_H_min," << rep.refine_H_min << '\n'
     << "refine_H_max," << rep.refine_H_max << '\n';
  if (rep.side == "supersolution") {
    os << "boundary_pass," << (rep.boundary_pass ? "true" : "false") << '\n'
       << "boundary_margin," << rep.boundary_margin << '\n'
       << "boundary_samples," << rep.boundary_samples << '\n'
       << "lid_gap," << rep.lid_gap << '\n'
       << "xi0," << rep.xi0 << '\n';
  }
  for (const auto& [k, v] : rep.constants) os << k << ',' << v << '\n';
  os << "passed," << (rep.passed() ? "true" : "false") << '\n';
}

void write_report_text(const VerificationReport& rep, std::ostream& os) {
  os.precision(8);
  os << rep.side << ": " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  os << "  a = " << rep.a << "  b = " << rep.b << "  xi = " << rep.xi << "  (" << rep.steps
     << (rep.side == "subsolution" ? " halvings" : " doublings") << ")\n";
  os << "  eta = " << rep.eta;
  if (rep.side == "subsolution") os << "  eta' = " << rep.eta_prime << "  delta = " << rep.delta;
  os << "  eps = " << rep.eps << '\n';
  os << "  grid " << rep.grid << "x" << rep.grid << ": " << rep.points << " points, H~ in [" << rep.H_min << ", "
     << rep.H_max << "], margin " << rep.margin << '\n';
  os << "  2x refinement: H~ in [" << rep.refine_H_min << ", " << rep.refine_H_max << "] "
     << (rep.refine_pass ? "ok" : "rejected") << '\n';
  if (rep.side == "supersolution")
    os << "  boundary ordering on L and S: " << rep.boundary_samples << " samples, min(W_sup - u) = "
       << rep.boundary_margin << ", lid gap " << rep.lid_gap << ", xi0 = " << rep.xi0 << '\n';
  for (const auto& note : rep.notes) os << "  note: " << note << '\n';
}

void write_samples_csv(const VerificationReport& rep, std::ostream& os) {
  os.precision(17);
  os << "r,x_n,H\n";
  for (const auto& s : rep.samples) os << s.r << ',' << s.x_n << ',' << s.H << '\n';
}

}  // namespace bhold
