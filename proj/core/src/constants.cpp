#include "bhold/constants.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bhold/error.hpp"

namespace bhold {

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::step11: return "step11";
    case Regime::step12: return "step12";
    case Regime::supersolution: return "supersolution";
    case Regime::a_in_1_2: return "a_in_1_2";
  }
  return "unknown";
}

std::optional<Regime> parse_regime(std::string_view name) {
  for (Regime r : {Regime::step11, Regime::step12, Regime::supersolution, Regime::a_in_1_2})
    if (name == to_string(r)) return r;
  return std::nullopt;
}

double ConstantSet::at(const std::string& name) const {
  if (auto it = values.find(name); it != values.end()) return it->second;
  if (auto it = rows.find(name); it != rows.end()) return it->second;
  throw Error(ErrorCode::InvalidParams, "unknown constant " + name);
}

std::vector<std::string> ConstantSet::non_positive() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values)
    if (!(v > 0.0)) out.push_back(k);
  for (const auto& [k, v] : rows)
    if (!(v > 0.0)) out.push_back(k);
  return out;
}

bool ConstantSet::all_positive() const { return non_positive().empty(); }

namespace {

void check_inputs(const ConstantInputs& in) {
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw Error(ErrorCode::InvalidParams, "delta must lie in (0,1)");
  if (!(in.b > 0.0)) throw Error(ErrorCode::InvalidParams, "b must be positive");
  if (!(in.a >= 1.0)) throw Error(ErrorCode::InvalidParams, "a must be >= 1");
  if (!(in.diam > 0.0 && in.eta > 0.0 && in.eta_prime > 0.0 && in.eps > 0.0 && in.rho > 0.0 && in.rho_prime > 0.0))
    throw Error(ErrorCode::InvalidParams, "diam, eta, eta', eps, rho and rho' must be positive");
  if (!(in.p.A > 0.0)) throw Error(ErrorCode::InvalidParams, "A must be positive");
}

// Exponent n+1-beta+gamma+(2/(ab))(alpha-gamma+(1-b)s+(1-ab)t).
double lid_exponent(const ConstantInputs& in) {
  const auto& p = in.p;
  const double a = in.a, b = in.b;
  return p.n + 1.0 - p.beta + p.gamma + 2.0 / (a * b) * (p.alpha - p.gamma + (1.0 - b) * p.s + (1.0 - a * b) * p.t);
}

double C8_of(const ConstantInputs& in) {
  const double e = in.p.beta - in.p.n - 1.0;
  const double k = in.a * in.eta_prime * std::pow(in.eps, in.a - 1.0);
  return std::min(std::pow(2.0, e) * std::pow(1.0 + k * k, e / 2.0), 1.0);
}

double V_floor(double a) { return 1.0 - std::pow(0.25, 2.0 / a); }

double C19_of(const ConstantInputs& in) {
  const auto& p = in.p;
  const double a = in.a, b = in.b;
  return std::max(std::pow(V_floor(a), (p.alpha + (b - 1.0) * p.gamma + (1.0 - b) * p.s + (1.0 - a * b) * p.t) / b), 1.0);
}

void fill_table2_part(const ConstantInputs& in, ConstantSet& cs, bool tilde) {
  const auto& p = in.p;
  const double a = in.a, b = in.b, eta = in.eta, eps = in.eps;
  auto& v = cs.values;
  v["C13"] = 2.0 / b;
  v["C14"] = std::pow(2.0, 6.0 / a - 4.0) * ((p.n - 1.0) / b + 2.0 * std::abs(b - 1.0) / (b * b)) * eta * eta *
                 std::pow(eps, 2.0 * a - 2.0) +
             (2.0 * std::abs(a - 2.0) / (a * a * b) + 4.0 * std::abs(b - 1.0) / (a * a * b * b));
  const double e = p.beta - p.n - 1.0;
  const double k = a * eta * std::pow(eps, a - 1.0);
  v["C15"] = std::max(std::pow(2.0, e) * std::pow(1.0 + k * k, e / 2.0), 1.0);
  const double k2 = 2.0 * a * eta * std::pow(eps, a - 1.0);
  const double rr = (1.0 / in.rho + 1.0) * (1.0 / in.rho + 1.0);
  const double abg = std::pow(a * b / 2.0, p.gamma);
  if (!tilde) {
    v["C16"] = 4.0 * rr * (1.0 + k2 * k2) * std::max(std::pow(V_floor(a), 2.0 - a), 1.0);
    v["C17"] = std::max(abg, std::pow(v["C16"], -p.gamma / 2.0));
    v["C18"] = p.B / p.A * std::pow(v["C13"], p.s) * std::pow(v["C14"], p.t) * v["C15"] * v["C17"];
    v["C19"] = C19_of(in);
    v["C20"] = v["C18"] * v["C19"];
    v["C21"] = std::pow(eta * std::pow(eps, a) / 4.0, lid_exponent(in));
    v["C22"] = v["C20"] * v["C21"];
  } else {
    v["Ct16"] = 16.0 / (a * a) * rr * (1.0 + k2 * k2);
    v["Ct17"] = std::max(abg, std::pow(v["Ct16"], -p.gamma / 2.0));
    v["Ct18"] = p.B / p.A * std::pow(v["C13"], p.s) * std::pow(v["C14"], p.t) * v["C15"] * v["Ct17"];
    v["C19"] = C19_of(in);
    v["Ct20"] = v["Ct18"] * v["C19"];
    v["C21"] = std::pow(eta * std::pow(eps, a) / 4.0, lid_exponent(in));
    v["Ct22"] = v["Ct20"] * v["C21"];
  }
}

ConstantSet compute_table1(const ConstantInputs& in, Regime regime) {
  const auto& p = in.p;
  const double a = in.a, b = in.b, d = in.delta, D = in.diam;
  const double a2 = a * a, b2 = b * b, b3 = b2 * b;
  const double q = 1.0 - d;
  const double rr_hi = 2.0 / b + 4.0 * (b - 1.0) / b2 * d / q;
  const double dpow = std::pow(D, 2.0 - 2.0 / a);
  ConstantSet cs;
  cs.regime = regime;
  cs.delta = d;
  auto& v = cs.values;
  if (regime == Regime::step11) {
    v["C1"] = 8.0 * (b - 1.0) / (a2 * b3) * std::pow(q, a - 2.0);
    v["C2"] = rr_hi * (2.0 * (a - 2.0) / (a2 * b) + 4.0 * (b - 1.0) / (a2 * b2));
    v["C3"] = rr_hi * dpow + 2.0 * (a - 2.0) / (a2 * b) + 4.0 * (b - 1.0) / (a2 * b2);
    v["C5"] = 2.0 * (a - 2.0) / (a2 * b) * std::pow(q, a - 1.0) + 4.0 * (b - 1.0) / (a2 * b2) * std::pow(q, a - 2.0);
    cs.rows["Wrr_lo"] = 2.0 / b;
    cs.rows["Wrr_hi"] = rr_hi;
    cs.rows["Wnn_lo"] = v["C5"];
    cs.rows["Wnn_hi"] = 2.0 * (a - 2.0) / (a2 * b) + 4.0 * (b - 1.0) / (a2 * b2);
  } else {
    v["C1"] = 8.0 * (b - 1.0) / (a2 * b3) * (d * (a - 2.0) + 1.0) + 4.0 * (a - 2.0) / (a2 * b2) * std::pow(q, a - 1.0);
    v["C2"] = 4.0 * (a - 2.0) / (a2 * b2) + 8.0 * (b - 1.0) / (a2 * b3) * std::pow(q, a - 2.0);
    v["C3"] = 2.0 / b * dpow + 2.0 * (a - 2.0) / (a2 * b) + 4.0 * (b - 1.0) / (a2 * b2) * std::pow(q, a - 2.0);
    v["C5"] = 2.0 * (a - 2.0) / (a2 * b) * std::pow(q, a - 1.0) + 4.0 * (b - 1.0) / (a2 * b2);
    cs.rows["Wrr_lo"] = rr_hi;
    cs.rows["Wrr_hi"] = 2.0 / b;
    cs.rows["Wnn_lo"] = v["C5"];
    cs.rows["Wnn_hi"] = 2.0 * (a - 2.0) / (a2 * b) + 4.0 * (b - 1.0) / (a2 * b2) * std::pow(q, a - 2.0);
  }
  v["C4"] = std::min(2.0 / b, v["C1"] / v["C3"]);
  v["C6"] = 1.0 + a2 * std::pow(D, 4.0 - 4.0 / a) + a2 * b2 / 4.0 * std::pow(q, 2.0 - a) * std::pow(D, 2.0 - 4.0 / (a * b));
  v["C7"] = std::pow(a * b / 2.0, p.gamma) * std::min(1.0, std::pow(v["C6"], -p.gamma / 2.0)) *
            std::min(1.0, std::pow(q, (1.0 - a / 2.0) * p.gamma));
  v["C8"] = C8_of(in);
  // A non-positive C4 or C5 raised to a real power is meaningless; keep the sign visible.
  auto spow = [](double x, double e) { return x > 0.0 ? std::pow(x, e) : (e == 0.0 ? 1.0 : 0.0); };
  v["C9"] = p.B / p.A * spow(v["C4"], p.s) * spow(v["C5"], p.t) * v["C7"] * v["C8"];
  v["C10"] = v["C9"] * std::min(std::pow(q, p.alpha / b + (a / 2.0 - 1.0 / b) * p.gamma + (1.0 / b - 1.0) * p.s +
                                                (1.0 / b - a) * p.t),
                                1.0);
  v["C11"] = std::pow(D, lid_exponent(in));
  v["C12"] = v["C10"] * v["C11"];
  return cs;
}

ConstantSet compute_table3(const ConstantInputs& in) {
  const auto& p = in.p;
  const double a = in.a, b = in.b, d = in.delta, D = in.diam;
  const double a2 = a * a, b2 = b * b, b3 = b2 * b;
  const double q = 1.0 - d;
  const double rr_hi = 2.0 / b + 4.0 * (b - 1.0) / b2 * d / q;
  const double nn_hi = 2.0 * (a - 2.0) / (a2 * b) * std::pow(q, a - 1.0) + 4.0 * (b - 1.0) / (a2 * b2) * std::pow(q, a - 2.0);
  ConstantSet cs;
  cs.regime = Regime::a_in_1_2;
  cs.delta = d;
  auto& v = cs.values;
  v["Ct1"] = 8.0 * (b - 1.0) / (a2 * b3) * q;
  v["Ct2"] = rr_hi * nn_hi;
  v["Ct3"] = rr_hi * std::pow(D, 2.0 - 2.0 / a) + nn_hi;
  v["Ct4"] = std::min(2.0 / b, v["Ct1"] / v["Ct3"]);
  v["Ct5"] = 2.0 * (a * b - 2.0) / (a2 * b2);
  const double k2 = 2.0 * a * in.eta_prime * std::pow(in.eps, a - 1.0);
  const double rr = (1.0 / in.rho_prime + 1.0) * (1.0 / in.rho_prime + 1.0);
  v["Ct6"] = 4.0 * rr * (1.0 + k2 * k2) * std::max(std::pow(V_floor(a), 2.0 - a), 1.0);
  v["Ct7"] = std::min(std::pow(a * b / 2.0, p.gamma), std::pow(v["Ct6"], -p.gamma / 2.0));
  v["C8"] = C8_of(in);
  auto spow = [](double x, double e) { return x > 0.0 ? std::pow(x, e) : (e == 0.0 ? 1.0 : 0.0); };
  v["Ct10"] = p.B / p.A * spow(v["Ct4"], p.s) * spow(v["Ct5"], p.t) * v["Ct7"] * v["C8"] *
              std::min(std::pow(V_floor(a), (p.alpha + (b - 1.0) * p.gamma + (1.0 - b) * p.s + (1.0 - a * b) * p.t) / b), 1.0);
  v["C11"] = std::pow(D, lid_exponent(in));
  v["Ct12"] = v["Ct10"] * v["C11"];
  fill_table2_part(in, cs, true);
  cs.rows["Wrr_lo"] = 2.0 / b;
  cs.rows["Wrr_hi"] = rr_hi;
  cs.rows["Wnn_lo"] = v["Ct5"];
  cs.rows["Wnn_hi"] = nn_hi;
  return cs;
}

template <class Fn>
ConstantSet with_delta_shrink(ConstantInputs in, bool shrink, bool strict, Fn compute) {
  ConstantSet cs = compute(in);
  int halvings = 0;
  while (shrink && !cs.all_positive() && halvings < 20) {
    in.delta /= 2.0;
    ++halvings;
    cs = compute(in);
  }
  cs.delta_halvings = halvings;
  if (strict && !cs.all_positive()) {
    std::string names;
    for (const auto& n : cs.non_positive()) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::NonPositiveConstant, "non-positive constants: " + names);
  }
  return cs;
}

}  // namespace

ConstantSet table1_constants(const ConstantInputs& in, bool strict) {
  check_inputs(in);
  if (in.a < 2.0) throw Error(ErrorCode::RegimeMismatch, "the subsolution table needs a >= 2");
  const Regime r = in.b > 1.0 ? Regime::step11 : Regime::step12;
  return with_delta_shrink(in, r == Regime::step12, strict,
                           [r](const ConstantInputs& x) { return compute_table1(x, r); });
}

ConstantSet table2_constants(const ConstantInputs& in, bool strict) {
  check_inputs(in);
  if (in.a < 2.0) throw Error(ErrorCode::RegimeMismatch, "the supersolution table needs a >= 2");
  return with_delta_shrink(in, false, strict, [](const ConstantInputs& x) {
    ConstantSet cs;
    cs.regime = Regime::supersolution;
    cs.delta = x.delta;
    fill_table2_part(x, cs, false);
    return cs;
  });
}

ConstantSet table3_constants(const ConstantInputs& in, bool strict) {
  check_inputs(in);
  if (!(in.a >= 1.0 && in.a < 2.0)) throw Error(ErrorCode::RegimeMismatch, "the a in [1,2) table needs 1 <= a < 2");
  if (!(in.b > 1.0)) throw Error(ErrorCode::RegimeMismatch, "the a in [1,2) table needs b > 1");
  return with_delta_shrink(in, true, strict, compute_table3);
}

double estimate_rho(const BarrierParams& bp, double eta, double eps, int grid) {
  if (grid < 2) throw Error(ErrorCode::EmptyRegion, "grid has no interior points");
  if (!(eta > 0.0 && eps > 0.0)) throw Error(ErrorCode::InvalidParams, "eta and eps must be positive");
  const double a = bp.a;
  const double top = eta * std::pow(eps, a) / 4.0;
  const double R = std::pow(0.25, 1.0 / a) * eps;
  // Distance in the meridian plane to the curve x_n = eta s^a, 0 <= s <= R.
  auto dist_S = [&](double r, double xn) {
    auto f = [&](double s) {
      const double dx = r - s, dy = xn - eta * std::pow(s, a);
      return dx * dx + dy * dy;
    };
    const int m = 64;
    int best = 0;
    double fb = f(0.0);
    for (int k = 1; k <= m; ++k) {
      const double v = f(R * k / m);
      if (v < fb) {
        fb = v;
        best = k;
      }
    }
    const double lo = R * std::max(0, best - 1) / m, hi = R * std::min(m, best + 1) / m;
    const auto res = boost::math::tools::brent_find_minima(f, lo, hi, 40);
    return std::sqrt(std::min(fb, res.second));
  };
  double ratio = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int j = 0; j < grid; ++j) {
    const double xn = top * (j + 1) / (grid + 1);
    const double rmax = std::pow(xn / eta, 1.0 / a);
    for (int i = 0; i < grid; ++i) {
      const double r = rmax * i / grid;
      const double d = dist_S(r, xn);
      if (!(d > 0.0)) continue;
      const auto w = barrier_value(r, xn, bp);
      const double absW = w ? -*w : 0.0;
      ratio = std::min(ratio, absW / d);
      ++used;
    }
  }
  if (used == 0) throw Error(ErrorCode::EmptyRegion, "no sample of V off S");
  if (!(ratio > 0.0)) throw Error(ErrorCode::InvalidParams, "W vanishes inside V");
  return 0.95 * ratio;
}

SandwichReport appendix_sandwich_check(const BarrierParams& bp, const StructureValues& p, Regime regime, int grid,
                                       double diam) {
  const double a = bp.a, b = bp.b, xi = bp.xi;
  switch (regime) {
    case Regime::step11:
      if (!(a >= 2.0 && b > 1.0)) throw Error(ErrorCode::RegimeMismatch, "step11 needs a >= 2, b > 1");
      break;
    case Regime::step12:
      if (!(a >= 2.0 && b > 0.0 && b <= 1.0)) throw Error(ErrorCode::RegimeMismatch, "step12 needs a >= 2, 0 < b <= 1");
      break;
    case Regime::a_in_1_2:
      if (!(a >= 1.0 && a < 2.0 && b > 1.0 && a * b > 2.0))
        throw Error(ErrorCode::RegimeMismatch, "a_in_1_2 needs 1 <= a < 2, b > 1, ab > 2");
      break;
    case Regime::supersolution:
      throw Error(ErrorCode::RegimeMismatch, "no appendix sandwich for the supersolution table");
  }
  if (grid < 2) throw Error(ErrorCode::EmptyRegion, "grid too small");
  ConstantInputs in;
  in.a = a;
  in.b = b;
  in.delta = bp.delta;
  in.diam = diam;
  in.p = p;
  in.p.A = p.A > 0.0 ? p.A : 1.0;
  const ConstantSet cs = regime == Regime::a_in_1_2 ? table3_constants(in, false) : table1_constants(in, false);
  const std::string pre = regime == Regime::a_in_1_2 ? "Ct" : "C";
  const double C1 = cs.at(pre + "1"), C2 = cs.at(pre + "2"), C3 = cs.at(pre + "3");
  const double rr_lo = cs.at("Wrr_lo"), rr_hi = cs.at("Wrr_hi"), nn_lo = cs.at("Wnn_lo"), nn_hi = cs.at("Wnn_hi");
  const double delta = cs.delta;
  BarrierParams q = bp;
  q.delta = delta;

  SandwichReport rep;
  rep.regime = regime;
  rep.constants = {{pre + "1", C1}, {pre + "2", C2}, {pre + "3", C3},
                   {"Wrr_lo", rr_lo}, {"Wrr_hi", rr_hi}, {"Wnn_lo", nn_lo}, {"Wnn_hi", nn_hi}};
  const double inf = std::numeric_limits<double>::infinity();
  rep.margin_det_lower = rep.margin_det_upper = rep.margin_trace = rep.margin_Wrr = rep.margin_Wnn = inf;
  const double a2 = a * a, b2 = b * b, b3 = b2 * b;
  for (int j = 0; j < grid; ++j) {
    const double xn = diam * (j + 1) / grid;
    const double y = xn / xi;
    const double rmax = std::sqrt(delta) * std::pow(y, 1.0 / a);
    for (int i = 0; i < grid; ++i) {
      const double r = rmax * i / (grid - 1);
      const BarrierEval be = eval_barrier(r, xn, q);
      const double W = -be.W;
      const double det = be.W_rr * be.W_nn - be.W_rn * be.W_rn;
      const double I1 = 8.0 * (a - 2.0) * (b - 1.0) / (a2 * b3) * std::pow(W, 2.0 - 3.0 * b) * std::pow(y, 2.0 / a - 2.0) * r * r / (xi * xi);
      const double I2 = 8.0 * (b - 1.0) / (a2 * b3) * std::pow(W, 2.0 - 3.0 * b) * std::pow(y, 4.0 / a - 2.0) / (xi * xi);
      const double I3 = 4.0 * (a - 2.0) / (a2 * b2) * std::pow(W, 2.0 - 2.0 * b) * std::pow(y, 2.0 / a - 2.0) / (xi * xi);
      const double scale = std::max({std::abs(det), std::abs(I1), std::abs(I2), std::abs(I3)});
      rep.decomposition_error = std::max(rep.decomposition_error, std::abs(I1 + I2 + I3 - det) / scale);
      const double s1 = std::pow(W, 2.0 - b - a * b) / (xi * xi);
      const double s3 = std::pow(W, 1.0 - a * b) / (xi * xi);
      const double srr = std::pow(W, 1.0 - b);
      rep.margin_det_lower = std::min(rep.margin_det_lower, det / (C1 * s1) - 1.0);
      rep.margin_det_upper = std::min(rep.margin_det_upper, 1.0 - det / (C2 * s1));
      rep.margin_trace = std::min(rep.margin_trace, 1.0 - (be.W_rr + be.W_nn) / (C3 * s3));
      rep.margin_Wrr = std::min({rep.margin_Wrr, be.W_rr / (rr_lo * srr) - 1.0, 1.0 - be.W_rr / (rr_hi * srr)});
      rep.margin_Wnn = std::min({rep.margin_Wnn, be.W_nn / (nn_lo * s3) - 1.0, 1.0 - be.W_nn / (nn_hi * s3)});
      ++rep.points;
    }
  }
  const double slack = -1e-12;
  rep.decomposition_ok = rep.decomposition_error <= 1e-10;
  rep.sandwich_ok = C1 > 0.0 && C2 > 0.0 && C3 > 0.0 && rep.margin_det_lower >= slack &&
                    rep.margin_det_upper >= slack && rep.margin_trace >= slack;
  rep.rows_ok = rr_lo > 0.0 && nn_lo > 0.0 && rep.margin_Wrr >= slack && rep.margin_Wnn >= slack;
  return rep;
}

void write_constants_csv(const ConstantSet& cs, std::ostream& os) {
  os << "symbol,value,regime,positive\n";
  os.precision(17);
  for (const auto& [k, v] : cs.values) os << k << ',' << v << ',' << to_string(cs.regime) << ',' << (v > 0.0 ? "true" : "false") << '\n';
}

}  // namespace bhold
