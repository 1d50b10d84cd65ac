#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bhold/barrier.hpp"
#include "bhold/envelope.hpp"
#include "bhold/geometry.hpp"
#include "bhold/operators.hpp"
#include "bhold/params.hpp"

namespace bhold {

struct PowerFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  int samples = 0;
};

/// Least squares of log dev against log dist over the pairs with dev > 0.
PowerFit fit_power_law(const std::vector<double>& dist, const std::vector<double>& dev);

struct SandwichFit {
  double m_hat = 0.0;  ///< min |u(y)-u(P)| / dist^mu over all samples
  double M_hat = 0.0;  ///< max of the same ratio
  double mu_normal = 0.0;
  double mu_chords = 0.0;
  double mu_lower = 0.0;
  double mu_upper = 0.0;
  int samples = 0;
};

struct SandwichOptions {
  std::vector<double> radii;  ///< distances from P; defaults to 16 points in [0.02, 0.1]
  int chords = 16;
  double max_angle = 1.0;  ///< chord directions within this angle (radians) of the normal
  std::uint64_t seed = 42;
};

/// Growth of |u(y) - u(P)| along the inward normal and random chords from P.
SandwichFit sandwich_fit(const ScalarField& u, const ConvexDomain& dom, const Vec& P, double mu_target,
                         const SandwichOptions& opts = {});

struct HSample {
  double r = 0.0;
  double x_n = 0.0;
  double H = 0.0;
};

struct VerificationReport {
  std::string side;  ///< "subsolution" or "supersolution"
  double a = 0.0, b = 0.0, xi = 0.0, delta = 0.0;
  double eta = 0.0;        ///< exterior eta (sub) or interior eta (sup)
  double eta_prime = 0.0;  ///< interior eta of the subsolution cup
  double eps = 0.0;
  int steps = 0;  ///< halvings or doublings of xi
  int grid = 0;
  int points = 0;
  int outside_support = 0;
  int lemma_failures = 0;
  double H_min = 0.0;
  double H_max = 0.0;
  double margin = 0.0;  ///< H_min - 1 (sub) or 1 - H_max (sup)
  bool refine_pass = false;
  double refine_H_min = 0.0;
  double refine_H_max = 0.0;
  bool boundary_pass = true;
  double boundary_margin = 0.0;
  int boundary_samples = 0;
  double lid_gap = 0.0;
  double xi0 = 0.0;
  std::map<std::string, double> constants;
  std::vector<HSample> samples;
  std::vector<std::string> notes;
  bool pass_sub = false;
  bool pass_sup = false;
  bool passed() const { return side == "subsolution" ? pass_sub : pass_sup; }
};

struct SubsolutionOptions {
  int grid = 200;
  double delta = 0.1;
  double eta_exterior = 0.0;  ///< exterior eta at P; <= 0 means classify it
  int max_halvings = 60;
  double refine_slack = 1e-9;
  bool keep_samples = false;
};

/// Halves xi from min{1, eta_ext delta^{a/2}} until H~[W] >= 1 on the V' grid.
VerificationReport search_xi_subsolution(const StructureParams& p, const ConvexDomain& dom,
                                         const BoundaryTypeCert& interior, double b, const Operator& F,
                                         const SubsolutionOptions& opts = {});

struct LidData {
  ScalarField u;  ///< solution values (exact or interpolated) on L and S
  std::shared_ptr<const BoundaryEnvelope> phi_lower;  ///< concave envelope of the boundary data
  double seminorm = 0.0;  ///< Hölder seminorm correction of the envelope
};

struct SupersolutionOptions {
  int grid = 200;
  int max_doublings = 60;
  double refine_slack = 1e-9;
  int boundary_samples = 2000;
  double safety = 0.9;
  bool keep_samples = false;
};

/// xi = max{2^{1-a/2} eta, xi0}, doubled until H~[W] <= 1 on the V grid; checks W + phi_* >= u on L and S.
VerificationReport certify_supersolution(const StructureParams& p, const ConvexDomain& dom,
                                         const BoundaryTypeCert& interior, double b, const LidData& lid,
                                         const Operator& F, const SupersolutionOptions& opts = {});

struct EigenOracleResult {
  double max_error = 0.0;
  int compared = 0;
  int rejected = 0;
  int bound_failures = 0;
};

/// Dense Jacobi spectrum of assembled rotationally symmetric Hessians against the lemma.
EigenOracleResult eigen_oracle_check(int samples, int n_lo, int n_hi, std::uint64_t seed);

/// Full n x n Hessian of a rotationally symmetric function with the radial
/// direction along the unit vector e of the first n-1 coordinates.
Eigen::MatrixXd assemble_rotational_hessian(const BarrierEval& be, const Vec& e_radial, int n);

/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd A, double tol = 1e-15, int max_sweeps = 100);

void write_report_csv(const VerificationReport& rep, std::ostream& os);
void write_report_text(const VerificationReport& rep, std::ostream& os);
void write_samples_csv(const VerificationReport& rep, std::ostream& os);

}  // namespace bhold
