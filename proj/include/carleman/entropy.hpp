#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "carleman/convex.hpp"
#include "carleman/grid.hpp"
#include "carleman/profile.hpp"
#include "carleman/state.hpp"

namespace carleman {

/// Relative entropy of (u, v) with respect to the profile f: midpoint
/// quadrature of the two Bregman gaps
///   [Phi(u) - Phi(f) - Phi'(f)(u - f)] + [Phi(v) - Phi(f) - Phi'(f)(v - f)].
/// Each gap is nonnegative by convexity; roundoff negatives are clipped.
double relative_entropy(ConvexIndex beta, const KineticState& s, const Profile& p,
                        const EntropyParams& params, const Grid1D& g);

/// Entropy production rate: quadrature of
/// (Phi'(u) - Phi'(v)) (u+v)^alpha (u - v) >= 0.
/// For beta = 1 a vacuum cell with u != v makes the integrand infinite; the
/// value +inf is returned as a flag, never thrown.
double production(ConvexIndex beta, double alpha, const KineticState& s, const Grid1D& g);

/// The nonnegative boundary bracket of the entropy balance: Bregman gap of
/// the outflowing traces against the profile, weighted by 1/epsilon.
/// Traces are read at the first/last cell centers (O(dx) bias, documented).
double boundary_bracket(ConvexIndex beta, const KineticState& s, const Profile& p,
                        double epsilon, const Grid1D& g);

/// Closed-form sup factors over [0,T] x [0,1] that enter the right-hand side
/// of the entropy balance certificate. Interval-arithmetic envelopes of the
/// exact suprema, computed from the boundary descriptors, never sampled.
struct BalanceFactors {
  double sup_dx_phi_prime_f = 0.0;     // || d/dx Phi'(f) ||
  double sup_dt_phi_prime_f = 0.0;     // || d/dt Phi'(f) ||
  double sup_phi_second_dt_f2 = 0.0;   // || Phi''(f) d/dt(f^2) ||
  double sup_phi_minus_tangent = 0.0;  // || Phi(f) - Phi'(f) f ||
};

BalanceFactors balance_factors(ConvexIndex beta, const BoundaryData& bc,
                               const EntropyParams& params);

/// Discrete entropy-inequality residual LHS - RHS for one solver step:
///   LHS = (H(after) - H(before))/dt + P(midpoint)/eps^2
///   RHS = gamma/2 * int j^2(mid) + ||dtPhi'(f)|| * (H(before)+H(after))/2
///       + ||dxPhi'(f)||^2/(2 gamma) + ||Phi''(f) dt(f^2)||
///       + 2 ||dtPhi'(f)|| * ||Phi(f) - Phi'(f) f||.
/// A nonpositive value (up to quadrature tolerance) certifies the
/// inequality at this step.
double entropy_residual(ConvexIndex beta, double alpha, const KineticState& before,
                        const KineticState& after, double dt, double epsilon,
                        const Profile& p, const EntropyParams& params, double gamma,
                        const Grid1D& g);

/// Same, with the sup factors precomputed (the per-run hot path).
double entropy_residual(ConvexIndex beta, double alpha, const KineticState& before,
                        const KineticState& after, double dt, double epsilon,
                        const Profile& p, const BalanceFactors& factors, double gamma,
                        const Grid1D& g);

/// Tolerance budget for the discrete entropy inequality.
inline double tol_quad(double dx, double dt) { return 10.0 * (dx + dt); }

/// Names of the five cumulative bound monitors, in column order.
inline const std::array<const char*, 5>& monitor_names() {
  static const std::array<const char*, 5> names = {"j2", "rho2", "rap1_j2", "ram1_j2",
                                                   "r2a_j2"};
  return names;
}

/// Per-run record of the entropy diagnostics for one beta.
struct EntropyLedger {
  double beta = 0.0;
  double gamma = 0.0;  // Young-splitting parameter used in the residual

  struct Row {
    double t;
    double H;
    double P;
    double boundary_term;
    double residual;
    std::array<double, 5> cums;  // int int {j^2, rho^2, rho^{a+1}j^2, rho^{a-1}j^2, rho^{2a}j^2}
  };
  std::vector<Row> rows;

  void write_csv(std::ostream& os) const;
};

}  // namespace carleman
