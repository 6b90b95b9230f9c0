#include "carleman/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "carleman/csv.hpp"

namespace carleman {

namespace {

inline double bregman(ConvexIndex b, double y, double f) {
  const double gap = phi(b, y) - phi(b, f) - phi_prime(b, f) * (y - f);
  return gap > 0.0 ? gap : 0.0;  // >= 0 by convexity; clip roundoff
}

}  // namespace

double relative_entropy(ConvexIndex beta, const KineticState& s, const Profile& p,
                        const EntropyParams& /*params*/, const Grid1D& g) {
  // The constant shift in Phi cancels between Phi(u)+Phi(v) and 2 Phi(f),
  // so the sum of the two Bregman gaps of phi is the exact integrand.
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double f = p(s.t, g.center(i));
    acc += bregman(beta, s.u[i], f) + bregman(beta, s.v[i], f);
  }
  return acc * g.dx();
}

double production(ConvexIndex beta, double alpha, const KineticState& s, const Grid1D& g) {
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double u = s.u[i];
    const double v = s.v[i];
    if (u == v) continue;  // integrand vanishes by continuity
    if (beta.logarithmic() && (u <= 0.0 || v <= 0.0))
      return std::numeric_limits<double>::infinity();
    const double term =
        (phi_prime(beta, u) - phi_prime(beta, v)) * pow_alpha(u + v, alpha) * (u - v);
    acc += term > 0.0 ? term : 0.0;
  }
  return acc * g.dx();
}

double boundary_bracket(ConvexIndex beta, const KineticState& s, const Profile& p,
                        double epsilon, const Grid1D& g) {
  const int n = g.nx();
  const double f_right = p(s.t, 1.0);
  const double f_left = p(s.t, 0.0);
  return (bregman(beta, s.u[n - 1], f_right) + bregman(beta, s.v[0], f_left)) / epsilon;
}

BalanceFactors balance_factors(ConvexIndex beta, const BoundaryData& bc,
                               const EntropyParams& params) {
  const double T = bc.horizon;
  const auto rm = bc.phi_minus.value_range(T);
  const auto rp = bc.phi_plus.value_range(T);
  const double f_lo = std::min(rm.lo, rp.lo);
  const double f_hi = std::max(rm.hi, rp.hi);

  // |d/dx f| = |phi+ - phi-|; interval envelope of the difference.
  const double sup_dxf = std::max(std::abs(rp.lo - rm.hi), std::abs(rp.hi - rm.lo));
  // |d/dt f| <= max of the two derivative sups (convex combination in x).
  const double sup_dtf =
      std::max(bc.phi_minus.sup_abs_deriv(T), bc.phi_plus.sup_abs_deriv(T));

  // phi'' is monotone in y for every beta, so its sup over [f_lo, f_hi]
  // sits at an endpoint.
  const double sup_pp = std::max(phi_second(beta, f_lo), phi_second(beta, f_hi));
  // 2 y phi''(y) = 2 (1-beta) y^{1-beta} is nondecreasing (== 2 at beta = 1).
  const double sup_2ypp =
      beta.logarithmic() ? 2.0 : 2.0 * (1.0 - beta.beta) * std::pow(f_hi, 1.0 - beta.beta);

  const double shift = big_phi_shift(beta, params);
  auto tangent_gap = [&](double y) {
    const double head = beta.logarithmic()
                            ? y
                            : (1.0 - beta.beta) / (2.0 - beta.beta) * std::pow(y, 2.0 - beta.beta);
    return shift - head;  // Phi(y) - Phi'(y) y; decreasing in y
  };

  BalanceFactors f;
  f.sup_dx_phi_prime_f = sup_pp * sup_dxf;
  f.sup_dt_phi_prime_f = sup_pp * sup_dtf;
  f.sup_phi_second_dt_f2 = sup_2ypp * sup_dtf;
  f.sup_phi_minus_tangent = std::max(std::abs(tangent_gap(f_lo)), std::abs(tangent_gap(f_hi)));
  return f;
}

double entropy_residual(ConvexIndex beta, double alpha, const KineticState& before,
                        const KineticState& after, double dt, double epsilon,
                        const Profile& p, const BalanceFactors& factors, double gamma,
                        const Grid1D& g) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("entropy_residual: gamma must lie in (0, 1)");
  if (!(dt > 0.0)) throw std::invalid_argument("entropy_residual: dt must be > 0");

  const EntropyParams params = entropy_params(p.bc);
  const double h_before = relative_entropy(beta, before, p, params, g);
  const double h_after = relative_entropy(beta, after, p, params, g);

  KineticState mid;
  mid.t = before.t + 0.5 * dt;
  mid.u = 0.5 * (before.u + after.u);
  mid.v = 0.5 * (before.v + after.v);

  const double p_mid = production(beta, alpha, mid, g);
  const double j2_mid = l2_norm_sq((mid.u - mid.v) / epsilon, g);

  const double lhs = (h_after - h_before) / dt + p_mid / (epsilon * epsilon);
  const double rhs = 0.5 * gamma * j2_mid +
                     factors.sup_dt_phi_prime_f * 0.5 * (h_before + h_after) +
                     factors.sup_dx_phi_prime_f * factors.sup_dx_phi_prime_f / (2.0 * gamma) +
                     factors.sup_phi_second_dt_f2 +
                     2.0 * factors.sup_dt_phi_prime_f * factors.sup_phi_minus_tangent;
  return lhs - rhs;
}

double entropy_residual(ConvexIndex beta, double alpha, const KineticState& before,
                        const KineticState& after, double dt, double epsilon,
                        const Profile& p, const EntropyParams& params, double gamma,
                        const Grid1D& g) {
  return entropy_residual(beta, alpha, before, after, dt, epsilon, p,
                          balance_factors(beta, p.bc, params), gamma, g);
}

void EntropyLedger::write_csv(std::ostream& os) const {
  os << "t,H,P,boundary_term,residual,cum_j2,cum_rho2,cum_rap1_j2,cum_ram1_j2,cum_r2a_j2\n";
  for (const Row& r : rows) {
    csv::row(os, {r.t, r.H, r.P, r.boundary_term, r.residual, r.cums[0], r.cums[1], r.cums[2],
                  r.cums[3], r.cums[4]});
  }
}

}  // namespace carleman
