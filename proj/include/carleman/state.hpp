#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "carleman/grid.hpp"

namespace carleman {

/// Cell-averaged densities of right-movers (u) and left-movers (v) at one
/// time instant. Owned by a single run; everything else here is immutable.
struct KineticState {
  double t = 0.0;
  Eigen::ArrayXd u;
  Eigen::ArrayXd v;
};

/// Macroscopic moments: rho = u + v, j = (u - v)/epsilon.
struct MacroField {
  Eigen::ArrayXd rho;
  Eigen::ArrayXd j;
  double epsilon = 1.0;
};

inline MacroField macro_from_kinetic(const KineticState& s, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("macro_from_kinetic: epsilon must be > 0");
  return {s.u + s.v, (s.u - s.v) / epsilon, epsilon};
}

inline KineticState kinetic_from_macro(const MacroField& m, double t) {
  KineticState s;
  s.t = t;
  s.u = 0.5 * (m.rho + m.epsilon * m.j);
  s.v = 0.5 * (m.rho - m.epsilon * m.j);
  return s;
}

/// Midpoint-rule integral over (0,1); the one quadrature used everywhere.
inline double integrate(const Eigen::ArrayXd& f, const Grid1D& g) {
  if (f.size() != g.nx()) throw std::invalid_argument("integrate: field/grid size mismatch");
  return f.sum() * g.dx();
}

inline double l2_norm_sq(const Eigen::ArrayXd& f, const Grid1D& g) {
  if (f.size() != g.nx()) throw std::invalid_argument("l2_norm_sq: field/grid size mismatch");
  return f.square().sum() * g.dx();
}

inline double mass(const KineticState& s, const Grid1D& g) {
  return integrate(s.u + s.v, g);
}

/// rho^alpha with fast paths for the exponents the solvers actually use.
inline double pow_alpha(double rho, double alpha) {
  if (alpha == 0.0) return 1.0;
  if (alpha == 1.0) return rho;
  if (alpha == -1.0) return 1.0 / rho;
  if (alpha == 0.5) return std::sqrt(rho);
  if (alpha == -0.5) return 1.0 / std::sqrt(rho);
  return std::pow(rho, alpha);
}

}  // namespace carleman
