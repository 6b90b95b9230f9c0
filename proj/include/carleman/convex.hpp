#pragma once

#include <cmath>
#include <stdexcept>

#include "carleman/boundary.hpp"

namespace carleman {

/// Selects a member of the convex family on [-1, 1]: beta = 1 is the
/// logarithmic member y log y, every other beta the power member
/// y^{2-beta}/(2-beta).
struct ConvexIndex {
  double beta;
  explicit ConvexIndex(double b) : beta(b) {
    if (!(b >= -1.0 && b <= 1.0)) throw std::invalid_argument("ConvexIndex: beta outside [-1, 1]");
  }
  bool logarithmic() const { return beta == 1.0; }
};

inline double phi(ConvexIndex b, double y) {
  if (b.logarithmic()) return y == 0.0 ? 0.0 : y * std::log(y);
  return std::pow(y, 2.0 - b.beta) / (2.0 - b.beta);
}

inline double phi_prime(ConvexIndex b, double y) {
  if (b.logarithmic()) return std::log(y) + 1.0;
  return std::pow(y, 1.0 - b.beta);
}

inline double phi_second(ConvexIndex b, double y) {
  if (b.logarithmic()) return 1.0 / y;
  return (1.0 - b.beta) * std::pow(y, -b.beta);
}

/// Closed-form Legendre dual sup_{y>=0} (xi y - phi(y)). For the power
/// members the sup at xi <= 0 is attained at y = 0 and equals 0.
inline double phi_dual(ConvexIndex b, double xi) {
  if (b.logarithmic()) return std::exp(xi - 1.0);
  if (xi <= 0.0) return 0.0;
  const double q = (2.0 - b.beta) / (1.0 - b.beta);
  return (1.0 - b.beta) / (2.0 - b.beta) * std::pow(xi, q);
}

/// Constant shift phi*(phi'(nu) + 1) making Phi(y) - Phi'(nu) y >= y.
inline double big_phi_shift(ConvexIndex b, const EntropyParams& params) {
  return phi_dual(b, phi_prime(b, params.nu) + 1.0);
}

inline double big_phi(ConvexIndex b, double y, const EntropyParams& params) {
  return phi(b, y) + big_phi_shift(b, params);
}

/// Coercivity constant: production/eps^2 dominates C_alpha * int j^2.
inline double coercivity_constant(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0))
    throw std::invalid_argument("coercivity_constant: alpha outside [-1, 1]");
  if (alpha == 1.0) return 1.0;
  if (alpha >= 0.0) return 1.0 - alpha;
  return std::pow(2.0, alpha);
}

}  // namespace carleman
