#pragma once

#include <stdexcept>

#include "carleman/boundary.hpp"

namespace carleman {

/// Affine-in-x interpolation of the boundary data,
/// f(t, x) = (1 - x) phi-(t) + x phi+(t).
/// Shares the boundary conditions of the limiting diffusion problem and is
/// the anchor of every relative-entropy diagnostic.
struct Profile {
  BoundaryData bc;

  double operator()(double t, double x) const {
    return (1.0 - x) * bc.eval(Side::Left, t) + x * bc.eval(Side::Right, t);
  }
};

inline double profile_eval(const Profile& p, double t, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("profile_eval: x outside [0, 1]");
  return p(t, x);
}

}  // namespace carleman
