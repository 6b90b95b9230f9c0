#include "carleman/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace carleman {

namespace {

constexpr double kPi = std::numbers::pi;

// Range of sin over [0, theta], theta >= 0.
TimeFunction::Range sin_range(double theta) {
  const double hi = (theta >= 0.5 * kPi) ? 1.0 : std::sin(theta);
  const double lo = (theta >= 1.5 * kPi) ? -1.0 : std::min(0.0, std::sin(theta));
  return {lo, hi};
}

// Range of cos over [0, theta], theta >= 0.
TimeFunction::Range cos_range(double theta) {
  const double lo = (theta >= kPi) ? -1.0 : std::cos(theta);
  return {lo, 1.0};
}

TimeFunction::Range scale(TimeFunction::Range r, double k, double shift) {
  if (k >= 0.0) return {shift + k * r.lo, shift + k * r.hi};
  return {shift + k * r.hi, shift + k * r.lo};
}

}  // namespace

TimeFunction TimeFunction::constant(double c) { return {Kind::Constant, c, 0.0, 0.0}; }

TimeFunction TimeFunction::ramp(double a, double b) { return {Kind::Ramp, a, b, 0.0}; }

TimeFunction TimeFunction::sinusoid(double a, double b, double omega) {
  if (omega < 0.0) throw std::invalid_argument("TimeFunction: omega must be >= 0");
  return {Kind::Sinusoid, a, b, omega};
}

double TimeFunction::operator()(double t) const {
  switch (kind) {
    case Kind::Constant: return a;
    case Kind::Ramp: return a + b * t;
    case Kind::Sinusoid: return a + b * std::sin(omega * t);
  }
  return a;
}

double TimeFunction::deriv(double t) const {
  switch (kind) {
    case Kind::Constant: return 0.0;
    case Kind::Ramp: return b;
    case Kind::Sinusoid: return b * omega * std::cos(omega * t);
  }
  return 0.0;
}

TimeFunction::Range TimeFunction::value_range(double horizon) const {
  switch (kind) {
    case Kind::Constant: return {a, a};
    case Kind::Ramp: {
      const double end = a + b * horizon;
      return {std::min(a, end), std::max(a, end)};
    }
    case Kind::Sinusoid: return scale(sin_range(omega * horizon), b, a);
  }
  return {a, a};
}

TimeFunction::Range TimeFunction::deriv_range(double horizon) const {
  switch (kind) {
    case Kind::Constant: return {0.0, 0.0};
    case Kind::Ramp: return {b, b};
    case Kind::Sinusoid: return scale(cos_range(omega * horizon), b * omega, 0.0);
  }
  return {0.0, 0.0};
}

double TimeFunction::sup_abs(double horizon) const {
  const Range r = value_range(horizon);
  return std::max(std::abs(r.lo), std::abs(r.hi));
}

double TimeFunction::sup_abs_deriv(double horizon) const {
  const Range r = deriv_range(horizon);
  return std::max(std::abs(r.lo), std::abs(r.hi));
}

std::string TimeFunction::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant: os << "constant " << a; break;
    case Kind::Ramp: os << "ramp " << a << " + " << b << "*t"; break;
    case Kind::Sinusoid: os << "sinusoid " << a << " + " << b << "*sin(" << omega << "*t)"; break;
  }
  return os.str();
}

double BoundaryData::eval(Side side, double t) const {
  const double slack = 1e-12 * std::max(1.0, horizon);
  if (t < -slack || t > horizon + slack)
    throw std::domain_error("BoundaryData: t outside [0, horizon]");
  return side == Side::Left ? phi_minus(t) : phi_plus(t);
}

EntropyParams entropy_params(const BoundaryData& bc) {
  const double T = bc.horizon;
  const double norm_minus = bc.phi_minus.sup_abs(T) + bc.phi_minus.sup_abs_deriv(T);
  const double norm_plus = bc.phi_plus.sup_abs(T) + bc.phi_plus.sup_abs_deriv(T);
  EntropyParams p;
  p.nu = std::max(norm_minus, norm_plus);
  p.phi_m = std::min(bc.phi_minus.inf(T), bc.phi_plus.inf(T));
  return p;
}

}  // namespace carleman
