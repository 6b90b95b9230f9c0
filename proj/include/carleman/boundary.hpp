#pragma once

#include <string>

namespace carleman {

enum class Side { Left, Right };

/// One of three closed-form time signals. Restricting boundary data to these
/// families keeps every W^{1,inf}-type norm exact: value and derivative
/// ranges over [0, T] have closed forms, so the entropy diagnostics never
/// depend on sampled suprema.
struct TimeFunction {
  enum class Kind { Constant, Ramp, Sinusoid };

  Kind kind = Kind::Constant;
  double a = 1.0;      // constant value / ramp offset / sinusoid mean
  double b = 0.0;      // ramp slope / sinusoid amplitude
  double omega = 0.0;  // sinusoid angular frequency, >= 0

  static TimeFunction constant(double c);
  static TimeFunction ramp(double a, double b);
  static TimeFunction sinusoid(double a, double b, double omega);

  double operator()(double t) const;
  double deriv(double t) const;

  struct Range {
    double lo;
    double hi;
  };
  Range value_range(double horizon) const;  // exact range over [0, horizon]
  Range deriv_range(double horizon) const;

  double inf(double horizon) const { return value_range(horizon).lo; }
  double sup_abs(double horizon) const;
  double sup_abs_deriv(double horizon) const;

  std::string describe() const;
};

/// Inflow data: phi_minus feeds the right-movers at x = 0, phi_plus the
/// left-movers at x = 1.
struct BoundaryData {
  TimeFunction phi_minus;
  TimeFunction phi_plus;
  double horizon = 1.0;

  /// Evaluates the requested side; t outside [0, horizon] is an input error.
  double eval(Side side, double t) const;
};

struct EntropyParams {
  double nu = 0.0;     // max over both sides of sup|phi| + sup|phi'|
  double phi_m = 0.0;  // min over both sides of inf phi
};

EntropyParams entropy_params(const BoundaryData& bc);

}  // namespace carleman
