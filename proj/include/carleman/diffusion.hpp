#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "carleman/boundary.hpp"
#include "carleman/grid.hpp"
#include "carleman/series.hpp"

namespace carleman {

/// Transformed flux G with the 1/2 folded in: the limit equation is
/// rho_t = (G(rho))_xx with
///   G(rho) = rho^{1-alpha} / (2 (1-alpha))   for alpha != 1,
///   G(rho) = (1/2) ln rho                    for alpha  = 1.
double nonlinearity(double alpha, double rho);

/// G'(rho) = rho^{-alpha} / 2 for every alpha in [-1, 1].
double nonlinearity_prime(double alpha, double rho);

/// Closed-form stationary profile with constant Dirichlet data 2*phi_minus,
/// 2*phi_plus: G(rho) affine in x.
double steady_state(double alpha, double phi_minus_val, double phi_plus_val, double x);
Eigen::ArrayXd steady_state_profile(double alpha, double phi_minus_val, double phi_plus_val,
                                    const Grid1D& g);

struct NewtonParams {
  int max_iter = 50;
  double tol = 1e-12;     // max-norm of the step residual
  double damping = 1.0;
};

struct NewtonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiffusionConfig {
  double alpha = 0.0;
  Grid1D grid;
  double dt_par = 1e-3;
  double t_end = 1.0;
  BoundaryData bc;  // Dirichlet values are 2*phi-(t), 2*phi+(t)
  Eigen::ArrayXd rho0;
  NewtonParams newton;
};

struct StepStats {
  int newton_iters = 0;
  double residual_norm = 0.0;
  double boundary_flux = 0.0;  // mass entering through the walls this step
};

/// One backward-Euler step of rho_t = (G(rho))_xx with mirrored ghost
/// G-values (ghost = 2 G(2 phi) - G(rho_edge)), solved by damped Newton with
/// a tridiagonal Jacobian.
Eigen::ArrayXd implicit_step(const Eigen::ArrayXd& rho, double dt_par, double t_new,
                             const DiffusionConfig& cfg, StepStats* stats = nullptr);

struct DiffusionResult {
  FieldSeries series;  // rho at t=0 and after every step
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double boundary_flux_integral = 0.0;
  long total_newton_iters = 0;
};

using DiffusionSnapshotFn = std::function<void(double t, const Eigen::ArrayXd&, long step)>;

DiffusionResult solve(const DiffusionConfig& cfg, const DiffusionSnapshotFn& on_record = {});

}  // namespace carleman
