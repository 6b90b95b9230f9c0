#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "carleman/boundary.hpp"
#include "carleman/entropy.hpp"
#include "carleman/grid.hpp"
#include "carleman/initial.hpp"
#include "carleman/series.hpp"
#include "carleman/state.hpp"

namespace carleman {

/// Thrown when a run produces a non-finite state; carries the step index.
struct NumericalError : std::runtime_error {
  long step;
  NumericalError(const std::string& msg, long s) : std::runtime_error(msg), step(s) {}
};

struct KineticConfig {
  double alpha = 0.0;
  double epsilon = 0.1;
  Grid1D grid;
  double cfl = 1.0;  // dt = cfl * epsilon * dx
  double t_end = 1.0;
  BoundaryData bc;
  InitialData init;
  std::vector<double> ledger_betas;  // one EntropyLedger per entry
  long stride = 1;                   // ledger/series recording interval, in steps
  double gamma = -1.0;               // residual Young parameter; <0 means C_alpha/2
  bool skip_relaxation = false;      // diagnostic switch for the negative control
};

/// First-order upwind advection of u (rightward) and v (leftward) at speed
/// 1/epsilon over dt, with inflow ghost values phi-(t), phi+(t) sampled at
/// the substep's starting time s.t; outflow is free. If boundary_mass is
/// given it receives the net mass added through the walls,
/// dt/eps * (phi- + phi+ - u_out - v_out).
KineticState transport_substep(const KineticState& s, double dt, double epsilon,
                               const BoundaryData& bc, const Grid1D& g,
                               double* boundary_mass = nullptr);

/// Exact cellwise solve of the relaxation ODE over dt: rho is invariant and
/// d = u - v is scaled by exp(-2 rho^alpha dt / eps^2). Cells with
/// rho <= 1e-30 get d := 0, the exact ODE limit for alpha < 0 and a no-op
/// for alpha >= 0.
KineticState relaxation_substep(const KineticState& s, double dt, double epsilon,
                                double alpha);

/// One Strang step: relaxation(dt/2) then transport(dt) then relaxation(dt/2);
/// advances s.t by dt.
KineticState step(const KineticState& s, double dt, const KineticConfig& cfg,
                  double* boundary_mass = nullptr);

struct RunResult {
  KineticState final_state;
  std::vector<EntropyLedger> ledgers;  // parallel to cfg.ledger_betas
  FieldSeries rho_series;              // rho at t=0, every stride-th step, and t_end
  std::array<double, 5> cums = {};     // final cumulative bound monitors
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double boundary_flux_integral = 0.0;
  long steps = 0;
};

using SnapshotFn = std::function<void(const KineticState&, long step)>;

/// Integrates to t_end (final step shortened to land exactly), recording
/// ledgers and the rho series at the configured stride. on_record, when
/// given, sees the full state at every recorded step.
RunResult run(const KineticConfig& cfg, const SnapshotFn& on_record = {});

}  // namespace carleman
