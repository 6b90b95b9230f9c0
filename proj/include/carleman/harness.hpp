#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "carleman/diffusion.hpp"
#include "carleman/kinetic.hpp"
#include "carleman/series.hpp"

namespace carleman {

/// Measurement window: drops the first t_start_frac of the time axis (the
/// initial layer of ill-prepared data) and a margin delta at each wall.
struct Window {
  double t_start_frac = 0.05;  // in [0, 1)
  double delta = 0.0;          // in [0, 0.5)
};

/// sqrt of the space-time double quadrature of (a - b)^2 over the window
/// [t_start_frac * t_end, t_end] x [delta, 1 - delta]: trapezoid in time on
/// the common sample times, midpoint in space. Requires matching grids and
/// times.
double space_time_l2(const FieldSeries& a, const FieldSeries& b, const Window& w,
                     double t_end);

/// Truncated Fourier solution of rho_t = (1/2) rho_xx with constant Dirichlet
/// values bc_left, bc_right: the independent comparison target for alpha = 0.
Eigen::ArrayXd heat_oracle(double bc_left, double bc_right, const Eigen::ArrayXd& rho0,
                           const Grid1D& g, double t, int modes = 64);

struct AuditRow {
  std::string name;
  double ratio;  // max over the epsilon list / min
  bool uniform;  // ratio < 2
};

/// Uniformity audit of the five cumulative bound monitors across an epsilon
/// sweep. Monitors that vanish identically are uniform with ratio 1; a
/// monitor that vanishes for some epsilon but not all gets ratio inf.
std::vector<AuditRow> bound_audit(const std::vector<std::array<double, 5>>& cums_per_eps);

struct SweepConfig {
  double alpha = 0.0;
  BoundaryData bc;
  InitialSpec init;
  double t_end = 1.0;
  std::vector<double> epsilons;  // strictly decreasing, all > 0
  int nx = 100;                  // kinetic grid
  double cfl = 1.0;
  long stride = 1;
  std::vector<double> ledger_betas;
  double dt_par = 1e-3;  // capped at eps_min * dx so the reference error
                         // stays below the comparison error
  int ref_refine = 2;    // reference grid refinement factor, >= 2
  Window window;
  bool skip_relaxation = false;  // negative control
  int jobs = 1;
};

struct EpsRow {
  double epsilon = 0.0;
  double l2_err = 0.0;
  double boundary_err_left = 0.0;
  double boundary_err_right = 0.0;
  std::array<double, 5> cums = {};
  bool failed = false;
  std::string error;
};

struct ConvergenceReport {
  std::vector<EpsRow> rows;  // ordered by decreasing epsilon
  bool l2_strictly_decreasing = false;
  bool boundary_left_decreasing = false;
  bool boundary_right_decreasing = false;
  std::vector<AuditRow> audit;
  bool all_uniform = false;

  void write_convergence_csv(std::ostream& os) const;
  void write_audit_csv(std::ostream& os) const;
};

struct SweepResult {
  ConvergenceReport report;
  std::vector<std::vector<EntropyLedger>> ledgers_per_eps;  // outer: epsilon order
  FieldSeries reference;                                    // diffusion run, fine grid
};

/// One diffusion reference run plus one kinetic run per epsilon; assembles
/// the convergence report and the uniformity audit. Runs are scheduled
/// concurrently when jobs > 1; report ordering is by the epsilon list.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace carleman
