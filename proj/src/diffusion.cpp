#include "carleman/diffusion.hpp"

#include <cmath>
#include <sstream>

#include "carleman/state.hpp"

namespace carleman {

double nonlinearity(double alpha, double rho) {
  if (alpha == 1.0) {
    if (!(rho > 0.0)) throw std::domain_error("nonlinearity: rho must be > 0 for alpha = 1");
    return 0.5 * std::log(rho);
  }
  if (rho < 0.0) throw std::domain_error("nonlinearity: rho must be >= 0");
  return std::pow(rho, 1.0 - alpha) / (2.0 * (1.0 - alpha));
}

double nonlinearity_prime(double alpha, double rho) {
  return 0.5 * pow_alpha(rho, -alpha);
}

double steady_state(double alpha, double phi_minus_val, double phi_plus_val, double x) {
  if (!(phi_minus_val > 0.0 && phi_plus_val > 0.0))
    throw std::invalid_argument("steady_state: boundary values must be > 0");
  const double left = 2.0 * phi_minus_val;
  const double right = 2.0 * phi_plus_val;
  if (alpha == 1.0) return std::pow(left, 1.0 - x) * std::pow(right, x);
  const double e = 1.0 - alpha;
  return std::pow((1.0 - x) * std::pow(left, e) + x * std::pow(right, e), 1.0 / e);
}

Eigen::ArrayXd steady_state_profile(double alpha, double phi_minus_val, double phi_plus_val,
                                    const Grid1D& g) {
  Eigen::ArrayXd rho(g.nx());
  for (int i = 0; i < g.nx(); ++i)
    rho[i] = steady_state(alpha, phi_minus_val, phi_plus_val, g.center(i));
  return rho;
}

namespace {

// Solves the tridiagonal system in place; rhs becomes the solution.
void thomas_solve(Eigen::ArrayXd& sub, Eigen::ArrayXd& diag, Eigen::ArrayXd& sup,
                  Eigen::ArrayXd& rhs) {
  const Eigen::Index n = diag.size();
  for (Eigen::Index i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

// Backward-Euler residual F(rho) = rho - rho_old - r * stencil(G(rho)) with
// mirrored ghost G-values at the walls.
Eigen::ArrayXd be_residual(const Eigen::ArrayXd& rho, const Eigen::ArrayXd& rho_old,
                           double r, double gL, double gR, double alpha) {
  const Eigen::Index n = rho.size();
  Eigen::ArrayXd G(n);
  for (Eigen::Index i = 0; i < n; ++i) G[i] = nonlinearity(alpha, rho[i]);

  Eigen::ArrayXd F(n);
  F[0] = rho[0] - rho_old[0] - r * (G[1] - 3.0 * G[0] + 2.0 * gL);
  for (Eigen::Index i = 1; i < n - 1; ++i)
    F[i] = rho[i] - rho_old[i] - r * (G[i + 1] - 2.0 * G[i] + G[i - 1]);
  F[n - 1] = rho[n - 1] - rho_old[n - 1] - r * (2.0 * gR - 3.0 * G[n - 1] + G[n - 2]);
  return F;
}

bool in_domain(const Eigen::ArrayXd& rho, double alpha) {
  if (!rho.allFinite()) return false;
  if (alpha == 1.0) return (rho > 0.0).all();
  return (rho >= 0.0).all();
}

}  // namespace

Eigen::ArrayXd implicit_step(const Eigen::ArrayXd& rho_old, double dt_par, double t_new,
                             const DiffusionConfig& cfg, StepStats* stats) {
  const Eigen::Index n = rho_old.size();
  if (n != cfg.grid.nx()) throw std::invalid_argument("implicit_step: state/grid size mismatch");
  const double dx = cfg.grid.dx();
  const double r = dt_par / (dx * dx);
  const double gL = nonlinearity(cfg.alpha, 2.0 * cfg.bc.eval(Side::Left, t_new));
  const double gR = nonlinearity(cfg.alpha, 2.0 * cfg.bc.eval(Side::Right, t_new));

  // Convergence floor accounts for roundoff in the r-scaled flux differences
  // (the nearly-degenerate members carry G values of order 1/(1-alpha)).
  const double scale =
      1.0 + rho_old.abs().maxCoeff() + r * (std::abs(gL) + std::abs(gR));
  const double tol = cfg.newton.tol * scale;

  Eigen::ArrayXd rho = rho_old;
  Eigen::ArrayXd F = be_residual(rho, rho_old, r, gL, gR, cfg.alpha);
  double norm = F.abs().maxCoeff();
  int iter = 0;

  while (norm > tol) {
    if (iter >= cfg.newton.max_iter) {
      std::ostringstream os;
      os << "implicit_step: Newton failed at t = " << t_new << " (alpha = " << cfg.alpha
         << "): residual " << norm << " after " << iter << " iterations";
      throw NewtonError(os.str());
    }

    // Tridiagonal Jacobian of F. G'(0) is unbounded for alpha > 0 and zero
    // for alpha < 0; the Jacobian (not the residual) uses a floored argument,
    // and the degenerate regime alpha < 0 gets a 1e-12 diagonal shift.
    // Neither changes the converged root.
    const double shift = cfg.alpha < 0.0 ? 1e-12 : 0.0;
    Eigen::ArrayXd gp(n);
    for (Eigen::Index i = 0; i < n; ++i)
      gp[i] = nonlinearity_prime(cfg.alpha, std::max(rho[i], 1e-14));

    Eigen::ArrayXd diag(n), sub(n), sup(n);
    diag[0] = 1.0 + 3.0 * r * gp[0] + shift;
    diag[n - 1] = 1.0 + 3.0 * r * gp[n - 1] + shift;
    for (Eigen::Index i = 1; i < n - 1; ++i) diag[i] = 1.0 + 2.0 * r * gp[i] + shift;
    for (Eigen::Index i = 1; i < n; ++i) sub[i] = -r * gp[i - 1];
    for (Eigen::Index i = 0; i < n - 1; ++i) sup[i] = -r * gp[i + 1];
    sub[0] = 0.0;
    sup[n - 1] = 0.0;

    Eigen::ArrayXd delta = -F;
    thomas_solve(sub, diag, sup, delta);

    // Damped update; halve until the iterate stays in the domain of G.
    double s = cfg.newton.damping;
    Eigen::ArrayXd trial = rho + s * delta;
    int halvings = 0;
    while (!in_domain(trial, cfg.alpha)) {
      if (++halvings > 60)
        throw NewtonError("implicit_step: damping underflow while keeping the iterate admissible");
      s *= 0.5;
      trial = rho + s * delta;
    }
    rho.swap(trial);
    F = be_residual(rho, rho_old, r, gL, gR, cfg.alpha);
    norm = F.abs().maxCoeff();
    ++iter;
  }

  if (stats) {
    stats->newton_iters = iter;
    stats->residual_norm = norm;
    // Telescoped conservative form: mass change is carried entirely by the
    // wall fluxes 2 (G_b - G_edge).
    const double g0 = nonlinearity(cfg.alpha, rho[0]);
    const double gn = nonlinearity(cfg.alpha, rho[n - 1]);
    stats->boundary_flux = (dt_par / dx) * 2.0 * ((gR - gn) + (gL - g0));
  }
  return rho;
}

DiffusionResult solve(const DiffusionConfig& cfg, const DiffusionSnapshotFn& on_record) {
  if (!(cfg.dt_par > 0.0)) throw std::invalid_argument("solve: dt_par must be > 0");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("solve: t_end must be > 0");
  if (cfg.rho0.size() != cfg.grid.nx())
    throw std::invalid_argument("solve: rho0 length does not match the grid");
  if ((cfg.rho0 < 0.0).any()) throw std::invalid_argument("solve: rho0 must be nonnegative");
  if (cfg.alpha == 1.0 && (cfg.rho0 < 1e-8).any())
    throw std::invalid_argument("solve: alpha = 1 needs rho0 >= 1e-8 cellwise");

  DiffusionResult res;
  res.series.grid = cfg.grid;
  Eigen::ArrayXd rho = cfg.rho0;
  res.mass_initial = integrate(rho, cfg.grid);
  res.series.push(0.0, rho);
  if (on_record) on_record(0.0, rho, 0);

  double t = 0.0;
  long step_index = 0;
  while (t < cfg.t_end - 1e-14 * cfg.t_end) {
    const double dt = std::min(cfg.dt_par, cfg.t_end - t);
    StepStats stats;
    rho = implicit_step(rho, dt, t + dt, cfg, &stats);
    t += dt;
    ++step_index;
    res.total_newton_iters += stats.newton_iters;
    res.boundary_flux_integral += stats.boundary_flux;
    res.series.push(t, rho);
    if (on_record) on_record(t, rho, step_index);
  }

  res.mass_final = integrate(rho, cfg.grid);
  return res;
}

}  // namespace carleman
