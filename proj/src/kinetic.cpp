#include "carleman/kinetic.hpp"

#include <cmath>
#include <stdexcept>

#include "carleman/validate.hpp"

namespace carleman {

KineticState transport_substep(const KineticState& s, double dt, double epsilon,
                               const BoundaryData& bc, const Grid1D& g,
                               double* boundary_mass) {
  const int n = g.nx();
  if (s.u.size() != n || s.v.size() != n)
    throw std::invalid_argument("transport_substep: state/grid size mismatch");
  const double lam = dt / (epsilon * g.dx());
  if (lam > 1.0 + 1e-12)
    throw std::invalid_argument("transport_substep: CFL violation, dt > eps*dx");

  const double ghost_left = bc.eval(Side::Left, s.t);
  const double ghost_right = bc.eval(Side::Right, s.t);

  if (boundary_mass)
    *boundary_mass = dt / epsilon * (ghost_left + ghost_right - s.u[n - 1] - s.v[0]);

  KineticState out;
  out.t = s.t;
  out.u.resize(n);
  out.v.resize(n);

  if (lam >= 1.0) {
    // Unit CFL: upwind degenerates to an exact one-cell shift.
    out.u[0] = ghost_left;
    out.u.tail(n - 1) = s.u.head(n - 1);
    out.v[n - 1] = ghost_right;
    out.v.head(n - 1) = s.v.tail(n - 1);
    return out;
  }

  out.u[0] = s.u[0] - lam * (s.u[0] - ghost_left);
  out.u.tail(n - 1) = s.u.tail(n - 1) - lam * (s.u.tail(n - 1) - s.u.head(n - 1));
  out.v[n - 1] = s.v[n - 1] - lam * (s.v[n - 1] - ghost_right);
  out.v.head(n - 1) = s.v.head(n - 1) - lam * (s.v.head(n - 1) - s.v.tail(n - 1));
  return out;
}

KineticState relaxation_substep(const KineticState& s, double dt, double epsilon,
                                double alpha) {
  constexpr double rho_floor = 1e-30;
  const double rate = 2.0 * dt / (epsilon * epsilon);

  const Eigen::Index n = s.u.size();
  KineticState out;
  out.t = s.t;
  out.u.resize(n);
  out.v.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double rho = s.u[i] + s.v[i];
    double d = s.u[i] - s.v[i];
    if (rho <= rho_floor) {
      if (std::abs(d) > rho_floor)
        throw std::logic_error("relaxation_substep: rho = 0 with d != 0 on a nonnegative state");
      d = 0.0;
    } else {
      d *= std::exp(-pow_alpha(rho, alpha) * rate);
    }
    out.u[i] = 0.5 * (rho + d);
    out.v[i] = 0.5 * (rho - d);
  }
  return out;
}

KineticState step(const KineticState& s, double dt, const KineticConfig& cfg,
                  double* boundary_mass) {
  KineticState w = s;
  if (!cfg.skip_relaxation) w = relaxation_substep(w, 0.5 * dt, cfg.epsilon, cfg.alpha);
  w = transport_substep(w, dt, cfg.epsilon, cfg.bc, cfg.grid, boundary_mass);
  if (!cfg.skip_relaxation) w = relaxation_substep(w, 0.5 * dt, cfg.epsilon, cfg.alpha);
  w.t = s.t + dt;
  return w;
}

namespace {

// Increments the five cumulative bound monitors by dt * (spatial integral).
void accumulate_monitors(std::array<double, 5>& cums, const KineticState& s, double epsilon,
                         double alpha, double dt, const Grid1D& g) {
  double j2 = 0.0, rho2 = 0.0, rap1 = 0.0, ram1 = 0.0, r2a = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double rho = s.u[i] + s.v[i];
    rho2 += rho * rho;
    if (rho <= 0.0) continue;  // then u = v = 0 and j = 0
    const double j = (s.u[i] - s.v[i]) / epsilon;
    const double jj = j * j;
    const double ra = pow_alpha(rho, alpha);
    j2 += jj;
    rap1 += ra * rho * jj;
    ram1 += ra / rho * jj;
    r2a += ra * ra * jj;
  }
  const double w = dt * g.dx();
  cums[0] += w * j2;
  cums[1] += w * rho2;
  cums[2] += w * rap1;
  cums[3] += w * ram1;
  cums[4] += w * r2a;
}

}  // namespace

RunResult run(const KineticConfig& cfg, const SnapshotFn& on_record) {
  const auto report = validate_admissible(cfg.bc, cfg.init, cfg.alpha);
  if (!report.ok())
    throw std::invalid_argument("run: inadmissible data: " + report.joined());
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
    throw std::invalid_argument("run: cfl must lie in (0, 1]");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("run: epsilon must be > 0");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run: t_end must be > 0");
  if (cfg.t_end > cfg.bc.horizon * (1.0 + 1e-12))
    throw std::invalid_argument("run: t_end exceeds the boundary-data horizon");
  if (cfg.init.u_in.size() != cfg.grid.nx())
    throw std::invalid_argument("run: initial data length does not match the grid");
  if (cfg.stride < 1) throw std::invalid_argument("run: stride must be >= 1");

  const double dt_nominal = cfg.cfl * cfg.epsilon * cfg.grid.dx();
  const Profile profile{cfg.bc};
  const EntropyParams params = entropy_params(cfg.bc);
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 0.5 * coercivity_constant(cfg.alpha);

  std::vector<ConvexIndex> betas;
  std::vector<BalanceFactors> factors;
  betas.reserve(cfg.ledger_betas.size());
  for (double b : cfg.ledger_betas) {
    betas.emplace_back(b);
    factors.push_back(balance_factors(betas.back(), cfg.bc, params));
  }

  RunResult res;
  res.ledgers.resize(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k) {
    res.ledgers[k].beta = betas[k].beta;
    res.ledgers[k].gamma = gamma;
  }
  res.rho_series.grid = cfg.grid;

  KineticState state;
  state.t = 0.0;
  state.u = cfg.init.u_in;
  state.v = cfg.init.v_in;

  res.mass_initial = mass(state, cfg.grid);
  res.rho_series.push(0.0, state.u + state.v);
  if (on_record) on_record(state, 0);

  double t = 0.0;
  long step_index = 0;
  KineticState before;
  while (t < cfg.t_end - 1e-14 * cfg.t_end) {
    const double dt = std::min(dt_nominal, cfg.t_end - t);
    const bool will_record = (step_index + 1) % cfg.stride == 0 ||
                             t + dt >= cfg.t_end - 1e-14 * cfg.t_end;
    if (will_record && !betas.empty()) before = state;

    double boundary_mass = 0.0;
    state = step(state, dt, cfg, &boundary_mass);
    res.boundary_flux_integral += boundary_mass;
    ++step_index;
    t = state.t;

    if (!state.u.allFinite() || !state.v.allFinite())
      throw NumericalError("run: non-finite state at step " + std::to_string(step_index),
                           step_index);

    accumulate_monitors(res.cums, state, cfg.epsilon, cfg.alpha, dt, cfg.grid);

    const bool last = t >= cfg.t_end - 1e-14 * cfg.t_end;
    if (step_index % cfg.stride == 0 || last) {
      res.rho_series.push(t, state.u + state.v);
      for (std::size_t k = 0; k < betas.size(); ++k) {
        EntropyLedger::Row row;
        row.t = t;
        row.H = relative_entropy(betas[k], state, profile, params, cfg.grid);
        row.P = production(betas[k], cfg.alpha, state, cfg.grid);
        row.boundary_term = boundary_bracket(betas[k], state, profile, cfg.epsilon, cfg.grid);
        row.residual = entropy_residual(betas[k], cfg.alpha, before, state, dt, cfg.epsilon,
                                        profile, factors[k], gamma, cfg.grid);
        row.cums = res.cums;
        res.ledgers[k].rows.push_back(row);
      }
      if (on_record) on_record(state, step_index);
    }
  }

  res.final_state = state;
  res.mass_final = mass(state, cfg.grid);
  res.steps = step_index;
  return res;
}

}  // namespace carleman
