// Command-line driver: kinetic and diffusion runs, epsilon sweeps, seeded
// property audits, and steady-state tables, all writing under a run
// directory with a manifest.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "carleman/config.hpp"
#include "carleman/convex.hpp"
#include "carleman/csv.hpp"
#include "carleman/diffusion.hpp"
#include "carleman/harness.hpp"
#include "carleman/kinetic.hpp"
#include "carleman/manifest.hpp"
#include "carleman/validate.hpp"

namespace fs = std::filesystem;
using namespace carleman;

namespace {

struct Args {
  std::string subcommand;
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  std::uint64_t seed = 42;
  long stride_override = -1;
};

void usage(std::ostream& os) {
  os << "usage: carleman <kinetic|diffusion|sweep|audit|steady> [options]\n"
        "  --config PATH   configuration file (required except audit/steady)\n"
        "  --out DIR       run directory (default ./runs/<timestamp>)\n"
        "  --jobs N        concurrent runs in a sweep (default 1)\n"
        "  --seed N        RNG seed for audit (default 42)\n"
        "  --stride N      override output stride\n";
}

bool parse_args(int argc, char** argv, Args& args, std::string& err) {
  if (argc < 2) {
    err = "missing subcommand";
    return false;
  }
  args.subcommand = argv[1];
  if (args.subcommand == "--help" || args.subcommand == "-h") {
    args.subcommand = "help";
    return true;
  }
  const std::vector<std::string> subs = {"kinetic", "diffusion", "sweep", "audit", "steady"};
  if (std::find(subs.begin(), subs.end(), args.subcommand) == subs.end()) {
    err = "unknown subcommand '" + args.subcommand + "'";
    return false;
  }
  for (int i = 2; i < argc; ++i) {
    const std::string flag = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) return nullptr;
      return argv[++i];
    };
    if (flag == "--config") {
      const char* v = next();
      if (!v) { err = "--config needs a value"; return false; }
      args.config_path = v;
    } else if (flag == "--out") {
      const char* v = next();
      if (!v) { err = "--out needs a value"; return false; }
      args.out_dir = v;
    } else if (flag == "--jobs") {
      const char* v = next();
      if (!v) { err = "--jobs needs a value"; return false; }
      args.jobs = std::atoi(v);
      if (args.jobs < 1) { err = "--jobs must be >= 1"; return false; }
    } else if (flag == "--seed") {
      const char* v = next();
      if (!v) { err = "--seed needs a value"; return false; }
      args.seed = std::strtoull(v, nullptr, 10);
    } else if (flag == "--stride") {
      const char* v = next();
      if (!v) { err = "--stride needs a value"; return false; }
      args.stride_override = std::atol(v);
      if (args.stride_override < 1) { err = "--stride must be >= 1"; return false; }
    } else {
      err = "unknown flag '" + flag + "'";
      return false;
    }
  }
  if (args.config_path.empty() && (args.subcommand == "kinetic" || args.subcommand == "diffusion" ||
                                   args.subcommand == "sweep")) {
    err = "--config is required for " + args.subcommand;
    return false;
  }
  return true;
}

void write_kinetic_snapshot(const std::string& dir, const KineticState& s, long step,
                            double epsilon, const Grid1D& g) {
  char name[64];
  std::snprintf(name, sizeof(name), "fields_%08ld.csv", step);
  std::ofstream out(dir + "/" + name);
  out << "x,u,v,rho,j\n";
  for (int i = 0; i < g.nx(); ++i) {
    const double rho = s.u[i] + s.v[i];
    const double j = (s.u[i] - s.v[i]) / epsilon;
    csv::row(out, {g.center(i), s.u[i], s.v[i], rho, j});
  }
}

void write_diffusion_snapshot(const std::string& dir, double, const Eigen::ArrayXd& rho,
                              long step, const Grid1D& g) {
  char name[64];
  std::snprintf(name, sizeof(name), "fields_%08ld.csv", step);
  std::ofstream out(dir + "/" + name);
  out << "x,rho\n";
  for (int i = 0; i < g.nx(); ++i) csv::row(out, {g.center(i), rho[i]});
}

std::string beta_filename(double beta) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "ledger_beta_%g.csv", beta);
  return buf;
}

int cmd_kinetic(const Args& args, const AppConfig& cfg, const std::string& out) {
  if (cfg.epsilons.size() != 1) {
    std::cerr << "kinetic: exactly one epsilon required\n";
    return 1;
  }
  const Grid1D grid(cfg.nx);
  const InitialData init = build_initial(cfg.init, grid);
  const auto report = validate_admissible(cfg.bc, init, cfg.alpha);
  if (!report.ok()) {
    std::cerr << "validation failed: " << report.joined() << "\n";
    return 1;
  }

  KineticConfig kc;
  kc.alpha = cfg.alpha;
  kc.epsilon = cfg.epsilons[0];
  kc.grid = grid;
  kc.cfl = cfg.cfl;
  kc.t_end = cfg.t_end;
  kc.bc = cfg.bc;
  kc.init = init;
  kc.ledger_betas = cfg.ledger_betas;
  kc.stride = args.stride_override > 0 ? args.stride_override : cfg.stride;

  const RunResult res = run(kc, [&](const KineticState& s, long step) {
    write_kinetic_snapshot(out, s, step, kc.epsilon, grid);
  });

  for (const EntropyLedger& lg : res.ledgers) {
    std::ofstream lf(out + "/" + beta_filename(lg.beta));
    lg.write_csv(lf);
  }

  std::cout << "kinetic run: " << res.steps << " steps to t = " << cfg.t_end << "\n"
            << "  mass " << csv::num(res.mass_initial) << " -> " << csv::num(res.mass_final)
            << " (boundary flux integral " << csv::num(res.boundary_flux_integral) << ")\n";
  return 0;
}

int cmd_diffusion(const Args& args, const AppConfig& cfg, const std::string& out) {
  const Grid1D grid(cfg.nx);
  const InitialData init = build_initial(cfg.init, grid);
  const auto report = validate_admissible(cfg.bc, init, cfg.alpha);
  if (!report.ok()) {
    std::cerr << "validation failed: " << report.joined() << "\n";
    return 1;
  }

  DiffusionConfig dc;
  dc.alpha = cfg.alpha;
  dc.grid = grid;
  dc.dt_par = cfg.dt_par;
  dc.t_end = cfg.t_end;
  dc.bc = cfg.bc;
  dc.rho0 = init.u_in + init.v_in;
  dc.newton = cfg.newton;

  const long stride = args.stride_override > 0 ? args.stride_override : cfg.stride;
  long last_step = -1;
  const DiffusionResult res = solve(dc, [&](double t, const Eigen::ArrayXd& rho, long step) {
    if (step % stride == 0) write_diffusion_snapshot(out, t, rho, step, grid);
    last_step = step;
  });
  // make sure the final state is on disk even off-stride
  write_diffusion_snapshot(out, cfg.t_end, res.series.values.back(), last_step, grid);

  std::cout << "diffusion run to t = " << cfg.t_end << " (" << res.total_newton_iters
            << " Newton iterations)\n"
            << "  mass " << csv::num(res.mass_initial) << " -> " << csv::num(res.mass_final)
            << " (boundary flux integral " << csv::num(res.boundary_flux_integral) << ")\n";
  return 0;
}

int cmd_sweep(const Args& args, const AppConfig& cfg, const std::string& out) {
  if (cfg.epsilons.size() < 2) {
    std::cerr << "sweep: at least two epsilons required\n";
    return 1;
  }
  {
    const Grid1D grid(cfg.nx);
    const InitialData init = build_initial(cfg.init, grid);
    const auto report = validate_admissible(cfg.bc, init, cfg.alpha);
    if (!report.ok()) {
      std::cerr << "validation failed: " << report.joined() << "\n";
      return 1;
    }
  }

  SweepConfig sc;
  sc.alpha = cfg.alpha;
  sc.bc = cfg.bc;
  sc.init = cfg.init;
  sc.t_end = cfg.t_end;
  sc.epsilons = cfg.epsilons;
  sc.nx = cfg.nx;
  sc.cfl = cfg.cfl;
  sc.stride = args.stride_override > 0 ? args.stride_override : cfg.stride;
  sc.ledger_betas = cfg.ledger_betas;
  sc.dt_par = cfg.dt_par;
  sc.window = cfg.window;
  sc.jobs = args.jobs;

  const SweepResult res = run_sweep(sc);

  {
    std::ofstream f(out + "/convergence.csv");
    res.report.write_convergence_csv(f);
  }
  {
    std::ofstream f(out + "/audit.csv");
    res.report.write_audit_csv(f);
  }
  for (std::size_t i = 0; i < res.ledgers_per_eps.size(); ++i) {
    char sub[48];
    std::snprintf(sub, sizeof(sub), "eps_%g", sc.epsilons[i]);
    const std::string dir = out + "/" + sub;
    fs::create_directories(dir);
    for (const EntropyLedger& lg : res.ledgers_per_eps[i]) {
      std::ofstream lf(dir + "/" + beta_filename(lg.beta));
      lg.write_csv(lf);
    }
  }

  std::cout << "sweep over " << sc.epsilons.size() << " epsilons:\n";
  for (const EpsRow& r : res.report.rows) {
    std::cout << "  eps=" << csv::num(r.epsilon) << "  l2_err=" << csv::num(r.l2_err)
              << "  bleft=" << csv::num(r.boundary_err_left)
              << "  bright=" << csv::num(r.boundary_err_right);
    if (r.failed) std::cout << "  FAILED: " << r.error;
    std::cout << "\n";
  }
  std::cout << "  l2 strictly decreasing: " << (res.report.l2_strictly_decreasing ? "yes" : "no")
            << ", monitors uniform: " << (res.report.all_uniform ? "yes" : "no") << "\n";

  const bool flags_ok = res.report.l2_strictly_decreasing &&
                        res.report.boundary_left_decreasing &&
                        res.report.boundary_right_decreasing && res.report.all_uniform;
  return flags_ok ? 0 : 3;
}

int cmd_steady(const AppConfig* cfg, const std::string& out) {
  std::ofstream f(out + "/steady.csv");
  f << "alpha,x,rho\n";
  std::cout << "alpha,x,rho\n";
  auto emit = [&](double alpha, double pm, double pp, const Grid1D& g) {
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.center(i);
      const double rho = steady_state(alpha, pm, pp, x);
      f << csv::num(alpha) << ',' << csv::num(x) << ',' << csv::num(rho) << '\n';
      std::cout << csv::num(alpha) << ',' << csv::num(x) << ',' << csv::num(rho) << '\n';
    }
  };
  if (cfg) {
    if (cfg->bc.phi_minus.kind != TimeFunction::Kind::Constant ||
        cfg->bc.phi_plus.kind != TimeFunction::Kind::Constant) {
      std::cerr << "steady: constant boundary data required\n";
      return 1;
    }
    emit(cfg->alpha, cfg->bc.phi_minus.a, cfg->bc.phi_plus.a, Grid1D(cfg->nx));
  } else {
    const Grid1D g(16);
    for (double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) emit(alpha, 1.0, 2.0, g);
  }
  return 0;
}

// ---- audit: seeded property suites ----------------------------------------

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
  }
};

int cmd_audit(const Args& args, const std::string& out) {
  SplitMix64 rng(args.seed);
  const std::vector<double> betas = {-1.0, -0.5, 0.0, 0.5, 1.0};
  bool all_ok = true;
  auto report = [&](const char* name, long ok, long total) {
    std::cout << name << ": " << ok << "/" << total << " ok\n";
    all_ok = all_ok && ok == total;
  };

  {  // Young's inequality
    long ok = 0, total = 0;
    for (double b : betas) {
      const ConvexIndex ci(b);
      for (int k = 0; k < 1000; ++k) {
        const double y = rng.uniform(1e-12, 20.0);
        const double xi = rng.uniform(1e-12, 20.0);
        ++total;
        if (xi * y <= phi(ci, y) + phi_dual(ci, xi) + 1e-12) ++ok;
      }
    }
    report("young_inequality", ok, total);
  }

  {  // closed-form dual vs brute-force supremum. The enumeration bracket is
     // sized from the stationarity condition phi'(y*) = xi; the value itself
     // comes from the grid scan, and a maximizer landing on the bracket end
     // counts as a failure.
    long ok = 0, total = 0;
    auto brute = [](const ConvexIndex& ci, double xi, bool& interior) {
      const double y_star =
          ci.logarithmic() ? std::exp(xi - 1.0) : std::pow(xi, 1.0 / (1.0 - ci.beta));
      const double y_hi = 4.0 * y_star + 0.01;
      const int n = 20000;
      double best = 0.0;
      int arg = 0;
      for (int i = 0; i <= n; ++i) {
        const double y = y_hi * i / n;
        const double val = xi * y - phi(ci, y);
        if (val > best) {
          best = val;
          arg = i;
        }
      }
      interior = arg < n;
      return best;
    };
    for (double b : betas) {
      const ConvexIndex ci(b);
      for (int k = 0; k < 50; ++k) {
        const double xi = 0.1 * std::pow(100.0, k / 49.0);  // log-spaced in [0.1, 10]
        const double closed = phi_dual(ci, xi);
        ++total;
        bool interior = false;
        const double best = brute(ci, xi, interior);
        if (interior && std::abs(closed - best) <= 1e-4 * std::max(1e-30, std::abs(closed)))
          ++ok;
      }
    }
    report("legendre_dual_vs_bruteforce", ok, total);
  }

  {  // tangent-line inequality for the shifted family
    long ok = 0, total = 0;
    for (double b : betas) {
      const ConvexIndex ci(b);
      for (double nu : {0.5, 1.0, 3.0}) {
        const EntropyParams prm{nu, nu};
        for (int k = 0; k < 1000; ++k) {
          const double y = rng.uniform(0.0, 20.0);
          ++total;
          if (big_phi(ci, y, prm) - phi_prime(ci, nu) * y >= y - 1e-12) ++ok;
        }
      }
    }
    report("shifted_tangent_inequality", ok, total);
  }

  {  // quadratic-member identity and production sign
    const Grid1D g(64);
    const BoundaryData bc{TimeFunction::constant(1.0), TimeFunction::constant(2.0), 1.0};
    const Profile prof{bc};
    const EntropyParams prm = entropy_params(bc);
    long ok = 0, total = 0;
    for (int k = 0; k < 200; ++k) {
      KineticState s;
      s.t = rng.uniform(0.0, 1.0);
      s.u.resize(g.nx());
      s.v.resize(g.nx());
      for (int i = 0; i < g.nx(); ++i) {
        s.u[i] = rng.uniform(0.05, 5.0);
        s.v[i] = rng.uniform(0.05, 5.0);
      }
      const double h = relative_entropy(ConvexIndex(0.0), s, prof, prm, g);
      double direct = 0.0;
      for (int i = 0; i < g.nx(); ++i) {
        const double f = prof(s.t, g.center(i));
        direct += 0.5 * ((s.u[i] - f) * (s.u[i] - f) + (s.v[i] - f) * (s.v[i] - f));
      }
      direct *= g.dx();
      ++total;
      if (std::abs(h - direct) <= 1e-12 * std::max(1.0, direct)) ++ok;
      for (double b : betas) {
        ++total;
        if (production(ConvexIndex(b), 0.5, s, g) >= 0.0) ++ok;
      }
    }
    report("entropy_identities", ok, total);
  }

  {  // coercivity constants and the production lower bound
    long ok = 0, total = 0;
    const Grid1D g(64);
    for (double alpha : betas) {
      const double c = coercivity_constant(alpha);
      ++total;
      const double expected = alpha == 1.0 ? 1.0 : (alpha >= 0.0 ? 1.0 - alpha : std::pow(2.0, alpha));
      if (c == expected) ++ok;
      for (int k = 0; k < 100; ++k) {
        KineticState s;
        s.u.resize(g.nx());
        s.v.resize(g.nx());
        for (int i = 0; i < g.nx(); ++i) {
          s.u[i] = rng.uniform(0.05, 5.0);
          s.v[i] = rng.uniform(0.05, 5.0);
        }
        const double p = production(ConvexIndex(alpha), alpha, s, g);
        const double j2 = l2_norm_sq(s.u - s.v, g);
        ++total;
        if (p >= c * j2 - 1e-10) ++ok;
      }
    }
    report("coercivity", ok, total);
  }

  std::ofstream f(out + "/audit.txt");
  f << (all_ok ? "all property suites passed\n" : "property suite failures\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  std::string err;
  if (!parse_args(argc, argv, args, err)) {
    std::cerr << "error: " << err << "\n";
    usage(std::cerr);
    return 1;
  }
  if (args.subcommand == "help") {
    usage(std::cout);
    return 0;
  }

  std::string out = args.out_dir;
  if (out.empty()) {
    out = "runs/" + current_timestamp();
    int suffix = 0;
    while (fs::exists(out)) out = "runs/" + current_timestamp() + "-" + std::to_string(++suffix);
  }
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    std::cerr << "error: cannot create run directory '" << out << "': " << ec.message() << "\n";
    return 1;
  }

  RunManifest manifest;
  manifest.subcommand = args.subcommand;
  manifest.start_time = current_timestamp();

  int status = 0;
  try {
    AppConfig cfg;
    bool have_cfg = false;
    if (!args.config_path.empty()) {
      cfg = parse_config(args.config_path);
      manifest.config_echo = config_echo(cfg);
      have_cfg = true;
    }

    if (args.subcommand == "kinetic") {
      status = cmd_kinetic(args, cfg, out);
    } else if (args.subcommand == "diffusion") {
      status = cmd_diffusion(args, cfg, out);
    } else if (args.subcommand == "sweep") {
      status = cmd_sweep(args, cfg, out);
    } else if (args.subcommand == "steady") {
      status = cmd_steady(have_cfg ? &cfg : nullptr, out);
    } else if (args.subcommand == "audit") {
      status = cmd_audit(args, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    status = 2;
  } catch (const NewtonError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    status = 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 2;
  }

  manifest.end_time = current_timestamp();
  manifest.exit_status = status;
  write_manifest(manifest, out);
  return status;
}
