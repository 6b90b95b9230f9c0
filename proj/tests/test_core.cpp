#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "carleman/boundary.hpp"
#include "carleman/grid.hpp"
#include "carleman/initial.hpp"
#include "carleman/state.hpp"
#include "carleman/validate.hpp"

using namespace carleman;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid1D(3), std::invalid_argument);
  const Grid1D g(7);
  CHECK(g.nx() == 7);
  double prev = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double x = g.center(i);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(x > prev);
    prev = x;
  }
  // center spacing spans the interval exactly in the rational representation
  CHECK(g.center(0) == doctest::Approx(0.5 / 7).epsilon(1e-15));
  CHECK(g.center(6) == doctest::Approx(6.5 / 7).epsilon(1e-15));
}

TEST_CASE("boundary evaluation") {
  BoundaryData bc;
  bc.horizon = 4.0;
  bc.phi_minus = TimeFunction::constant(2.0);
  bc.phi_plus = TimeFunction::ramp(1.0, 0.5);
  CHECK(bc.eval(Side::Left, 0.0) == 2.0);
  CHECK(bc.eval(Side::Left, 3.7) == 2.0);
  CHECK(bc.eval(Side::Right, 2.0) == doctest::Approx(2.0).epsilon(1e-15));

  bc.phi_plus = TimeFunction::sinusoid(2.0, 1.0, std::numbers::pi);
  CHECK(bc.eval(Side::Right, 0.5) == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(bc.eval(Side::Left, -0.5), std::domain_error);
  CHECK_THROWS_AS(bc.eval(Side::Left, 4.5), std::domain_error);
}

TEST_CASE("entropy params from closed-form norms") {
  SUBCASE("constants") {
    BoundaryData bc{TimeFunction::constant(1.0), TimeFunction::constant(1.0), 1.0};
    const EntropyParams p = entropy_params(bc);
    CHECK(p.nu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.phi_m == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("ramp against constant") {
    BoundaryData bc{TimeFunction::ramp(1.0, 0.5), TimeFunction::constant(1.0), 2.0};
    const EntropyParams p = entropy_params(bc);
    CHECK(p.nu == doctest::Approx(2.5).epsilon(1e-15));  // sup value 2 plus slope 0.5
    CHECK(p.phi_m == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("sinusoid against constant") {
    BoundaryData bc{TimeFunction::sinusoid(2.0, 1.0, std::numbers::pi),
                    TimeFunction::constant(2.0), 1.0};
    const EntropyParams p = entropy_params(bc);
    CHECK(p.nu == doctest::Approx(3.0 + std::numbers::pi).epsilon(1e-14));
    CHECK(p.phi_m == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("short sinusoid window uses the exact range") {
    // omega*T = pi/4 < pi/2: sin never reaches its peak
    BoundaryData bc{TimeFunction::sinusoid(2.0, 1.0, std::numbers::pi / 4),
                    TimeFunction::constant(5.0), 1.0};
    const EntropyParams p = entropy_params(bc);
    CHECK(p.phi_m == doctest::Approx(2.0).epsilon(1e-15));
    const double sup_val = 2.0 + std::sin(std::numbers::pi / 4);
    const double sup_der = std::numbers::pi / 4;  // cos max at t = 0
    CHECK(p.nu == doctest::Approx(std::max(sup_val + sup_der, 5.0)).epsilon(1e-14));
  }
  SUBCASE("nu is monotone in the ramp slope") {
    double prev = 0.0;
    for (double slope : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      BoundaryData bc{TimeFunction::ramp(1.0, slope), TimeFunction::constant(1.0), 2.0};
      const double nu = entropy_params(bc).nu;
      CHECK(nu >= prev);
      prev = nu;
    }
  }
}

TEST_CASE("midpoint quadrature") {
  SUBCASE("constants") {
    Grid1D g(10);
    CHECK(l2_norm_sq(Eigen::ArrayXd::Constant(10, 1.0), g) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l2_norm_sq(Eigen::ArrayXd::Constant(10, 2.0), g) == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("int x^2 dx on a fine grid") {
    Grid1D g(1000);
    CHECK(l2_norm_sq(g.centers(), g) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  }
  SUBCASE("quadratic homogeneity") {
    Grid1D g(37);
    Eigen::ArrayXd f(37);
    for (int i = 0; i < 37; ++i) f[i] = std::sin(7.0 * i) + 1.3;
    const double base = l2_norm_sq(f, g);
    CHECK(l2_norm_sq((3.0 * f).eval(), g) == doctest::Approx(9.0 * base).epsilon(1e-13));
  }
}

TEST_CASE("macro/kinetic round trip is exact") {
  const Grid1D g(64);
  for (double eps : {1.0, 0.1, 1e-3}) {
    KineticState s;
    s.t = 0.4;
    s.u.resize(g.nx());
    s.v.resize(g.nx());
    for (int i = 0; i < g.nx(); ++i) {
      s.u[i] = 0.5 + 0.3 * std::cos(3.0 * i);
      s.v[i] = 0.7 + 0.2 * std::sin(5.0 * i);
    }
    const MacroField m = macro_from_kinetic(s, eps);
    const KineticState back = kinetic_from_macro(m, s.t);
    CHECK((back.u - s.u).abs().maxCoeff() <= 1e-15 * s.u.maxCoeff());
    CHECK((back.v - s.v).abs().maxCoeff() <= 1e-15 * s.v.maxCoeff());
    CHECK((m.rho >= 0.0).all());
  }
}

TEST_CASE("admissibility validation") {
  InitialData ok_init;
  ok_init.u_in = Eigen::ArrayXd::Constant(8, 1.0);
  ok_init.v_in = Eigen::ArrayXd::Constant(8, 1.0);
  BoundaryData bc{TimeFunction::constant(1.0), TimeFunction::constant(1.0), 1.0};

  SUBCASE("plainly admissible data accepted") {
    CHECK(validate_admissible(bc, ok_init, 0.0).ok());
  }
  SUBCASE("sinusoid touching zero rejected for positivity") {
    BoundaryData bad = bc;
    bad.phi_minus = TimeFunction::sinusoid(1.0, 1.0, 1.0);
    const auto r = validate_admissible(bad, ok_init, 0.0);
    CHECK(!r.ok());
    CHECK(r.joined().find("positivity of phi-") != std::string::npos);
  }
  SUBCASE("alpha outside the interval rejected") {
    const auto r = validate_admissible(bc, ok_init, 1.5);
    CHECK(!r.ok());
    CHECK(r.joined().find("[-1, 1]") != std::string::npos);
  }
  SUBCASE("negative initial data rejected") {
    InitialData bad = ok_init;
    bad.v_in[3] = -0.25;
    const auto r = validate_admissible(bc, bad, 0.0);
    CHECK(!r.ok());
    CHECK(r.joined().find("v_in") != std::string::npos);
  }
  SUBCASE("every violation is reported, not just the first") {
    InitialData bad = ok_init;
    bad.u_in[0] = -1.0;
    const auto r = validate_admissible(bc, bad, 2.0);
    CHECK(r.violations.size() >= 2);
  }
}

TEST_CASE("initial data presets") {
  const Grid1D g(50);
  SUBCASE("constant") {
    InitialSpec s;
    s.kind = InitialSpec::Kind::Constant;
    s.u0 = 2.0;
    s.v0 = 0.5;
    const InitialData d = build_initial(s, g);
    CHECK(d.u_in.minCoeff() == 2.0);
    CHECK(d.v_in.maxCoeff() == 0.5);
  }
  SUBCASE("step splits at x_split") {
    InitialSpec s;
    s.kind = InitialSpec::Kind::Step;
    s.u_left = 1.0;
    s.u_right = 3.0;
    s.x_split = 0.5;
    const InitialData d = build_initial(s, g);
    CHECK(d.u_in[0] == 1.0);
    CHECK(d.u_in[49] == 3.0);
  }
  SUBCASE("random is nonnegative and seed-reproducible") {
    InitialSpec s;
    s.kind = InitialSpec::Kind::Random;
    s.lo = 0.0;
    s.hi = 2.0;
    s.seed = 7;
    const InitialData a = build_initial(s, g);
    const InitialData b = build_initial(s, g);
    CHECK((a.u_in >= 0.0).all());
    CHECK((a.u_in == b.u_in).all());
    CHECK((a.v_in == b.v_in).all());
  }
  SUBCASE("file round trip and length check") {
    InitialSpec s;
    s.kind = InitialSpec::Kind::Bump;
    const InitialData d = build_initial(s, g);
    const std::string path = "/tmp/carleman_init_test.txt";
    save_initial(d, path);
    const InitialData back = load_initial(path, g);
    CHECK((back.u_in - d.u_in).abs().maxCoeff() == 0.0);
    CHECK_THROWS(load_initial(path, Grid1D(49)));
    std::filesystem::remove(path);
  }
}
