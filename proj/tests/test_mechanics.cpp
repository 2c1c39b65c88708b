#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "jetmech/errors.hpp"
#include "jetmech/mechanics.hpp"
#include "jetmech/scenarios.hpp"
#include "test_util.hpp"

using namespace jetmech;
using std::numbers::pi;
using testutil::max_abs;
using testutil::vec;

namespace {

LagrangianSystem lag(const std::string& name) { return *builtin_scenario(name).lagrangian; }
HamiltonianSystem ham(const std::string& text, int n = 1) {
  return HamiltonianSystem(n, ScalarField::from_expression(Expression::parse(text, VariableSet::hamiltonian, n)), text);
}
SpacePoint j1(double t, double q, double v) { return SpacePoint({Space::J1PI, 1}, vec({t, q, v})); }
SpacePoint vs(double t, double q, double p) { return SpacePoint({Space::VSTAR, 1}, vec({t, q, p})); }
SpacePoint tstar(double t, double q, double p0, double p) { return SpacePoint({Space::TSTARM, 1}, vec({t, q, p0, p})); }

// Resonant solution of q'' + q = sin t with q(0) = q'(0) = 0.
double resonance(double t) { return (std::sin(t) - t * std::cos(t)) / 2; }
double resonance_rate(double t) { return t * std::sin(t) / 2; }

Trajectory curve_in_m(double t0, double step, int count, std::function<double(double)> q) {
  return sample_curve({Space::M, 1}, t0, step, count, [q](double t) { return vec({q(t)}); });
}

}  // namespace

TEST_SUITE("mechanics") {

TEST_CASE("restricted Legendre transform") {
  CHECK(legendre_restricted(lag("free_particle"), j1(0, 0, 2)).coords() == vec({0, 0, 2}));
  const Vec ck = legendre_restricted(lag("caldirola_kanai"), j1(1, 0, 2)).coords();
  CHECK(ck[2] == doctest::Approx(2 * std::exp(1.0)).epsilon(1e-15));
  CHECK(legendre_restricted(lag("driven_oscillator"), j1(pi / 2, 1, 0)).coords() == vec({pi / 2, 1, 0}));
  CHECK_THROWS_AS(legendre_restricted(lag("free_particle"), vs(0, 0, 2)), SpaceMismatch);
}

TEST_CASE("extended Legendre transform") {
  CHECK(legendre_extended(lag("free_particle"), j1(0, 0, 2)).coords() == vec({0, 0, -2, 2}));
  CHECK(legendre_extended(lag("harmonic"), j1(0, 1, 0)).coords() == vec({0, 1, -0.5, 0}));
  testutil::Rng rng(3);
  for (const auto& name : builtin_scenario_names()) {
    const LagrangianSystem sys = lag(name);
    for (int i = 0; i < 50; ++i) {
      const SpacePoint j(sys.jet_space(), rng.vec(3));
      CHECK(project_mu(legendre_extended(sys, j)).coords() == legendre_restricted(sys, j).coords());
    }
  }
}

TEST_CASE("regularity") {
  const Regularity free = regularity(lag("free_particle"), j1(0, 0, 0));
  CHECK(free.W == Mat::Identity(1, 1));
  CHECK(free.regular);
  CHECK_FALSE(regularity(lag("linear_velocity"), j1(0, 1, 2)).regular);
  const Regularity ck = regularity(lag("caldirola_kanai"), j1(1, 0, 0));
  CHECK(ck.W(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(ck.regular);
}

TEST_CASE("regularity matches invertibility of the Legendre Jacobian") {
  testutil::Rng rng(4);
  for (const auto& name : builtin_scenario_names()) {
    const LagrangianSystem sys = lag(name);
    for (int i = 0; i < 20; ++i) {
      const SpacePoint j(sys.jet_space(), rng.vec(3));
      const Mat J = jacobian(restricted_legendre_map(sys), j.coords()).mat;
      CHECK(regularity(sys, j).regular == (numeric_rank(J) == 3));
    }
  }
}

TEST_CASE("Euler-Lagrange field") {
  CHECK(euler_lagrange_field(lag("free_particle"), j1(0.4, 1, -3)) == vec({1, -3, 0}));
  const Vec d = euler_lagrange_field(lag("driven_oscillator"), j1(pi / 2, 0, 0));
  CHECK(d[0] == 1);
  CHECK(d[1] == 0);
  CHECK(d[2] == doctest::Approx(1).epsilon(1e-15));
  CHECK_THROWS_AS(euler_lagrange_field(lag("linear_velocity"), j1(0, 0, 0)), SingularLagrangian);

  // Caldirola-Kanai: q'' = -q' - q
  const Vec ck = euler_lagrange_field(lag("caldirola_kanai"), j1(0.7, 0.3, -1.2));
  CHECK(ck[2] == doctest::Approx(1.2 - 0.3).epsilon(1e-14));

  testutil::Rng rng(8);
  for (const auto& name : hyperregular_scenario_names()) {
    const LagrangianSystem sys = lag(name);
    for (int i = 0; i < 50; ++i) {
      const Vec x = rng.vec(3);
      const Vec f = euler_lagrange_field(sys, SpacePoint(sys.jet_space(), x));
      CHECK(f[0] == 1.0);
      CHECK(f[1] == x[2]);
    }
  }
}

TEST_CASE("Euler-Lagrange residual along curves") {
  const LagrangianSystem free = lag("free_particle");
  const Trajectory line = curve_in_m(0, 1e-3, 1001, [](double t) { return t; });
  const Trajectory parabola = curve_in_m(0, 1e-3, 1001, [](double t) { return t * t; });
  for (int k : {1, 500, 999}) {
    CHECK(std::abs(el_residual(free, line, k)[0]) <= 1e-10);
    CHECK(el_residual(free, parabola, k)[0] == doctest::Approx(2).epsilon(1e-6));
  }
  auto worst_on = [](double t1, double h) {
    const Trajectory sol = curve_in_m(0, h, static_cast<int>(std::lround(t1 / h)) + 1, resonance);
    double worst = 0;
    for (int k = 1; k < sol.size() - 1; ++k) {
      worst = std::max(worst, std::abs(el_residual(lag("driven_oscillator"), sol, k)[0]));
    }
    return worst;
  };
  CHECK(worst_on(5, 1e-3) <= 1e-6);
  // second order: h^2/3 * q'''' from the nested central differences
  const double ratio = worst_on(10, 2e-3) / worst_on(10, 1e-3);
  CHECK(ratio == doctest::Approx(4).epsilon(0.05));
  CHECK_THROWS_AS(el_residual(free, line, 0), IndexOutOfRange);
  CHECK_THROWS_AS(el_residual(free, line, 1000), IndexOutOfRange);
}

TEST_CASE("action functional") {
  CHECK(action(lag("free_particle"), curve_in_m(0, 1e-3, 1001, [](double t) { return t; })) ==
        doctest::Approx(0.5).epsilon(1e-8));
  // [0, pi] split into 3142 steps of about 1e-3
  const double h = pi / 3142;
  CHECK(std::abs(action(lag("harmonic"), curve_in_m(0, h, 3143, [](double t) { return std::sin(t); }))) <= 1e-6);
  CHECK(action(lag("harmonic"), curve_in_m(0, 0.1, 11, [](double) { return 0.0; })) == 0.0);
  // odd number of intervals goes through the 3/8 closing rule
  CHECK(action(lag("free_particle"), curve_in_m(0, 0.1, 12, [](double t) { return t; })) ==
        doctest::Approx(0.55).epsilon(1e-12));
  CHECK_THROWS_AS(action(lag("free_particle"), curve_in_m(0, 0.1, 2, [](double t) { return t; })), InvalidArgument);
}

TEST_CASE("action is stationary at a solution") {
  const LagrangianSystem sys = lag("harmonic");
  // step about 1e-3; Simpson's alternating weights leave a first-order term
  // of size O(h) that coarser steps let dominate at delta = 1e-5
  const double h = pi / 3142;
  const Trajectory sol = curve_in_m(0, h, 3143, [](double t) { return std::sin(t); });
  const double base = action(sys, sol);
  auto bumped = [&](double delta) {
    std::vector<Vec> s = sol.samples();
    s[1571][1] += delta;
    return action(sys, Trajectory(sol.space(), 0, h, s)) - base;
  };
  const double ratio = bumped(1e-4) / bumped(1e-5);
  CHECK(ratio >= 50);
  CHECK(ratio <= 200);
}

TEST_CASE("Reeb field and cosymplectic form") {
  CHECK(reeb_field(ham("0.5*p1*p1 + 0.5*q1*q1"), vs(0, 1, 0)) == vec({1, 0, -1}));
  CHECK(reeb_field(ham("0.5*p1*p1"), vs(0, 0, 2)) == vec({1, 2, 0}));

  const SkewTensor w = omega_h(ham("0.5*p1*p1"), vs(0, 0, 2));
  Mat expected = Mat::Zero(3, 3);
  SkewTensor::add_wedge(expected, 1, 2);     // dq ^ dp
  SkewTensor::add_wedge(expected, 2, 0, 2);  // dH ^ dt = 2 dp ^ dt
  CHECK(w.mat() == expected);
  Mat canonical = Mat::Zero(3, 3);
  SkewTensor::add_wedge(canonical, 1, 2);
  CHECK(omega_h(ham("7"), vs(1, 2, 3)).mat() == canonical);

  testutil::Rng rng(12);
  for (const auto& name : hyperregular_scenario_names()) {
    const HamiltonianSystem H = builtin_scenario(name).hamiltonian_or_dual();
    for (int i = 0; i < 100; ++i) {
      const SpacePoint v(H.phase_space(), rng.vec(3));
      const Vec r = reeb_field(H, v);
      CHECK(r[0] == 1.0);
      CHECK(max_abs(interior(omega_h(H, v), r)) <= 1e-12);
    }
  }
}

TEST_CASE("extended Hamiltonian function and field") {
  CHECK(fh(ham("0.5*p1*p1"), tstar(0, 1, 5, 0)) == 5);
  CHECK(fh(ham("0.5*p1*p1 + 0.5*q1*q1"), tstar(0, 1, 5, 0)) == 5.5);
  const HamiltonianSystem driven = *builtin_scenario("driven_oscillator").hamiltonian;
  const Vec e = extended_field(driven, tstar(0, 1, 0, 0));
  CHECK(e == vec({1, 0, 1, -1}));
  CHECK(extended_field(ham("0.5*p1*p1"), tstar(0.3, -1, 4, 2.5)) == vec({1, 2.5, 0, 0}));

  testutil::Rng rng(13);
  for (const auto& name : hyperregular_scenario_names()) {
    const HamiltonianSystem H = builtin_scenario(name).hamiltonian_or_dual();
    for (int i = 0; i < 100; ++i) {
      const SpacePoint a({Space::TSTARM, 1}, rng.vec(4));
      const Vec x = extended_field(H, a);
      const Vec r = reeb_field(H, project_mu(a));
      CHECK(vec({x[0], x[1], x[3]}) == r);
      // F_h = p0 + H, so dF_h/dp0 = 1
      const Vec up = a.coords() + vec({0, 0, 0.25, 0});
      CHECK(fh(H, SpacePoint(a.space(), up)) - fh(H, a) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("Hamilton residual along curves") {
  const HamiltonianSystem free = ham("0.5*p1*p1");
  const SpaceId v{Space::VSTAR, 1};
  const Trajectory good = sample_curve(v, 0, 1e-3, 101, [](double t) { return vec({2 * t, 2}); });
  const Trajectory bad = sample_curve(v, 0, 1e-3, 101, [](double t) { return vec({t, 2}); });
  CHECK(max_abs(hamilton_residual(free, good, 50)) <= 1e-10);
  CHECK(hamilton_residual(free, bad, 50)[0] == doctest::Approx(-1).epsilon(1e-10));
  const HamiltonianSystem driven = *builtin_scenario("driven_oscillator").hamiltonian;
  const Trajectory sol = sample_curve(v, 0, 1e-3, 10001, [](double t) { return vec({resonance(t), resonance_rate(t)}); });
  double worst = 0;
  for (int k = 1; k < sol.size() - 1; ++k) worst = std::max(worst, max_abs(hamilton_residual(driven, sol, k)));
  CHECK(worst <= 1e-6);
  CHECK_THROWS_AS(hamilton_residual(free, good, 100), IndexOutOfRange);
}

TEST_CASE("Legendre inversion") {
  CHECK(invert_restricted_legendre(lag("free_particle"), vs(0, 0, 2)).coords() == vec({0, 0, 2}));
  const SpacePoint ck = invert_restricted_legendre(lag("caldirola_kanai"), vs(1, 0, 2 * std::exp(1.0)));
  CHECK(std::abs(ck[2] - 2) <= 1e-12);
  CHECK_THROWS_AS(invert_restricted_legendre(lag("linear_velocity"), vs(0, 0, 1)), SingularLagrangian);

  CHECK(hamiltonian_from_lagrangian(lag("free_particle"), vs(0, 0, 2)).coords() == vec({0, 0, -2, 2}));
  CHECK(hamiltonian_from_lagrangian(lag("harmonic"), vs(0, 1, 0)).coords() == vec({0, 1, -0.5, 0}));

  testutil::Rng rng(21);
  const LagrangianSystem stiff(1, ScalarField::from_expression(Expression::parse(
                                      "0.5*v1*v1 + 0.25*pow(v1, 4) - q1*sin(t)", VariableSet::lagrangian, 1)),
                               "quartic");
  for (const LagrangianSystem& sys : {lag("driven_oscillator"), lag("caldirola_kanai"), stiff}) {
    for (int i = 0; i < 50; ++i) {
      const SpacePoint v({Space::VSTAR, 1}, rng.vec(3));
      const SpacePoint j = invert_restricted_legendre(sys, v);
      CHECK(max_abs(legendre_restricted(sys, j).coords() - v.coords()) <= 1e-12);
    }
  }
}

TEST_CASE("Legendre dual Hamiltonian") {
  // quartic kinetic term: H has no closed form, compare with p v - L
  const LagrangianSystem sys(1, ScalarField::from_expression(Expression::parse(
                                    "0.5*v1*v1 + 0.25*pow(v1, 4) + t*q1", VariableSet::lagrangian, 1)),
                             "quartic");
  const HamiltonianSystem H = legendre_dual(sys);
  testutil::Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const Vec x = rng.vec(3);
    const SpacePoint j = invert_restricted_legendre(sys, SpacePoint({Space::VSTAR, 1}, x));
    const double v = j[2];
    CHECK(H.H(x) == doctest::Approx(x[2] * v - sys.L(j.coords())).epsilon(1e-13));
    const Jet2 exact = jet2(H.H, x);
    const Jet2 approx = fd_jet2(H.H, x, 1e-4);
    CHECK(max_abs(exact.gradient - approx.gradient) <= 1e-7);
    CHECK(max_abs(exact.hessian - approx.hessian) <= 1e-5);
    CHECK(exact.gradient[2] == doctest::Approx(v).epsilon(1e-13));
  }
}

TEST_CASE("trajectory invariants and CSV") {
  const SpaceId m{Space::M, 1};
  CHECK_THROWS(Trajectory(m, 0, 0.1, {vec({0, 1}), vec({0.3, 1})}));
  CHECK_THROWS(Trajectory(m, 0, 0.1, {}));
  const Trajectory tr = sample_curve({Space::VSTAR, 1}, 0, 0.25, 5, [](double t) { return vec({t / 3, -t}); });
  std::stringstream csv;
  write_csv(csv, tr);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,q1,p1");
  csv.seekg(0);
  const Trajectory back = read_csv(csv, {Space::VSTAR, 1});
  REQUIRE(back.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(back.sample(k) == tr.sample(k));
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");

  const Trajectory exact = sample_curve(m, 0, 0.1, 4, [](double t) { return vec({t * t}); },
                                        [](double t) { return vec({2 * t}); });
  CHECK(exact.has_exact_derivatives());
  CHECK(exact.derivative(3)[1] == doctest::Approx(0.6));
}

TEST_CASE("scenario configs") {
  const ScenarioConfig c = parse_scenario_config(
      R"({"name": "spring", "n": 1, "lagrangian": "0.5*m*v1*v1 - 0.5*k*q1*q1", "parameters": {"m": 2, "k": 8}})");
  const Scenario s = make_scenario(c);
  CHECK(s.hyperregular);
  CHECK(euler_lagrange_field(*s.lagrangian, j1(0, 1, 0))[2] == doctest::Approx(-4));
  CHECK_THROWS_AS(parse_scenario_config(R"({"name": "x", "n": 1})"), ParseError);
  CHECK_THROWS_AS(parse_scenario_config("{"), ParseError);
  CHECK_THROWS_AS(make_scenario(parse_scenario_config(R"({"name": "x", "n": 1, "lagrangian": "v2"})")), ParseError);
  CHECK_THROWS_AS(builtin_scenario("nope"), InvalidArgument);
  CHECK_THROWS_AS(builtin_scenario("harmonic", 2), InvalidArgument);

  // native built-ins and their expression forms agree
  testutil::Rng rng(30);
  for (const auto& name : builtin_scenario_names()) {
    const Scenario native = builtin_scenario(name);
    const Scenario parsed = make_scenario(builtin_config(name));
    for (int i = 0; i < 10; ++i) {
      const Vec x = rng.vec(3);
      CHECK(native.lagrangian->L(x) == doctest::Approx(parsed.lagrangian->L(x)).epsilon(1e-14));
      if (native.hamiltonian) {
        CHECK(native.hamiltonian->H(x) == doctest::Approx(parsed.hamiltonian->H(x)).epsilon(1e-14));
      }
    }
  }
  const Scenario fp3 = builtin_scenario("free_particle", 3);
  CHECK(fp3.lagrangian->L(vec({0, 0, 0, 0, 1, 2, 3})) == 7);
}

TEST_CASE("explicit Hamiltonians agree with the Legendre dual") {
  testutil::Rng rng(31);
  for (const auto& name : hyperregular_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    const HamiltonianSystem dual = legendre_dual(*s.lagrangian);
    for (int i = 0; i < 20; ++i) {
      const Vec x = rng.vec(3);
      CHECK(s.hamiltonian->H(x) == doctest::Approx(dual.H(x)).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
