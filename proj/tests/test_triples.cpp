#include "doctest.h"
#include "jetmech/errors.hpp"
#include "jetmech/scenarios.hpp"
#include "jetmech/triples.hpp"
#include "test_util.hpp"

using namespace jetmech;
using testutil::max_abs;
using testutil::vec;

namespace {

Mat wedges(int dim, std::initializer_list<std::pair<int, int>> pairs) {
  Mat m = Mat::Zero(dim, dim);
  for (auto [a, b] : pairs) {
    m(a, b) = 1;
    m(b, a) = -1;
  }
  return m;
}

SpacePoint point(Space s, std::initializer_list<double> xs) { return SpacePoint({s, 1}, vec(xs)); }

LagrangianSystem lag(const std::string& name) { return *builtin_scenario(name).lagrangian; }
HamiltonianSystem ham(const std::string& text) {
  return HamiltonianSystem(1, ScalarField::from_expression(Expression::parse(text, VariableSet::hamiltonian, 1)), text);
}

}  // namespace

TEST_SUITE("triples") {

TEST_CASE("canonical structures in coordinates") {
  // J1PI1STAR (t, q, p, qdot, pdot)
  CHECK(canonical_structure(StructureId::LAMBDA_J1PI1STAR, 1).mat() == wedges(5, {{1, 4}, {3, 2}}));
  // J1TILDE (t, q, p0, p, qdot, pdot0, pdot)
  CHECK(canonical_structure(StructureId::OMEGA_J1TILDE, 1).mat() == wedges(7, {{0, 5}, {1, 6}, {4, 3}}));
  // VHAT1 (t, q, p0, p, p_t, p_q, p_p)
  CHECK(canonical_structure(StructureId::PHI_VHAT1, 1).mat() == wedges(7, {{0, 4}, {1, 5}, {3, 6}}));
  CHECK(canonical_structure(StructureId::OMEGA_TSTARM, 1).mat() == wedges(4, {{0, 2}, {1, 3}}));
  CHECK(structure_kind(StructureId::LAMBDA_TILDE_PMU) == TensorKind::bivector);
  CHECK(structure_kind(StructureId::OMEGA_PMU) == TensorKind::two_form);
  CHECK(structure_space(StructureId::LAMBDA_TILDE_J1PI, 2) == SpaceId{Space::QUOT_TSTAR_J1PI, 2});
  CHECK(parse_structure("PHI_VHAT1") == StructureId::PHI_VHAT1);
  CHECK_THROWS_AS(parse_structure("OMEGA"), InvalidArgument);
  CHECK_THROWS_AS(canonical_structure(StructureId::OMEGA_PMU, 0), InvalidArgument);
}

TEST_CASE("structural maps on sample points") {
  CHECK(apply_map(MapId::A_PI, point(Space::J1PI1STAR, {0.5, 1, 2, 3, 4})).coords() == vec({0.5, 1, 3, 4, 2}));
  CHECK(apply_map(MapId::B_PI, point(Space::J1PI1STAR, {0.5, 1, 2, 3, 4})).coords() == vec({0.5, 1, 2, -4, 3}));
  CHECK(apply_map(MapId::A_TILDE, point(Space::J1TILDE, {0, 1, 2, 3, 4, 5, 6})).coords() == vec({0, 1, 4, 5, 6, 3}));
  CHECK(apply_map(MapId::B_TILDE, point(Space::J1TILDE, {0, 1, 2, 3, 4, 5, 6})).coords() == vec({0, 1, 2, 3, -5, -6, 4}));
  CHECK(apply_map(MapId::PSI, point(Space::TSTAR_J1PI, {0, 1, 2, 3, 4, 5})).coords() == vec({0, 1, 5, 2, 4}));
  CHECK(apply_map(MapId::A_M, point(Space::TTSTAR_N, {1, 2, 3, 4})).coords() == vec({1, 3, 4, 2}));
  CHECK_THROWS_AS(apply_map(MapId::A_PI, point(Space::J1TILDE, {0, 1, 2, 3, 4, 5, 6})), SpaceMismatch);
  CHECK(map_name(MapId::B_TILDE_INV) == "B_TILDE_INV");
  CHECK(parse_map("A_PI") == MapId::A_PI);
}

TEST_CASE("inverse maps are exact") {
  testutil::Rng rng(40);
  for (int n = 1; n <= 3; ++n) {
    for (auto [fwd, inv] : {std::pair{MapId::A_PI, MapId::A_PI_INV}, std::pair{MapId::B_PI, MapId::B_PI_INV},
                            std::pair{MapId::B_TILDE, MapId::B_TILDE_INV}}) {
      for (int i = 0; i < 100; ++i) {
        const SpacePoint x(map_source(fwd, n), rng.vec(map_source(fwd, n).dim()));
        CHECK(apply_map(inv, apply_map(fwd, x)).coords() == x.coords());
      }
    }
  }
}

TEST_CASE("R-action on p0") {
  testutil::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const SpacePoint x({Space::J1TILDE, 2}, rng.vec(11));
    const double c = rng.uniform(-5, 5);
    CHECK(apply_map(MapId::A_TILDE, shift_p0(x, c)).coords() == apply_map(MapId::A_TILDE, x).coords());
    const Vec diff = apply_map(MapId::B_TILDE, shift_p0(x, c)).coords() - apply_map(MapId::B_TILDE, x).coords();
    const int p0 = SpaceId{Space::VHAT1, 2}.index(Coord::p0);
    CHECK(diff[p0] == doctest::Approx(c).epsilon(1e-15));
    Vec rest = diff;
    rest[p0] = 0;
    CHECK(max_abs(rest) == 0);
  }
  CHECK_THROWS_AS(shift_p0(point(Space::VSTAR, {0, 0, 0}), 1), SpaceMismatch);
}

TEST_CASE("A_PI covers the jet projection") {
  testutil::Rng rng(42);
  const int n = 2;
  for (int i = 0; i < 50; ++i) {
    Vec x = rng.vec(1 + 4 * n);
    Vec y = x;
    // change p and pdot, keep (t, q, qdot)
    const SpaceId s{Space::J1PI1STAR, n};
    y.segment(s.index(Coord::p), n) = rng.vec(n);
    y.segment(s.index(Coord::pdot), n) = rng.vec(n);
    const Vec a = apply_map(MapId::A_PI, SpacePoint(s, x)).coords();
    const Vec b = apply_map(MapId::A_PI, SpacePoint(s, y)).coords();
    CHECK(a.head(1 + 2 * n) == b.head(1 + 2 * n));
    CHECK(a.head(1 + 2 * n) == vec({x[0], x[1], x[2], x[s.index(Coord::qdot)], x[s.index(Coord::qdot, 1)]}));
  }
}

TEST_CASE("canonical sections") {
  CHECK(dl_tilde(lag("free_particle"), point(Space::J1PI, {0, 0, 2})).coords() == vec({0, 0, 2, 0, 2}));
  CHECK(dl_tilde(lag("harmonic"), point(Space::J1PI, {0, 1, 0})).coords() == vec({0, 1, 0, -1, 0}));
  const SpacePoint sl = apply_map(MapId::A_PI_INV, dl_tilde(lag("free_particle"), point(Space::J1PI, {0, 0, 2})));
  CHECK(sl.coords() == vec({0, 0, 2, 2, 0}));

  const HamiltonianSystem osc = ham("0.5*p1*p1 + 0.5*q1*q1");
  CHECK(dh_tilde(osc, point(Space::VSTAR, {0, 1, 2})).coords() == vec({0, 1, 2, 1, 2}));
  CHECK(dh_tilde(ham("0.5*p1*p1"), point(Space::VSTAR, {0, 3, 2})).coords() == vec({0, 3, 2, 0, 2}));
  const SpacePoint v = point(Space::VSTAR, {0.2, 1, 2});
  const Vec r = reeb_field(osc, v);
  CHECK(apply_map(MapId::B_PI_INV, dh_tilde(osc, v)).coords() == vec({0.2, 1, 2, r[1], r[2]}));

  CHECK(dfh(osc, point(Space::TSTARM, {0, 1, 5, 2})).coords() == vec({0, 1, 5, 2, 0, 1, 2}));
  CHECK(dfh(osc, point(Space::TSTARM, {0, 1, 9, 2})).coords().tail(3) == vec({0, 1, 2}));
  CHECK(dfh(ham("0"), point(Space::TSTARM, {3, 1, 9, 2})).coords().tail(3) == vec({0, 0, 0}));

  CHECK(dl_full(lag("driven_oscillator"), point(Space::J1PI, {0, 2, 1})).coords() == vec({0, 2, 1, 2, -2, 1}));
}

TEST_CASE("structure map theorems") {
  for (int n = 1; n <= 3; ++n) {
    for (MapId id : {MapId::A_PI, MapId::B_PI, MapId::A_TILDE, MapId::B_TILDE}) {
      const StructureMapReport r = verify_structure_map(id, n, 50, 9, 1e-12);
      CHECK(r.pass);
      CHECK(r.max_error == 0);
    }
  }
  CHECK(verify_structure_map(MapId::A_PI, 2, 50, 1, 1e-12).sign == 1);
  CHECK(verify_structure_map(MapId::B_PI, 1, 50, 1, 1e-12).sign == -1);
  CHECK(verify_structure_map(MapId::B_TILDE, 3, 50, 1, 1e-12).sign == -1);
  CHECK_THROWS_AS(verify_structure_map(MapId::PSI, 1, 10, 0, 1e-12), InvalidArgument);
  CHECK_THROWS_AS(verify_structure_map(MapId::A_PI, 1, 0, 0, 1e-12), InvalidArgument);
  CHECK_THROWS_AS(verify_structure_map(MapId::A_PI, 1, 10, 0, 0.0), InvalidArgument);
}

TEST_CASE("kernel of the presymplectic forms is the p0 direction") {
  for (int n = 1; n <= 3; ++n) {
    for (StructureId id : {StructureId::OMEGA_J1TILDE, StructureId::PHI_VHAT1}) {
      const SkewTensor s = canonical_structure(id, n);
      const auto kernel = kernel_basis(s);
      REQUIRE(kernel.size() == 1);
      Vec k = kernel[0] / kernel[0][s.space().index(Coord::p0)];
      k[s.space().index(Coord::p0)] = 0;
      CHECK(max_abs(k) <= 1e-12);
      CHECK(skew_rank(s) == 2 + 4 * n);
    }
  }
}

TEST_CASE("Legendre lemmas") {
  testutil::Rng rng(43);
  for (const auto& name : hyperregular_scenario_names()) {
    const LagrangianSystem sys = lag(name);
    for (int i = 0; i < 100; ++i) {
      const SpacePoint j(sys.jet_space(), rng.vec(3));
      CHECK(lemma_restricted_residual(sys, j) <= 1e-12);
      CHECK(lemma_extended_residual(sys, j) <= 1e-12);
    }
  }
  // Hand-computed lift for the driven oscillator at (t, q, v):
  // leg = (t, q, v), d/dt p = -q + sin t.
  const SpacePoint j = point(Space::J1PI, {0.5, 2, -1});
  const Vec lift = tangent_lift_restricted(lag("driven_oscillator"), j).coords();
  CHECK(lift.head(4) == vec({0.5, 2, -1, -1}));
  CHECK(lift[4] == doctest::Approx(-2 + std::sin(0.5)).epsilon(1e-15));
}

}  // TEST_SUITE
