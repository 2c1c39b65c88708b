#include "jetmech/triples.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "jetmech/errors.hpp"
#include "jetmech/sampling.hpp"

namespace jetmech {
namespace {

struct Wedge {
  Coord a;
  Coord b;
};

struct StructureInfo {
  StructureId id;
  std::string_view name;
  Space space;
  TensorKind kind;
  std::vector<Wedge> terms;
};

const std::vector<StructureInfo>& structure_table() {
  using C = Coord;
  using K = TensorKind;
  static const std::vector<StructureInfo> table = {
      {StructureId::LAMBDA_VSTAR, "LAMBDA_VSTAR", Space::VSTAR, K::bivector, {{C::q, C::p}}},
      {StructureId::LAMBDA_VSTAR_COMPLETE, "LAMBDA_VSTAR_COMPLETE", Space::TVSTAR, K::bivector,
       {{C::q, C::pdot}, {C::qdot, C::p}}},
      {StructureId::LAMBDA_J1PI1STAR, "LAMBDA_J1PI1STAR", Space::J1PI1STAR, K::bivector,
       {{C::q, C::pdot}, {C::qdot, C::p}}},
      {StructureId::LAMBDA_TILDE_J1PI, "LAMBDA_TILDE_J1PI", Space::QUOT_TSTAR_J1PI, K::bivector,
       {{C::q, C::p_q}, {C::qdot, C::p_qdot}}},
      {StructureId::LAMBDA_TILDE_PMU, "LAMBDA_TILDE_PMU", Space::PMU_QUOT, K::bivector,
       {{C::q, C::p_q}, {C::p, C::p_p}}},
      {StructureId::OMEGA_J1PI, "OMEGA_J1PI", Space::TSTAR_J1PI, K::two_form,
       {{C::t, C::p_t}, {C::q, C::p_q}, {C::qdot, C::p_qdot}}},
      {StructureId::OMEGA_PMU, "OMEGA_PMU", Space::PMU, K::two_form,
       {{C::t, C::p_t}, {C::q, C::p_q}, {C::p, C::p_p}}},
      {StructureId::OMEGA_J1TILDE, "OMEGA_J1TILDE", Space::J1TILDE, K::two_form,
       {{C::t, C::pdot0}, {C::q, C::pdot}, {C::qdot, C::p}}},
      {StructureId::PHI_VHAT1, "PHI_VHAT1", Space::VHAT1, K::two_form,
       {{C::t, C::p_t}, {C::q, C::p_q}, {C::p, C::p_p}}},
      {StructureId::OMEGA_TSTARM, "OMEGA_TSTARM", Space::TSTARM, K::two_form,
       {{C::t, C::p0}, {C::q, C::p}}},
  };
  return table;
}

const StructureInfo& info(StructureId id) {
  for (const auto& s : structure_table()) {
    if (s.id == id) return s;
  }
  throw InvalidArgument("unknown structure id");
}

// Target coordinate block `to` takes sign * source block `from`.
struct Assign {
  Coord to;
  Coord from;
  int sign;
};

struct MapInfo {
  MapId id;
  std::string_view name;
  Space source;
  Space target;
  std::vector<Assign> rule;
};

const std::vector<MapInfo>& map_table() {
  using C = Coord;
  static const std::vector<MapInfo> table = {
      {MapId::A_M, "A_M", Space::TTSTAR_N, Space::TSTAR_TN,
       {{C::q, C::q, 1}, {C::qdot, C::qdot, 1}, {C::p_q, C::pdot, 1}, {C::p_qdot, C::p, 1}}},
      {MapId::PSI, "PSI", Space::TSTAR_J1PI, Space::J1PI1STAR,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p, C::p_qdot, 1}, {C::qdot, C::qdot, 1}, {C::pdot, C::p_q, 1}}},
      {MapId::A_PI, "A_PI", Space::J1PI1STAR, Space::QUOT_TSTAR_J1PI,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::qdot, C::qdot, 1}, {C::p_q, C::pdot, 1}, {C::p_qdot, C::p, 1}}},
      {MapId::A_PI_INV, "A_PI_INV", Space::QUOT_TSTAR_J1PI, Space::J1PI1STAR,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p, C::p_qdot, 1}, {C::qdot, C::qdot, 1}, {C::pdot, C::p_q, 1}}},
      {MapId::B_PI, "B_PI", Space::J1PI1STAR, Space::PMU_QUOT,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p, C::p, 1}, {C::p_q, C::pdot, -1}, {C::p_p, C::qdot, 1}}},
      {MapId::B_PI_INV, "B_PI_INV", Space::PMU_QUOT, Space::J1PI1STAR,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p, C::p, 1}, {C::qdot, C::p_p, 1}, {C::pdot, C::p_q, -1}}},
      {MapId::A_TILDE, "A_TILDE", Space::J1TILDE, Space::TSTAR_J1PI,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::qdot, C::qdot, 1}, {C::p_t, C::pdot0, 1},
        {C::p_q, C::pdot, 1}, {C::p_qdot, C::p, 1}}},
      {MapId::B_TILDE, "B_TILDE", Space::J1TILDE, Space::VHAT1,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p0, C::p0, 1}, {C::p, C::p, 1}, {C::p_t, C::pdot0, -1},
        {C::p_q, C::pdot, -1}, {C::p_p, C::qdot, 1}}},
      {MapId::B_TILDE_INV, "B_TILDE_INV", Space::VHAT1, Space::J1TILDE,
       {{C::t, C::t, 1}, {C::q, C::q, 1}, {C::p0, C::p0, 1}, {C::p, C::p, 1}, {C::qdot, C::p_p, 1},
        {C::pdot0, C::p_t, -1}, {C::pdot, C::p_q, -1}}},
  };
  return table;
}

const MapInfo& info(MapId id) {
  for (const auto& m : map_table()) {
    if (m.id == id) return m;
  }
  throw InvalidArgument("unknown map id");
}

int block_width(SpaceId space, Coord role) {
  for (const auto& b : layout(space)) {
    if (b.role == role) return b.width;
  }
  throw InvalidArgument("space " + space.name() + " has no such block");
}

template <class T>
std::vector<T> apply_rule(const MapInfo& m, int n, const std::vector<T>& x) {
  const SpaceId src{m.source, n};
  const SpaceId dst{m.target, n};
  std::vector<T> out(dst.dim(), T(0.0));
  for (const auto& a : m.rule) {
    const int width = block_width(dst, a.to);
    const int to = dst.index(a.to);
    const int from = src.index(a.from);
    for (int i = 0; i < width; ++i) out[to + i] = a.sign > 0 ? x[from + i] : -x[from + i];
  }
  return out;
}

}  // namespace

std::string_view structure_name(StructureId id) { return info(id).name; }

StructureId parse_structure(std::string_view name) {
  for (const auto& s : structure_table()) {
    if (s.name == name) return s.id;
  }
  throw InvalidArgument("unknown structure '" + std::string(name) + "'");
}

std::string_view map_name(MapId id) { return info(id).name; }

MapId parse_map(std::string_view name) {
  for (const auto& m : map_table()) {
    if (m.name == name) return m.id;
  }
  throw InvalidArgument("unknown map '" + std::string(name) + "'");
}

SpaceId structure_space(StructureId id, int n) { return {info(id).space, n}; }

TensorKind structure_kind(StructureId id) { return info(id).kind; }

SkewTensor canonical_structure(StructureId id, int n) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  const auto& s = info(id);
  const SpaceId space{s.space, n};
  const int d = space.dim();
  Mat m = Mat::Zero(d, d);
  for (const auto& w : s.terms) {
    const int width = block_width(space, w.a);
    for (int i = 0; i < width; ++i) SkewTensor::add_wedge(m, space.index(w.a, i), space.index(w.b, i));
  }
  return SkewTensor(space, s.kind, m);
}

SpaceId map_source(MapId id, int n) { return {info(id).source, n}; }
SpaceId map_target(MapId id, int n) { return {info(id).target, n}; }

CoordinateMap structural_map(MapId id, int n) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  const MapInfo& m = info(id);
  return forward_mode_map(map_source(id, n), map_target(id, n),
                          [&m, n](const auto& x) { return apply_rule(m, n, x); });
}

SpacePoint apply_map(MapId id, const SpacePoint& x) {
  const int n = x.space().n;
  require_space(x, map_source(id, n));
  const std::vector<double> in(x.coords().data(), x.coords().data() + x.coords().size());
  const std::vector<double> out = apply_rule(info(id), n, in);
  return SpacePoint(map_target(id, n), Eigen::Map<const Vec>(out.data(), static_cast<Eigen::Index>(out.size())));
}

SpacePoint shift_p0(const SpacePoint& x, double c) {
  if (!x.space().has(Coord::p0)) throw SpaceMismatch(x.space().name() + " has no p0 coordinate");
  Vec y = x.coords();
  y[x.space().index(Coord::p0)] += c;
  return SpacePoint(x.space(), y);
}

SpacePoint dl_tilde(const LagrangianSystem& sys, const SpacePoint& j) {
  const LagrangianJet lj = lagrangian_jet(sys, j);
  const int n = sys.n;
  Vec out(1 + 4 * n);
  out << j.coords(), lj.dq(), lj.dv();
  return SpacePoint({Space::QUOT_TSTAR_J1PI, n}, out);
}

SpacePoint dl_full(const LagrangianSystem& sys, const SpacePoint& j) {
  const LagrangianJet lj = lagrangian_jet(sys, j);
  const int n = sys.n;
  Vec out(2 + 4 * n);
  out << j.coords(), lj.dt(), lj.dq(), lj.dv();
  return SpacePoint({Space::TSTAR_J1PI, n}, out);
}

SpacePoint dh_tilde(const HamiltonianSystem& sys, const SpacePoint& v) {
  require_space(v, sys.phase_space());
  const Jet2 j = jet2(sys.H, v.coords());
  const int n = sys.n;
  Vec out(1 + 4 * n);
  out << v.coords(), j.gradient.segment(1, n), j.gradient.segment(1 + n, n);
  return SpacePoint({Space::PMU_QUOT, n}, out);
}

SpacePoint dfh(const HamiltonianSystem& sys, const SpacePoint& a) {
  require_space(a, {Space::TSTARM, sys.n});
  const Jet2 j = jet2(sys.H, project_mu(a).coords());
  const int n = sys.n;
  Vec out(3 + 4 * n);
  out << a.coords(), j.gradient;
  return SpacePoint({Space::VHAT1, n}, out);
}

StructureMapReport verify_structure_map(MapId id, int n, int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw InvalidArgument("need at least one sample");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");

  StructureId source_structure;
  StructureId target_structure;
  int sign = 1;
  bool push = true;
  switch (id) {
    case MapId::A_PI:
      source_structure = StructureId::LAMBDA_J1PI1STAR;
      target_structure = StructureId::LAMBDA_TILDE_J1PI;
      break;
    case MapId::B_PI:
      source_structure = StructureId::LAMBDA_J1PI1STAR;
      target_structure = StructureId::LAMBDA_TILDE_PMU;
      sign = -1;
      break;
    case MapId::A_TILDE:
      source_structure = StructureId::OMEGA_J1PI;
      target_structure = StructureId::OMEGA_J1TILDE;
      push = false;
      break;
    case MapId::B_TILDE:
      source_structure = StructureId::PHI_VHAT1;
      target_structure = StructureId::OMEGA_J1TILDE;
      sign = -1;
      push = false;
      break;
    default:
      throw InvalidArgument("structure check is defined for A_PI, B_PI, A_TILDE and B_TILDE only");
  }

  const CoordinateMap map = structural_map(id, n);
  const SkewTensor given = canonical_structure(source_structure, n);
  const SkewTensor expected = canonical_structure(target_structure, n);
  UniformSampler sampler(seed);

  StructureMapReport report{id, n, samples, seed, sign, 0.0, false};
  for (int s = 0; s < samples; ++s) {
    const Vec x = sampler.box(map.source.dim());
    const LinearMapData jac = jacobian(map, x);
    const SkewTensor image = push ? pushforward_bivector(jac, given) : pullback_two_form(jac, given);
    const double err = (image.mat() - sign * expected.mat()).cwiseAbs().maxCoeff();
    report.max_error = std::max(report.max_error, err);
  }
  report.pass = report.max_error <= tol;
  return report;
}

SpacePoint tangent_lift_restricted(const LagrangianSystem& sys, const SpacePoint& j) {
  const Vec field = euler_lagrange_field(sys, j);
  const CoordinateMap leg = restricted_legendre_map(sys);
  const Vec rate = jacobian(leg, j.coords()).mat * field;
  const SpacePoint base = legendre_restricted(sys, j);
  const int n = sys.n;
  Vec out(1 + 4 * n);
  out << base.coords(), rate.segment(1, n), rate.segment(1 + n, n);
  return SpacePoint({Space::J1PI1STAR, n}, out);
}

SpacePoint tangent_lift_extended(const LagrangianSystem& sys, const SpacePoint& j) {
  const Vec field = euler_lagrange_field(sys, j);
  const CoordinateMap leg = extended_legendre_map(sys);
  const Vec rate = jacobian(leg, j.coords()).mat * field;
  const SpacePoint base = legendre_extended(sys, j);
  const int n = sys.n;
  Vec out(3 + 4 * n);
  out << base.coords(), rate.segment(1, n), rate[1 + n], rate.segment(2 + n, n);
  return SpacePoint({Space::J1TILDE, n}, out);
}

double lemma_restricted_residual(const LagrangianSystem& sys, const SpacePoint& j) {
  const SpacePoint lhs = apply_map(MapId::A_PI, tangent_lift_restricted(sys, j));
  return (lhs.coords() - dl_tilde(sys, j).coords()).cwiseAbs().maxCoeff();
}

double lemma_extended_residual(const LagrangianSystem& sys, const SpacePoint& j) {
  const SpacePoint lhs = apply_map(MapId::A_TILDE, tangent_lift_extended(sys, j));
  return (lhs.coords() - dl_full(sys, j).coords()).cwiseAbs().maxCoeff();
}

}  // namespace jetmech
