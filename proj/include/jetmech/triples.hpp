#pragma once

// Structural maps, canonical structures and canonical sections of the
// restricted and extended triples.
//
//   restricted:  QUOT_TSTAR_J1PI <--A_PI-- J1PI1STAR --B_PI--> PMU_QUOT
//   extended:    TSTAR_J1PI    <--A_TILDE-- J1TILDE --B_TILDE--> VHAT1

#include <cstdint>
#include <string>

#include "jetmech/mechanics.hpp"

namespace jetmech {

enum class StructureId {
  LAMBDA_VSTAR,
  LAMBDA_VSTAR_COMPLETE,
  LAMBDA_J1PI1STAR,
  LAMBDA_TILDE_J1PI,
  LAMBDA_TILDE_PMU,
  OMEGA_J1PI,
  OMEGA_PMU,
  OMEGA_J1TILDE,
  PHI_VHAT1,
  OMEGA_TSTARM,
};

enum class MapId {
  A_M,
  PSI,
  A_PI,
  A_PI_INV,
  B_PI,
  B_PI_INV,
  A_TILDE,
  B_TILDE,
  B_TILDE_INV,
};

std::string_view structure_name(StructureId id);
StructureId parse_structure(std::string_view name);
std::string_view map_name(MapId id);
MapId parse_map(std::string_view name);

/// Space the structure lives on, for fiber dimension n.
SpaceId structure_space(StructureId id, int n);
TensorKind structure_kind(StructureId id);

/// Constant matrix of the named structure in canonical coordinate order.
SkewTensor canonical_structure(StructureId id, int n);

SpaceId map_source(MapId id, int n);
SpaceId map_target(MapId id, int n);

/// The map as a CoordinateMap with a forward-mode Jacobian.
CoordinateMap structural_map(MapId id, int n);

/// Image of x; throws SpaceMismatch if x is not in the source space.
SpacePoint apply_map(MapId id, const SpacePoint& x);

/// The R-action p0 -> p0 + c on spaces carrying p0 (TSTARM, J1TILDE, VHAT1).
SpacePoint shift_p0(const SpacePoint& x, double c);

/// dL~(t, q, v) = (t, q, v, dL/dq, dL/dv) in QUOT_TSTAR_J1PI.
SpacePoint dl_tilde(const LagrangianSystem& sys, const SpacePoint& j);

/// Full differential dL(t, q, v) = (t, q, v, dL/dt, dL/dq, dL/dv) in TSTAR_J1PI.
SpacePoint dl_full(const LagrangianSystem& sys, const SpacePoint& j);

/// dh~(t, q, p) = (t, q, p, dH/dq, dH/dp) in PMU_QUOT.
SpacePoint dh_tilde(const HamiltonianSystem& sys, const SpacePoint& v);

/// dF_h(t, q, p0, p) = (t, q, p0, p, dH/dt, dH/dq, dH/dp) in VHAT1.
SpacePoint dfh(const HamiltonianSystem& sys, const SpacePoint& a);

struct StructureMapReport {
  MapId map;
  int n = 1;
  int samples = 0;
  std::uint64_t seed = 0;
  int sign = 1;
  double max_error = 0.0;
  bool pass = false;
};

/// Pushes (A_PI, B_PI) or pulls back (A_TILDE, B_TILDE) the source structure
/// through the map's Jacobian at seeded points of [-2, 2]^dim and compares it
/// with sign * target structure.
StructureMapReport verify_structure_map(MapId id, int n, int samples, std::uint64_t seed,
                                        double tol);

/// Lemma residuals at a point of J1PI for a regular Lagrangian:
///   restricted  |A_PI(T leg_L . R_L) - dL~|
///   extended    |A_TILDE(T Leg_L . R_L) - dL|
double lemma_restricted_residual(const LagrangianSystem& sys, const SpacePoint& j);
double lemma_extended_residual(const LagrangianSystem& sys, const SpacePoint& j);

/// T leg_L . R_L(j) as a point of J1PI1STAR (time rate 1 dropped).
SpacePoint tangent_lift_restricted(const LagrangianSystem& sys, const SpacePoint& j);
/// T Leg_L . R_L(j) as a point of J1TILDE.
SpacePoint tangent_lift_extended(const LagrangianSystem& sys, const SpacePoint& j);

}  // namespace jetmech
