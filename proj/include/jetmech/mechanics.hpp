#pragma once

// Time-dependent Lagrangian and Hamiltonian dynamics in explicit coordinates.
//
// A Lagrangian L(t, q, v) is a field on J1PI = (t, q, qdot); a Hamiltonian
// H(t, q, p) is a field on VSTAR and determines the Hamiltonian section
// h(t, q, p) = (t, q, -H, p) into TSTARM.

#include <map>
#include <optional>
#include <string>

#include "jetmech/geometry.hpp"
#include "jetmech/scalar_field.hpp"
#include "jetmech/trajectory.hpp"

namespace jetmech {

struct LagrangianSystem {
  int n = 1;
  ScalarField L;
  std::string name;

  LagrangianSystem(int n, ScalarField L, std::string name);
  [[nodiscard]] SpaceId jet_space() const { return {Space::J1PI, n}; }
};

struct HamiltonianSystem {
  int n = 1;
  ScalarField H;
  std::string name;

  HamiltonianSystem(int n, ScalarField H, std::string name);
  [[nodiscard]] SpaceId phase_space() const { return {Space::VSTAR, n}; }
};

/// Derivatives of L split by coordinate block at a point of J1PI.
struct LagrangianJet {
  int n;
  Jet2 jet;

  [[nodiscard]] double L() const { return jet.value; }
  [[nodiscard]] double dt() const { return jet.gradient[0]; }
  [[nodiscard]] Vec dq() const { return jet.gradient.segment(1, n); }
  [[nodiscard]] Vec dv() const { return jet.gradient.segment(1 + n, n); }
  /// W_ij = d2L / dv_i dv_j
  [[nodiscard]] Mat vv() const { return jet.hessian.block(1 + n, 1 + n, n, n); }
  /// d2L / dv_i dq_j
  [[nodiscard]] Mat vq() const { return jet.hessian.block(1 + n, 1, n, n); }
  /// d2L / dv_i dt
  [[nodiscard]] Vec vt() const { return jet.hessian.block(1 + n, 0, n, 1); }
};

LagrangianJet lagrangian_jet(const LagrangianSystem& sys, const SpacePoint& j);

/// leg_L(t, q, v) = (t, q, dL/dv) in VSTAR.
SpacePoint legendre_restricted(const LagrangianSystem& sys, const SpacePoint& j);

/// Leg_L(t, q, v) = (t, q, E_L, dL/dv) in TSTARM, with E_L = L - v . dL/dv.
SpacePoint legendre_extended(const LagrangianSystem& sys, const SpacePoint& j);

struct Regularity {
  Mat W;
  bool regular = false;
  /// Ratio of extreme singular values of W (infinite when singular).
  double condition = 0.0;
};

/// Regular iff the smallest singular value of W exceeds tol * max(1, largest).
Regularity regularity(const LagrangianSystem& sys, const SpacePoint& j,
                      double tol = kDefaultRankTol);

/// Euler-Lagrange vector field on J1PI: (1, v, W^{-1}(L_q - L_vq v - L_vt)).
/// Throws SingularLagrangian when W is singular at j.
Vec euler_lagrange_field(const LagrangianSystem& sys, const SpacePoint& j);

/// d/dt(dL/dv) - dL/dq at interior node k of a curve in M.
Vec el_residual(const LagrangianSystem& sys, const Trajectory& sigma, int k);

/// Composite Simpson quadrature of L along the jet prolongation of sigma.
double action(const LagrangianSystem& sys, const Trajectory& sigma);

/// Reeb field of (Omega_h, dt) on VSTAR: (1, dH/dp, -dH/dq).
Vec reeb_field(const HamiltonianSystem& sys, const SpacePoint& v);

/// Omega_h = dq ^ dp + dH ^ dt at v.
SkewTensor omega_h(const HamiltonianSystem& sys, const SpacePoint& v);

/// F_h(t, q, p0, p) = p0 + H(t, q, p).
double fh(const HamiltonianSystem& sys, const SpacePoint& a);

/// Hamiltonian field of F_h on TSTARM: (1, dH/dp, -dH/dt, -dH/dq).
Vec extended_field(const HamiltonianSystem& sys, const SpacePoint& a);

/// (dq/dt - dH/dp, dp/dt + dH/dq) at interior node k of a curve in VSTAR.
Vec hamilton_residual(const HamiltonianSystem& sys, const Trajectory& tau, int k);

struct NewtonOptions {
  double tol = 1e-12;
  int max_iterations = 50;
};

/// Solves dL/dv(t, q, v) = p for v by Newton iteration; the default initial
/// guess is v = p. Throws SingularLagrangian or NoConvergence.
SpacePoint invert_restricted_legendre(const LagrangianSystem& sys, const SpacePoint& v,
                                      const std::optional<Vec>& guess = std::nullopt,
                                      NewtonOptions options = {});

/// Leg_L(leg_L^{-1}(v)); its p0 coordinate is -H(v).
SpacePoint hamiltonian_from_lagrangian(const LagrangianSystem& sys, const SpacePoint& v);

/// The Hamiltonian H(t, q, p) = p . v - L(t, q, v) with v = leg_L^{-1}(p),
/// differentiated through the implicit function theorem.
HamiltonianSystem legendre_dual(const LagrangianSystem& sys);

/// Coordinate maps with exact Jacobians built from the second derivatives of
/// L or H.
CoordinateMap restricted_legendre_map(const LagrangianSystem& sys);
CoordinateMap extended_legendre_map(const LagrangianSystem& sys);
CoordinateMap hamiltonian_section_map(const HamiltonianSystem& sys);

/// Point of the projection mu : TSTARM -> VSTAR.
SpacePoint project_mu(const SpacePoint& a);

}  // namespace jetmech
