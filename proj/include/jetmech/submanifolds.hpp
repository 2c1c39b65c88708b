#pragma once

// Pointwise Lagrangian-submanifold checks, membership residuals and
// equality checks between the Lagrangian and Hamiltonian submanifolds.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jetmech/triples.hpp"

namespace jetmech {

/// A parametrized piece of submanifold C with inclusion i : params -> space.
struct ParamImmersion {
  SpaceId space;
  int param_dim = 0;
  std::function<SpacePoint(const Vec&)> map;
  /// Exact Jacobian of `map`, dim(space) x param_dim.
  std::function<Mat(const Vec&)> jac;
};

/// Shared report for both checks. For the Poisson check `intersection_dims`
/// holds dim(TC ∩ im sharp) and `expected_dims` rank(Lambda)/2; for the
/// presymplectic check they hold dim(TC ∩ ker omega) and
/// param_dim - rank(omega)/2, and `max_bracket_violation` is max |i*omega|.
struct SubmanifoldReport {
  std::string object;
  std::string scenario;
  int n = 1;
  int points_tested = 0;
  int points_skipped = 0;
  double max_bracket_violation = 0.0;
  std::vector<int> intersection_dims;
  std::vector<int> expected_dims;
  bool pass = false;
};

/// Points where `C.map` throws SingularLagrangian are skipped and counted.
/// Throws RankDeficient if the immersion Jacobian loses rank.
SubmanifoldReport poisson_lagrangian_check(const ParamImmersion& C, const SkewTensor& lambda,
                                           const std::vector<Vec>& params, double tol);
SubmanifoldReport presymplectic_lagrangian_check(const ParamImmersion& C, const SkewTensor& omega,
                                                 const std::vector<Vec>& params, double tol);

// Immersions used by the suites.
ParamImmersion dl_tilde_immersion(const LagrangianSystem& sys);   // over J1PI, into QUOT_TSTAR_J1PI
ParamImmersion dh_tilde_immersion(const HamiltonianSystem& sys);  // over VSTAR, into PMU_QUOT
ParamImmersion dfh_immersion(const HamiltonianSystem& sys);       // over TSTARM, into VHAT1
ParamImmersion s_l_immersion(const LagrangianSystem& sys);        // A_PI^-1(dL~), into J1PI1STAR
ParamImmersion s_h_immersion(const HamiltonianSystem& sys);       // reeb graph, into J1PI1STAR
/// (t, q, v, p0) -> (t, q, p0, dL/dv, v, dL/dt, dL/dq) in J1TILDE.
ParamImmersion s_l_tilde_immersion(const LagrangianSystem& sys);
/// (t, q, p0, p) -> B_TILDE^-1(dF_h) in J1TILDE.
ParamImmersion s_h_tilde_immersion(const HamiltonianSystem& sys);
ParamImmersion identity_immersion(SpaceId space);
/// Section p_q = qdot, p_qdot = 0 of QUOT_TSTAR_J1PI over J1PI; not Lagrangian.
ParamImmersion non_closed_section_immersion(int n);

enum class Submanifold { S_L, S_H, S_L_TILDE, S_H_TILDE };

std::string_view submanifold_name(Submanifold which);
Submanifold parse_submanifold(std::string_view name);

/// Defining-equation residuals; zero iff z lies on the submanifold.
/// S_L, S_H take z in J1PI1STAR; the tilde variants take z in J1TILDE.
Vec membership_residual(Submanifold which, const LagrangianSystem* sysL,
                        const HamiltonianSystem* sysH, const SpacePoint& z);

enum class Variant { restricted, extended };

struct EqualityReport {
  std::string scenario;
  Variant variant = Variant::restricted;
  int n = 1;
  int samples = 0;
  std::uint64_t seed = 0;
  int points_skipped = 0;
  /// Lagrangian-side points tested against the Hamiltonian equations.
  double max_SH_residual = 0.0;
  /// Hamiltonian-side points tested against the Euler-Lagrange equations.
  double max_SL_residual = 0.0;
  bool pass = false;
};

/// The Hamiltonian is the Legendre dual of sysL. Points in [-2, 2]^k.
EqualityReport equality_check(const LagrangianSystem& sysL, Variant variant, int samples,
                              std::uint64_t seed, double tol = 1e-10);

}  // namespace jetmech
