#pragma once

// Fixed-step RK4 integration and the Lagrangian / Hamiltonian equivalence
// experiment.

#include <functional>
#include <optional>
#include <string>

#include "jetmech/errors.hpp"
#include "jetmech/mechanics.hpp"
#include "jetmech/trajectory.hpp"

namespace jetmech {

struct IntegratorConfig {
  double t0 = 0.0;
  double t1 = 1.0;
  double step = 1e-3;

  /// Number of steps; throws InvalidArgument unless t1 > t0, step > 0 and
  /// (t1 - t0) / step is within one ulp of an integer.
  [[nodiscard]] int steps() const;
};

/// Tangent vector at a point; the time component must be 1.
using VectorField = std::function<Vec(const SpacePoint&)>;

/// Thrown when the field fails mid-run. Carries the nodes computed so far.
class IntegrationAborted : public Error {
 public:
  IntegrationAborted(const std::string& what, Trajectory partial, int failed_step)
      : Error(what), partial_(std::move(partial)), failed_step_(failed_step) {}

  [[nodiscard]] const Trajectory& partial() const { return partial_; }
  /// Index of the step that could not be completed (from node k to k+1).
  [[nodiscard]] int failed_step() const { return failed_step_; }

 private:
  Trajectory partial_;
  int failed_step_;
};

/// Classic RK4 with compensated accumulation of the state. The time
/// coordinate (index 0) is checked against t0 + k*step to 1e-12 and then set
/// to that value exactly. x0's time coordinate is replaced by cfg.t0.
Trajectory integrate(const VectorField& field, const SpacePoint& x0, const IntegratorConfig& cfg);

struct EquivalenceReport {
  std::string scenario;
  double t0 = 0.0;
  double t1 = 0.0;
  double step = 0.0;
  /// sup_k |leg_L(sigma_k) - tau_k|
  double sup_gap = 0.0;
  /// Membership and energy residuals use central differences at interior
  /// nodes.
  double max_SL_residual = 0.0;
  double max_SH_residual = 0.0;
  double lemma_l1_max = 0.0;
  /// max |dp0/dt + dH/dt| along the extended flow
  double ec2_residual_max = 0.0;
  /// e(h) / e(h/2) from Richardson differences of the Lagrangian route;
  /// empty when both differences vanish (flows integrated exactly).
  std::optional<double> order_estimate;
};

/// Integrates the Euler-Lagrange field from x0, the Reeb field of the
/// Legendre-dual Hamiltonian from leg_L(x0), and the extended field from
/// Leg_L(x0), then compares them.
EquivalenceReport equivalence_report(const LagrangianSystem& sys, const IntegratorConfig& cfg,
                                     const SpacePoint& x0);

/// Richardson ratio max|x_h - x_{h/2}| / max|x_{h/2} - x_{h/4}| over the
/// nodes of the coarse grid. Empty if the denominator is zero.
std::optional<double> richardson_order(const VectorField& field, const SpacePoint& x0,
                                       const IntegratorConfig& cfg);

}  // namespace jetmech
