#include "jetmech/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jetmech/triples.hpp"
#include "jetmech/submanifolds.hpp"

namespace jetmech {
namespace {

constexpr double kTimeTol = 1e-12;

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double node_time(const IntegratorConfig& cfg, int k) { return cfg.t0 + k * cfg.step; }

}  // namespace

int IntegratorConfig::steps() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive");
  if (!(t1 > t0)) throw InvalidArgument("t1 must exceed t0");
  const double ratio = (t1 - t0) / step;
  const double count = std::round(ratio);
  const double ulp = std::nextafter(ratio, std::numeric_limits<double>::infinity()) - ratio;
  if (std::abs(ratio - count) > ulp) {
    throw InvalidArgument("(t1 - t0) / step is not an integer");
  }
  if (count > std::numeric_limits<int>::max() - 1) throw InvalidArgument("too many steps");
  return static_cast<int>(count);
}

Trajectory integrate(const VectorField& field, const SpacePoint& x0, const IntegratorConfig& cfg) {
  const int steps = cfg.steps();
  const SpaceId space = x0.space();
  const double h = cfg.step;

  std::vector<Vec> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  Vec x = x0.coords();
  x[0] = cfg.t0;
  nodes.push_back(x);
  Vec carry = Vec::Zero(x.size());

  auto eval = [&](const Vec& y) { return field(SpacePoint(space, y)); };

  for (int k = 0; k < steps; ++k) {
    Vec increment;
    try {
      const Vec k1 = eval(x);
      const Vec k2 = eval(x + 0.5 * h * k1);
      const Vec k3 = eval(x + 0.5 * h * k2);
      const Vec k4 = eval(x + h * k3);
      increment = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const Error& e) {
      Trajectory partial(space, cfg.t0, h, nodes);
      throw IntegrationAborted("integration aborted at t = " + format_double(node_time(cfg, k)) +
                                   ": " + e.what(),
                               std::move(partial), k);
    }
    // Kahan summation keeps the rounding of x + increment from piling up
    // over many small steps.
    const Vec y = increment - carry;
    const Vec sum = x + y;
    carry = (sum - x) - y;
    x = sum;

    const double expected = node_time(cfg, k + 1);
    if (std::abs(x[0] - expected) > kTimeTol * std::max(1.0, std::abs(expected))) {
      Trajectory partial(space, cfg.t0, h, nodes);
      throw IntegrationAborted("time component of the field is not 1", std::move(partial), k);
    }
    x[0] = expected;
    carry[0] = 0.0;
    nodes.push_back(x);
  }
  return Trajectory(space, cfg.t0, h, std::move(nodes));
}

std::optional<double> richardson_order(const VectorField& field, const SpacePoint& x0,
                                       const IntegratorConfig& cfg) {
  IntegratorConfig half = cfg;
  half.step = cfg.step / 2.0;
  IntegratorConfig quarter = cfg;
  quarter.step = cfg.step / 4.0;
  const Trajectory a = integrate(field, x0, cfg);
  const Trajectory b = integrate(field, x0, half);
  const Trajectory c = integrate(field, x0, quarter);
  double coarse = 0.0;
  double fine = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    coarse = std::max(coarse, max_abs(a.sample(k) - b.sample(2 * k)));
    fine = std::max(fine, max_abs(b.sample(2 * k) - c.sample(4 * k)));
  }
  if (fine == 0.0) return std::nullopt;
  return coarse / fine;
}

EquivalenceReport equivalence_report(const LagrangianSystem& sys, const IntegratorConfig& cfg,
                                     const SpacePoint& x0) {
  require_space(x0, sys.jet_space());
  const int n = sys.n;
  const HamiltonianSystem ham = legendre_dual(sys);

  const VectorField el = [&sys](const SpacePoint& j) { return euler_lagrange_field(sys, j); };
  const VectorField reeb = [&ham](const SpacePoint& v) { return reeb_field(ham, v); };
  const VectorField ext = [&ham](const SpacePoint& a) { return extended_field(ham, a); };

  const Trajectory sigma = integrate(el, x0, cfg);
  const Trajectory tau = integrate(reeb, legendre_restricted(sys, x0), cfg);
  const Trajectory big = integrate(ext, legendre_extended(sys, x0), cfg);

  EquivalenceReport r;
  r.scenario = sys.name;
  r.t0 = cfg.t0;
  r.t1 = cfg.t1;
  r.step = cfg.step;

  // leg_L along the Lagrangian flow, as a curve in VSTAR.
  std::vector<Vec> legs;
  legs.reserve(sigma.size());
  for (int k = 0; k < sigma.size(); ++k) {
    const SpacePoint j(sys.jet_space(), sigma.sample(k));
    legs.push_back(legendre_restricted(sys, j).coords());
    r.sup_gap = std::max(r.sup_gap, max_abs(legs.back() - tau.sample(k)));
    r.lemma_l1_max = std::max(r.lemma_l1_max, lemma_restricted_residual(sys, j));
  }
  const Trajectory leg_curve(ham.phase_space(), cfg.t0, cfg.step, std::move(legs));

  const SpaceId lifted{Space::J1PI1STAR, n};
  // Interior nodes only, where the rates are central differences.
  for (int k = 1; k + 1 < sigma.size(); ++k) {
    // (t, q, p, qdot, pdot) of the lifted curves.
    const Vec& v = leg_curve.sample(k);
    const Vec dv = leg_curve.derivative(k);
    Vec z(1 + 4 * n);
    z << v, dv.segment(1, n), dv.segment(1 + n, n);
    r.max_SL_residual = std::max(
        r.max_SL_residual, max_abs(membership_residual(Submanifold::S_L, &sys, nullptr, SpacePoint(lifted, z))));

    const Vec& w = tau.sample(k);
    const Vec dw = tau.derivative(k);
    z << w, dw.segment(1, n), dw.segment(1 + n, n);
    r.max_SH_residual = std::max(
        r.max_SH_residual, max_abs(membership_residual(Submanifold::S_H, nullptr, &ham, SpacePoint(lifted, z))));

    const SpacePoint a({Space::TSTARM, n}, big.sample(k));
    const double dp0 = big.derivative(k)[1 + n];
    const Jet2 hj = jet2(ham.H, project_mu(a).coords());
    r.ec2_residual_max = std::max(r.ec2_residual_max, std::abs(dp0 + hj.gradient[0]));
  }

  r.order_estimate = richardson_order(el, x0, cfg);
  return r;
}

}  // namespace jetmech
