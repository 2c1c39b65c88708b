#include "jetmech/submanifolds.hpp"

#include <algorithm>
#include <cmath>

#include "jetmech/errors.hpp"
#include "jetmech/sampling.hpp"

namespace jetmech {
namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_compatible(const ParamImmersion& C, const SkewTensor& s, TensorKind kind) {
  if (s.kind() != kind) {
    throw InvalidArgument(kind == TensorKind::bivector ? "Poisson check needs a bivector"
                                                       : "presymplectic check needs a 2-form");
  }
  if (!(s.space() == C.space)) throw SpaceMismatch("structure does not live on the immersion target");
}

// Jacobian at x, or nullopt if the point has to be skipped.
std::optional<Mat> checked_jacobian(const ParamImmersion& C, const Vec& x) {
  if (x.size() != C.param_dim) throw ShapeError("parameter vector has the wrong length");
  Mat J;
  try {
    (void)C.map(x);
    J = C.jac(x);
  } catch (const SingularLagrangian&) {
    return std::nullopt;
  }
  if (J.rows() != C.space.dim() || J.cols() != C.param_dim) {
    throw ShapeError("immersion Jacobian has the wrong shape");
  }
  if (numeric_rank(J) != C.param_dim) throw RankDeficient("immersion is not of full rank");
  return J;
}

ParamImmersion compose(MapId id, ParamImmersion inner) {
  const int n = inner.space.n;
  if (!(map_source(id, n) == inner.space)) throw SpaceMismatch("map does not start on the immersion target");
  const CoordinateMap outer = structural_map(id, n);
  ParamImmersion out;
  out.space = map_target(id, n);
  out.param_dim = inner.param_dim;
  out.map = [id, f = inner.map](const Vec& x) { return apply_map(id, f(x)); };
  out.jac = [outer, f = inner.map, df = inner.jac](const Vec& x) {
    return Mat(jacobian(outer, f(x).coords()).mat * df(x));
  };
  return out;
}

// [I; rows 1.. of the Hessian] for sections (x, dF/d(non-time coords)).
Mat section_jacobian(const Jet2& j, int n) {
  const int d = 1 + 2 * n;
  Mat J(d + 2 * n, d);
  J.topRows(d).setIdentity();
  J.bottomRows(2 * n) = j.hessian.bottomRows(2 * n);
  return J;
}

}  // namespace

SubmanifoldReport poisson_lagrangian_check(const ParamImmersion& C, const SkewTensor& lambda,
                                           const std::vector<Vec>& params, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  require_compatible(C, lambda, TensorKind::bivector);
  const int d = C.space.dim();
  const Mat& L = lambda.mat();
  const int expected = numeric_rank(L) / 2;

  SubmanifoldReport report;
  report.n = C.space.n;
  bool ok = true;
  for (const Vec& x : params) {
    const auto J = checked_jacobian(C, x);
    if (!J) {
      ++report.points_skipped;
      continue;
    }
    // alpha with sharp(alpha) = J c for some c
    Mat system(d, d + C.param_dim);
    system << L.transpose(), -*J;
    const Mat preimage = column_basis(null_space(system).topRows(d));
    const double bracket = max_abs(Mat(preimage.transpose() * L * preimage));
    const int inter = intersection_dim(*J, L.transpose());

    ++report.points_tested;
    report.max_bracket_violation = std::max(report.max_bracket_violation, bracket);
    report.intersection_dims.push_back(inter);
    report.expected_dims.push_back(expected);
    ok = ok && bracket <= tol && inter == expected;
  }
  report.pass = ok && report.points_tested > 0;
  return report;
}

SubmanifoldReport presymplectic_lagrangian_check(const ParamImmersion& C, const SkewTensor& omega,
                                                 const std::vector<Vec>& params, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  require_compatible(C, omega, TensorKind::two_form);
  const Mat& W = omega.mat();
  const int half_rank = numeric_rank(W) / 2;
  const Mat kernel = null_space(W);
  const int expected = C.param_dim - half_rank;

  SubmanifoldReport report;
  report.n = C.space.n;
  bool ok = true;
  for (const Vec& x : params) {
    const auto J = checked_jacobian(C, x);
    if (!J) {
      ++report.points_skipped;
      continue;
    }
    const double pulled = max_abs(skew_part(J->transpose() * W * *J));
    const int inter = intersection_dim(*J, kernel);

    ++report.points_tested;
    report.max_bracket_violation = std::max(report.max_bracket_violation, pulled);
    report.intersection_dims.push_back(inter);
    report.expected_dims.push_back(expected);
    ok = ok && pulled <= tol && inter == expected;
  }
  report.pass = ok && report.points_tested > 0;
  return report;
}

ParamImmersion dl_tilde_immersion(const LagrangianSystem& sys) {
  ParamImmersion C;
  C.space = {Space::QUOT_TSTAR_J1PI, sys.n};
  C.param_dim = sys.jet_space().dim();
  C.map = [sys](const Vec& x) { return dl_tilde(sys, SpacePoint(sys.jet_space(), x)); };
  C.jac = [sys](const Vec& x) { return section_jacobian(jet2(sys.L, x), sys.n); };
  return C;
}

ParamImmersion dh_tilde_immersion(const HamiltonianSystem& sys) {
  ParamImmersion C;
  C.space = {Space::PMU_QUOT, sys.n};
  C.param_dim = sys.phase_space().dim();
  C.map = [sys](const Vec& x) { return dh_tilde(sys, SpacePoint(sys.phase_space(), x)); };
  C.jac = [sys](const Vec& x) { return section_jacobian(jet2(sys.H, x), sys.n); };
  return C;
}

ParamImmersion dfh_immersion(const HamiltonianSystem& sys) {
  const int n = sys.n;
  const SpaceId base{Space::TSTARM, n};
  ParamImmersion C;
  C.space = {Space::VHAT1, n};
  C.param_dim = base.dim();
  C.map = [sys, base](const Vec& a) { return dfh(sys, SpacePoint(base, a)); };
  C.jac = [sys, base, n](const Vec& a) {
    const Jet2 j = jet2(sys.H, project_mu(SpacePoint(base, a)).coords());
    const int d = base.dim();
    Mat J = Mat::Zero(d + 1 + 2 * n, d);
    J.topRows(d).setIdentity();
    // Hessian columns (t, q | p) land on parameter columns (t, q | p), skipping p0.
    J.block(d, 0, 1 + 2 * n, 1 + n) = j.hessian.leftCols(1 + n);
    J.block(d, 2 + n, 1 + 2 * n, n) = j.hessian.rightCols(n);
    return J;
  };
  return C;
}

ParamImmersion s_l_immersion(const LagrangianSystem& sys) {
  return compose(MapId::A_PI_INV, dl_tilde_immersion(sys));
}

ParamImmersion s_h_immersion(const HamiltonianSystem& sys) {
  return compose(MapId::B_PI_INV, dh_tilde_immersion(sys));
}

ParamImmersion s_l_tilde_immersion(const LagrangianSystem& sys) {
  const int n = sys.n;
  const SpaceId target{Space::J1TILDE, n};
  ParamImmersion C;
  C.space = target;
  C.param_dim = 2 + 2 * n;
  C.map = [sys, target, n](const Vec& x) {
    const Vec j = x.head(1 + 2 * n);
    const LagrangianJet lj = lagrangian_jet(sys, SpacePoint(sys.jet_space(), j));
    Vec out(target.dim());
    out << x.head(1 + n), x[1 + 2 * n], lj.dv(), x.segment(1 + n, n), lj.dt(), lj.dq();
    return SpacePoint(target, out);
  };
  C.jac = [sys, target, n](const Vec& x) {
    const Jet2 j = jet2(sys.L, x.head(1 + 2 * n));
    const int v0 = 1 + n;
    const int p0_param = 1 + 2 * n;
    Mat J = Mat::Zero(target.dim(), 2 + 2 * n);
    J.block(0, 0, 1 + n, 1 + n).setIdentity();
    J(target.index(Coord::p0), p0_param) = 1.0;
    J.block(target.index(Coord::p), 0, n, 1 + 2 * n) = j.hessian.middleRows(v0, n);
    J.block(target.index(Coord::qdot), v0, n, n).setIdentity();
    J.block(target.index(Coord::pdot0), 0, 1, 1 + 2 * n) = j.hessian.topRows(1);
    J.block(target.index(Coord::pdot), 0, n, 1 + 2 * n) = j.hessian.middleRows(1, n);
    return J;
  };
  return C;
}

ParamImmersion s_h_tilde_immersion(const HamiltonianSystem& sys) {
  return compose(MapId::B_TILDE_INV, dfh_immersion(sys));
}

ParamImmersion identity_immersion(SpaceId space) {
  ParamImmersion C;
  C.space = space;
  C.param_dim = space.dim();
  C.map = [space](const Vec& x) { return SpacePoint(space, x); };
  C.jac = [space](const Vec&) { return Mat(Mat::Identity(space.dim(), space.dim())); };
  return C;
}

ParamImmersion non_closed_section_immersion(int n) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  const SpaceId target{Space::QUOT_TSTAR_J1PI, n};
  const int d = 1 + 2 * n;
  ParamImmersion C;
  C.space = target;
  C.param_dim = d;
  C.map = [target, n, d](const Vec& x) {
    Vec out = Vec::Zero(target.dim());
    out.head(d) = x;
    out.segment(d, n) = x.tail(n);
    return SpacePoint(target, out);
  };
  C.jac = [target, n, d](const Vec&) {
    Mat J = Mat::Zero(target.dim(), d);
    J.topRows(d).setIdentity();
    J.block(d, 1 + n, n, n).setIdentity();
    return J;
  };
  return C;
}

std::string_view submanifold_name(Submanifold which) {
  switch (which) {
    case Submanifold::S_L: return "S_L";
    case Submanifold::S_H: return "S_H";
    case Submanifold::S_L_TILDE: return "S_L_TILDE";
    case Submanifold::S_H_TILDE: return "S_H_TILDE";
  }
  throw InvalidArgument("unknown submanifold");
}

Submanifold parse_submanifold(std::string_view name) {
  for (auto s : {Submanifold::S_L, Submanifold::S_H, Submanifold::S_L_TILDE, Submanifold::S_H_TILDE}) {
    if (submanifold_name(s) == name) return s;
  }
  throw InvalidArgument("unknown submanifold '" + std::string(name) + "'");
}

Vec membership_residual(Submanifold which, const LagrangianSystem* sysL,
                        const HamiltonianSystem* sysH, const SpacePoint& z) {
  const bool lagrangian = which == Submanifold::S_L || which == Submanifold::S_L_TILDE;
  const bool extended = which == Submanifold::S_L_TILDE || which == Submanifold::S_H_TILDE;
  if (lagrangian && sysL == nullptr) throw InvalidArgument("a Lagrangian system is required");
  if (!lagrangian && sysH == nullptr) throw InvalidArgument("a Hamiltonian system is required");

  const int n = lagrangian ? sysL->n : sysH->n;
  require_space(z, {extended ? Space::J1TILDE : Space::J1PI1STAR, n});
  const double t = z.at(Coord::t);
  const Vec q = z.block(Coord::q);
  const Vec p = z.block(Coord::p);
  const Vec qdot = z.block(Coord::qdot);
  const Vec pdot = z.block(Coord::pdot);

  Vec r(extended ? 2 * n + 1 : 2 * n);
  if (lagrangian) {
    Vec j(1 + 2 * n);
    j << t, q, qdot;
    const LagrangianJet lj = lagrangian_jet(*sysL, SpacePoint(sysL->jet_space(), j));
    r.head(n) = p - lj.dv();
    r.segment(n, n) = pdot - lj.dq();
    if (extended) r[2 * n] = z.at(Coord::pdot0) - lj.dt();
  } else {
    Vec v(1 + 2 * n);
    v << t, q, p;
    const Jet2 hj = jet2(sysH->H, v);
    r.head(n) = qdot - hj.gradient.segment(1 + n, n);
    r.segment(n, n) = pdot + hj.gradient.segment(1, n);
    if (extended) r[2 * n] = z.at(Coord::pdot0) + hj.gradient[0];
  }
  return r;
}

EqualityReport equality_check(const LagrangianSystem& sysL, Variant variant, int samples,
                              std::uint64_t seed, double tol) {
  if (samples < 1) throw InvalidArgument("need at least one sample");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const int n = sysL.n;
  const HamiltonianSystem sysH = legendre_dual(sysL);
  const bool ext = variant == Variant::extended;
  const ParamImmersion lag = ext ? s_l_tilde_immersion(sysL) : s_l_immersion(sysL);
  const ParamImmersion ham = ext ? s_h_tilde_immersion(sysH) : s_h_immersion(sysH);
  const Submanifold test_h = ext ? Submanifold::S_H_TILDE : Submanifold::S_H;
  const Submanifold test_l = ext ? Submanifold::S_L_TILDE : Submanifold::S_L;

  EqualityReport report;
  report.scenario = sysL.name;
  report.variant = variant;
  report.n = n;
  report.samples = samples;
  report.seed = seed;
  UniformSampler sampler(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec a = sampler.box(lag.param_dim);
    const Vec b = sampler.box(ham.param_dim);
    try {
      const SpacePoint zl = lag.map(a);
      const SpacePoint zh = ham.map(b);
      const double rh = max_abs(membership_residual(test_h, nullptr, &sysH, zl));
      const double rl = max_abs(membership_residual(test_l, &sysL, nullptr, zh));
      report.max_SH_residual = std::max(report.max_SH_residual, rh);
      report.max_SL_residual = std::max(report.max_SL_residual, rl);
    } catch (const SingularLagrangian&) {
      ++report.points_skipped;
    }
  }
  report.pass = report.points_skipped < samples &&
                std::max(report.max_SH_residual, report.max_SL_residual) <= tol;
  return report;
}

}  // namespace jetmech
