#include "jetmech/mechanics.hpp"

#include <cmath>
#include <limits>

#include "jetmech/errors.hpp"

namespace jetmech {
namespace {

Vec join(double t, const Vec& a, const Vec& b) {
  Vec x(1 + a.size() + b.size());
  x << t, a, b;
  return x;
}

struct SvdExtremes {
  double smallest;
  double largest;
};

SvdExtremes extremes(const Mat& w) {
  Eigen::JacobiSVD<Mat> svd(w);
  const Vec& s = svd.singularValues();
  return {s.minCoeff(), s.maxCoeff()};
}

bool is_regular(const Mat& w, double tol) {
  const auto e = extremes(w);
  return e.smallest > tol * std::max(1.0, e.largest);
}

void require_interior(const Trajectory& traj, int k) {
  if (k < 1 || k > traj.size() - 2) {
    throw IndexOutOfRange("node " + std::to_string(k) + " is not interior to a trajectory of " +
                          std::to_string(traj.size()) + " samples");
  }
}

// Velocity block of the jet prolongation of a curve in M at node k.
Vec curve_velocity(const Trajectory& sigma, int k) {
  return sigma.derivative(k).segment(1, sigma.space().n);
}

SpacePoint prolong(const Trajectory& sigma, int k) {
  const int n = sigma.space().n;
  const Vec& x = sigma.sample(k);
  return SpacePoint({Space::J1PI, n}, join(x[0], x.segment(1, n), curve_velocity(sigma, k)));
}

// H(t, q, p) = p.v - L(t, q, v) at v = leg_L^{-1}(p).
class LegendreDualModel final : public ScalarField::Model {
 public:
  explicit LegendreDualModel(LagrangianSystem sys) : sys_(std::move(sys)) {}

  [[nodiscard]] int arity() const override { return 1 + 2 * sys_.n; }

  [[nodiscard]] double value(const Vec& x) const override {
    const SpacePoint j = solve(x);
    const Vec p = x.segment(1 + sys_.n, sys_.n);
    return p.dot(j.block(Coord::qdot)) - sys_.L(j.coords());
  }

  [[nodiscard]] Jet2 jet(const Vec& x) const override {
    const int n = sys_.n;
    const int base = 1 + n;  // (t, q)
    const SpacePoint j = solve(x);
    const LagrangianJet lj = lagrangian_jet(sys_, j);
    const Vec v = j.block(Coord::qdot);
    const Vec p = x.segment(base, n);

    const Mat& hess = lj.jet.hessian;
    const Mat Lyy = hess.topLeftCorner(base, base);
    const Mat Lvy = hess.block(base, 0, n, base);
    const Mat winv_raw = lj.vv().inverse();
    const Mat winv = 0.5 * (winv_raw + winv_raw.transpose());

    Jet2 out;
    out.value = p.dot(v) - lj.L();
    out.gradient = Vec(base + n);
    out.gradient.head(base) = -lj.jet.gradient.head(base);
    out.gradient.tail(n) = v;

    // dv/dy = -W^{-1} L_vy, dv/dp = W^{-1}
    const Mat dv_dy = -winv * Lvy;
    const Mat cross = Lvy.transpose() * winv * Lvy;
    out.hessian = Mat(base + n, base + n);
    out.hessian.topLeftCorner(base, base) = -Lyy + 0.5 * (cross + cross.transpose());
    out.hessian.block(base, 0, n, base) = dv_dy;
    out.hessian.block(0, base, base, n) = dv_dy.transpose();
    out.hessian.bottomRightCorner(n, n) = winv;
    return out;
  }

 private:
  SpacePoint solve(const Vec& x) const {
    return invert_restricted_legendre(sys_, SpacePoint({Space::VSTAR, sys_.n}, x));
  }

  LagrangianSystem sys_;
};

}  // namespace

LagrangianSystem::LagrangianSystem(int n_, ScalarField L_, std::string name_)
    : n(n_), L(std::move(L_)), name(std::move(name_)) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  if (L.arity() != 1 + 2 * n) throw ShapeError("Lagrangian arity must be 1 + 2n");
}

HamiltonianSystem::HamiltonianSystem(int n_, ScalarField H_, std::string name_)
    : n(n_), H(std::move(H_)), name(std::move(name_)) {
  if (n < 1) throw InvalidArgument("fiber dimension must be positive");
  if (H.arity() != 1 + 2 * n) throw ShapeError("Hamiltonian arity must be 1 + 2n");
}

LagrangianJet lagrangian_jet(const LagrangianSystem& sys, const SpacePoint& j) {
  require_space(j, sys.jet_space());
  return {sys.n, jet2(sys.L, j.coords())};
}

SpacePoint legendre_restricted(const LagrangianSystem& sys, const SpacePoint& j) {
  const LagrangianJet lj = lagrangian_jet(sys, j);
  return SpacePoint({Space::VSTAR, sys.n}, join(j[0], j.block(Coord::q), lj.dv()));
}

SpacePoint legendre_extended(const LagrangianSystem& sys, const SpacePoint& j) {
  const LagrangianJet lj = lagrangian_jet(sys, j);
  const Vec p = lj.dv();
  const double energy = lj.L() - j.block(Coord::qdot).dot(p);
  Vec x(2 + 2 * sys.n);
  x << j[0], j.block(Coord::q), energy, p;
  return SpacePoint({Space::TSTARM, sys.n}, x);
}

Regularity regularity(const LagrangianSystem& sys, const SpacePoint& j, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  Regularity r;
  r.W = lagrangian_jet(sys, j).vv();
  const auto e = extremes(r.W);
  r.regular = e.smallest > tol * std::max(1.0, e.largest);
  r.condition = e.smallest > 0.0 ? e.largest / e.smallest : std::numeric_limits<double>::infinity();
  return r;
}

Vec euler_lagrange_field(const LagrangianSystem& sys, const SpacePoint& j) {
  const LagrangianJet lj = lagrangian_jet(sys, j);
  const Mat W = lj.vv();
  if (!is_regular(W, kDefaultRankTol)) {
    throw SingularLagrangian("velocity Hessian is singular at t=" + format_double(j[0]));
  }
  const Vec v = j.block(Coord::qdot);
  const Vec force = lj.dq() - lj.vq() * v - lj.vt();
  const Vec accel = W.partialPivLu().solve(force);
  Vec out(1 + 2 * sys.n);
  out << 1.0, v, accel;
  return out;
}

Vec el_residual(const LagrangianSystem& sys, const Trajectory& sigma, int k) {
  if (!(sigma.space() == SpaceId{Space::M, sys.n})) {
    throw SpaceMismatch("Euler-Lagrange residual needs a curve in M");
  }
  require_interior(sigma, k);
  auto momentum = [&](int i) { return lagrangian_jet(sys, prolong(sigma, i)).dv(); };
  const Vec dp_dt = (momentum(k + 1) - momentum(k - 1)) / (2.0 * sigma.step());
  return dp_dt - lagrangian_jet(sys, prolong(sigma, k)).dq();
}

double action(const LagrangianSystem& sys, const Trajectory& sigma) {
  if (!(sigma.space() == SpaceId{Space::M, sys.n})) throw SpaceMismatch("action needs a curve in M");
  const int count = sigma.size();
  if (count < 3) throw InvalidArgument("action needs at least 3 samples");
  std::vector<double> f(count);
  for (int k = 0; k < count; ++k) f[k] = sys.L(prolong(sigma, k).coords());

  const double h = sigma.step();
  const int intervals = count - 1;
  // Simpson on an even number of intervals, closing with the 3/8 rule when odd.
  const int simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double total = 0.0;
  for (int k = 0; k + 2 <= simpson_end; k += 2) total += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  if (simpson_end != intervals) {
    const int k = simpson_end;
    total += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return total;
}

Vec reeb_field(const HamiltonianSystem& sys, const SpacePoint& v) {
  require_space(v, sys.phase_space());
  const Jet2 j = jet2(sys.H, v.coords());
  const int n = sys.n;
  Vec out(1 + 2 * n);
  out << 1.0, j.gradient.segment(1 + n, n), -j.gradient.segment(1, n);
  return out;
}

SkewTensor omega_h(const HamiltonianSystem& sys, const SpacePoint& v) {
  require_space(v, sys.phase_space());
  const SpaceId space = sys.phase_space();
  const Jet2 j = jet2(sys.H, v.coords());
  const int d = space.dim();
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < sys.n; ++i) {
    SkewTensor::add_wedge(m, space.index(Coord::q, i), space.index(Coord::p, i));
  }
  const int t = space.index(Coord::t);
  for (int a = 0; a < d; ++a) {
    if (a != t) SkewTensor::add_wedge(m, a, t, j.gradient[a]);
  }
  return SkewTensor(space, TensorKind::two_form, m);
}

SpacePoint project_mu(const SpacePoint& a) {
  const SpaceId space = a.space();
  if (space.tag != Space::TSTARM) throw SpaceMismatch("mu projects points of TSTARM");
  return SpacePoint({Space::VSTAR, space.n}, join(a[0], a.block(Coord::q), a.block(Coord::p)));
}

double fh(const HamiltonianSystem& sys, const SpacePoint& a) {
  require_space(a, {Space::TSTARM, sys.n});
  return a.at(Coord::p0) + sys.H(project_mu(a).coords());
}

Vec extended_field(const HamiltonianSystem& sys, const SpacePoint& a) {
  require_space(a, {Space::TSTARM, sys.n});
  const Jet2 j = jet2(sys.H, project_mu(a).coords());
  const int n = sys.n;
  Vec out(2 + 2 * n);
  out << 1.0, j.gradient.segment(1 + n, n), -j.gradient[0], -j.gradient.segment(1, n);
  return out;
}

Vec hamilton_residual(const HamiltonianSystem& sys, const Trajectory& tau, int k) {
  if (!(tau.space() == sys.phase_space())) {
    throw SpaceMismatch("Hamilton residual needs a curve in VSTAR");
  }
  require_interior(tau, k);
  const int n = sys.n;
  const Vec rate = tau.derivative(k);
  const Jet2 j = jet2(sys.H, tau.sample(k));
  Vec out(2 * n);
  out << rate.segment(1, n) - j.gradient.segment(1 + n, n),
      rate.segment(1 + n, n) + j.gradient.segment(1, n);
  return out;
}

SpacePoint invert_restricted_legendre(const LagrangianSystem& sys, const SpacePoint& v,
                                      const std::optional<Vec>& guess, NewtonOptions options) {
  require_space(v, {Space::VSTAR, sys.n});
  const Vec q = v.block(Coord::q);
  const Vec p = v.block(Coord::p);
  Vec vel = guess ? *guess : p;
  if (vel.size() != sys.n) throw ShapeError("initial velocity guess has the wrong length");

  for (int it = 0; it <= options.max_iterations; ++it) {
    const SpacePoint j({Space::J1PI, sys.n}, join(v[0], q, vel));
    const LagrangianJet lj = lagrangian_jet(sys, j);
    const Mat W = lj.vv();
    if (!is_regular(W, kDefaultRankTol)) {
      throw SingularLagrangian("velocity Hessian is singular during Legendre inversion");
    }
    const Vec residual = lj.dv() - p;
    if (residual.cwiseAbs().maxCoeff() <= options.tol) return j;
    if (it == options.max_iterations) break;
    vel -= W.partialPivLu().solve(residual);
    if (!vel.allFinite()) break;
  }
  throw NoConvergence("Legendre inversion did not converge in " +
                      std::to_string(options.max_iterations) + " iterations");
}

SpacePoint hamiltonian_from_lagrangian(const LagrangianSystem& sys, const SpacePoint& v) {
  return legendre_extended(sys, invert_restricted_legendre(sys, v));
}

HamiltonianSystem legendre_dual(const LagrangianSystem& sys) {
  return HamiltonianSystem(sys.n, ScalarField(std::make_shared<LegendreDualModel>(sys)),
                           sys.name + "/legendre");
}

CoordinateMap restricted_legendre_map(const LagrangianSystem& sys) {
  const int n = sys.n;
  CoordinateMap m;
  m.source = {Space::J1PI, n};
  m.target = {Space::VSTAR, n};
  m.apply = [sys](const Vec& x) {
    return legendre_restricted(sys, SpacePoint(sys.jet_space(), x)).coords();
  };
  m.differential = [sys, n](const Vec& x) {
    const Jet2 j = jet2(sys.L, x);
    Mat jac = Mat::Zero(1 + 2 * n, 1 + 2 * n);
    jac.topLeftCorner(1 + n, 1 + n).setIdentity();
    jac.bottomRows(n) = j.hessian.bottomRows(n);
    return jac;
  };
  return m;
}

CoordinateMap extended_legendre_map(const LagrangianSystem& sys) {
  const int n = sys.n;
  CoordinateMap m;
  m.source = {Space::J1PI, n};
  m.target = {Space::TSTARM, n};
  m.apply = [sys](const Vec& x) {
    return legendre_extended(sys, SpacePoint(sys.jet_space(), x)).coords();
  };
  m.differential = [sys, n](const Vec& x) {
    const Jet2 j = jet2(sys.L, x);
    const Vec v = x.tail(n);
    Mat jac = Mat::Zero(2 + 2 * n, 1 + 2 * n);
    jac.topLeftCorner(1 + n, 1 + n).setIdentity();
    // d(L - v.L_v) = dL - v^k dL_{v_k} - L_v dv
    Vec energy = j.gradient - j.hessian.bottomRows(n).transpose() * v;
    energy.tail(n) -= j.gradient.tail(n);
    jac.row(1 + n) = energy.transpose();
    jac.bottomRows(n) = j.hessian.bottomRows(n);
    return jac;
  };
  return m;
}

CoordinateMap hamiltonian_section_map(const HamiltonianSystem& sys) {
  const int n = sys.n;
  CoordinateMap m;
  m.source = {Space::VSTAR, n};
  m.target = {Space::TSTARM, n};
  m.apply = [sys, n](const Vec& x) {
    Vec out(2 + 2 * n);
    out << x.head(1 + n), -sys.H(x), x.tail(n);
    return out;
  };
  m.differential = [sys, n](const Vec& x) {
    const Jet2 j = jet2(sys.H, x);
    Mat jac = Mat::Zero(2 + 2 * n, 1 + 2 * n);
    jac.topLeftCorner(1 + n, 1 + n).setIdentity();
    jac.row(1 + n) = -j.gradient.transpose();
    jac.bottomRightCorner(n, n).setIdentity();
    return jac;
  };
  return m;
}

}  // namespace jetmech
