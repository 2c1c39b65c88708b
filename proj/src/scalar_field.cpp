#include "jetmech/scalar_field.hpp"

#include <cmath>

#include "jetmech/errors.hpp"

namespace jetmech {
namespace {

class ExpressionModel final : public ScalarField::Model {
 public:
  explicit ExpressionModel(Expression e) : e_(std::move(e)) {}
  [[nodiscard]] int arity() const override { return e_.arity(); }
  [[nodiscard]] double value(const Vec& x) const override { return e_.eval(x.data()); }
  [[nodiscard]] Jet2 jet(const Vec& x) const override {
    const int d = e_.arity();
    std::vector<HyperDual> in;
    in.reserve(d);
    for (int i = 0; i < d; ++i) in.push_back(HyperDual::variable(x[i], i, d));
    const HyperDual r = e_.eval(in.data());
    return {r.value(), r.gradient(d), r.hessian(d)};
  }

 private:
  Expression e_;
};

void require_arity(const ScalarField& f, const Vec& x) {
  if (x.size() != f.arity()) {
    throw ShapeError("field of arity " + std::to_string(f.arity()) + " evaluated at a point of length " +
                     std::to_string(x.size()));
  }
}

}  // namespace

ScalarField ScalarField::from_expression(Expression e) {
  return ScalarField(std::make_shared<ExpressionModel>(std::move(e)));
}

double ScalarField::operator()(const Vec& x) const {
  require_arity(*this, x);
  const double v = model_->value(x);
  if (!std::isfinite(v)) throw DomainError("scalar field is not finite at the requested point");
  return v;
}

Jet2 ScalarField::jet(const Vec& x) const {
  require_arity(*this, x);
  Jet2 j = model_->jet(x);
  if (!std::isfinite(j.value) || !j.gradient.allFinite() || !j.hessian.allFinite()) {
    throw DomainError("scalar field is not differentiable at the requested point");
  }
  return j;
}

Jet2 jet2(const ScalarField& f, const Vec& x) { return f.jet(x); }

Jet2 fd_jet2(const ScalarField& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const int d = f.arity();
  require_arity(f, x);
  Jet2 out;
  out.value = f(x);
  out.gradient = Vec::Zero(d);
  out.hessian = Mat::Zero(d, d);

  auto shifted = [&](int i, double di, int j, double dj) {
    Vec y = x;
    y[i] += di;
    y[j] += dj;
    return f(y);
  };

  for (int i = 0; i < d; ++i) {
    const double up = shifted(i, h, i, 0.0);
    const double down = shifted(i, -h, i, 0.0);
    out.gradient[i] = (up - down) / (2.0 * h);
    out.hessian(i, i) = (up - 2.0 * out.value + down) / (h * h);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double mixed = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) +
                            shifted(i, -h, j, -h)) /
                           (4.0 * h * h);
      out.hessian(i, j) = mixed;
      out.hessian(j, i) = mixed;
    }
  }
  return out;
}

LinearMapData jacobian(const CoordinateMap& m, const Vec& x) {
  if (x.size() != m.source.dim()) throw ShapeError("point does not match the map source");
  Mat jac = m.differential(x);
  if (jac.rows() != m.target.dim() || jac.cols() != m.source.dim()) {
    throw ShapeError("map differential has the wrong shape");
  }
  return {m.source, m.target, std::move(jac)};
}

CoordinateMap identity_map(SpaceId space) {
  const int d = space.dim();
  return {space, space, [](const Vec& x) { return x; }, [d](const Vec&) { return Mat(Mat::Identity(d, d)); }};
}

}  // namespace jetmech
