#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "jetmech/expression.hpp"
#include "jetmech/geometry.hpp"
#include "jetmech/hyperdual.hpp"
#include "jetmech/spaces.hpp"

namespace jetmech {

/// Value, gradient and (symmetric) Hessian of a scalar field at a point.
struct Jet2 {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

/// A real function of a coordinate tuple with exact first and second
/// derivatives. Cheap to copy; the underlying model is shared and immutable.
class ScalarField {
 public:
  class Model {
   public:
    virtual ~Model() = default;
    [[nodiscard]] virtual int arity() const = 0;
    [[nodiscard]] virtual double value(const Vec& x) const = 0;
    [[nodiscard]] virtual Jet2 jet(const Vec& x) const = 0;
  };

  explicit ScalarField(std::shared_ptr<const Model> model) : model_(std::move(model)) {}

  /// A field given by a generic callable `f(const T* x) -> T`, instantiated
  /// for T = double and T = HyperDual.
  template <class F>
  static ScalarField native(int arity, F f);

  static ScalarField from_expression(Expression e);

  [[nodiscard]] int arity() const { return model_->arity(); }
  [[nodiscard]] double operator()(const Vec& x) const;
  [[nodiscard]] Jet2 jet(const Vec& x) const;

 private:
  std::shared_ptr<const Model> model_;
};

/// Exact value, gradient and Hessian by forward-mode differentiation.
/// Throws DomainError if the field is not finite at x.
Jet2 jet2(const ScalarField& f, const Vec& x);

/// Central-difference oracle: gradient and Hessian both O(h^2).
Jet2 fd_jet2(const ScalarField& f, const Vec& x, double h);

namespace detail {

template <class F>
class NativeModel final : public ScalarField::Model {
 public:
  NativeModel(int arity, F f) : arity_(arity), f_(std::move(f)) {}
  [[nodiscard]] int arity() const override { return arity_; }
  [[nodiscard]] double value(const Vec& x) const override { return f_(x.data()); }
  [[nodiscard]] Jet2 jet(const Vec& x) const override {
    std::vector<HyperDual> in;
    in.reserve(arity_);
    for (int i = 0; i < arity_; ++i) in.push_back(HyperDual::variable(x[i], i, arity_));
    const HyperDual r = f_(in.data());
    return {r.value(), r.gradient(arity_), r.hessian(arity_)};
  }

 private:
  int arity_;
  F f_;
};

}  // namespace detail

template <class F>
ScalarField ScalarField::native(int arity, F f) {
  return ScalarField(std::make_shared<detail::NativeModel<F>>(arity, std::move(f)));
}

/// A smooth map between charts, evaluated on plain numbers and differentiated
/// exactly. `apply` receives and returns coordinate vectors.
struct CoordinateMap {
  SpaceId source;
  SpaceId target;
  std::function<Vec(const Vec&)> apply;
  std::function<Mat(const Vec&)> differential;
};

/// Exact Jacobian of `m` at x.
LinearMapData jacobian(const CoordinateMap& m, const Vec& x);

/// Builds a CoordinateMap from a generic callable
/// `f(const std::vector<T>&) -> std::vector<T>` whose Jacobian comes from
/// forward-mode evaluation.
template <class F>
CoordinateMap forward_mode_map(SpaceId source, SpaceId target, F f) {
  CoordinateMap m;
  m.source = source;
  m.target = target;
  m.apply = [f](const Vec& x) {
    std::vector<double> in(x.data(), x.data() + x.size());
    const std::vector<double> out = f(in);
    return Vec(Eigen::Map<const Vec>(out.data(), static_cast<Eigen::Index>(out.size())));
  };
  m.differential = [f, target](const Vec& x) {
    const int d = static_cast<int>(x.size());
    std::vector<HyperDual> in;
    in.reserve(d);
    for (int i = 0; i < d; ++i) in.push_back(HyperDual::variable(x[i], i, d));
    const std::vector<HyperDual> out = f(in);
    Mat jac(target.dim(), d);
    for (int r = 0; r < jac.rows(); ++r) jac.row(r) = out[r].gradient(d).transpose();
    return jac;
  };
  return m;
}

CoordinateMap identity_map(SpaceId space);

}  // namespace jetmech
