#pragma once

// Second-order forward-mode number: value, gradient and Hessian with respect
// to a fixed set of seeded inputs. A number with an empty gradient is a
// constant. Every operation builds the Hessian from symmetric terms, so it
// stays exactly symmetric.

#include <cmath>

#include <Eigen/Dense>

namespace jetmech {

class HyperDual {
 public:
  HyperDual() = default;
  HyperDual(double value) : v_(value) {}  // NOLINT: implicit by design of the arithmetic

  /// Input variable `index` out of `count`.
  static HyperDual variable(double value, int index, int count) {
    HyperDual x(value);
    x.g_ = Eigen::VectorXd::Zero(count);
    x.g_[index] = 1.0;
    x.h_ = Eigen::MatrixXd::Zero(count, count);
    return x;
  }

  [[nodiscard]] double value() const { return v_; }
  [[nodiscard]] bool is_constant() const { return g_.size() == 0; }
  [[nodiscard]] const Eigen::VectorXd& gradient() const { return g_; }
  [[nodiscard]] const Eigen::MatrixXd& hessian() const { return h_; }

  /// Gradient padded to `count` entries (constants have none stored).
  [[nodiscard]] Eigen::VectorXd gradient(int count) const {
    return is_constant() ? Eigen::VectorXd::Zero(count) : g_;
  }
  [[nodiscard]] Eigen::MatrixXd hessian(int count) const {
    return is_constant() ? Eigen::MatrixXd::Zero(count, count) : h_;
  }

  /// f(u) with f'(u), f''(u) supplied.
  [[nodiscard]] HyperDual chain(double f, double df, double d2f) const {
    HyperDual r(f);
    if (!is_constant()) {
      r.g_ = df * g_;
      // Materialized so the scalar is not folded into one factor, which
      // would break exact symmetry.
      const Eigen::MatrixXd outer = g_ * g_.transpose();
      r.h_ = df * h_ + d2f * outer;
    }
    return r;
  }

  HyperDual operator-() const { return chain(-v_, -1.0, 0.0); }

  friend HyperDual operator+(const HyperDual& a, const HyperDual& b) {
    HyperDual r(a.v_ + b.v_);
    if (a.is_constant()) {
      r.g_ = b.g_;
      r.h_ = b.h_;
    } else if (b.is_constant()) {
      r.g_ = a.g_;
      r.h_ = a.h_;
    } else {
      r.g_ = a.g_ + b.g_;
      r.h_ = a.h_ + b.h_;
    }
    return r;
  }

  friend HyperDual operator-(const HyperDual& a, const HyperDual& b) { return a + (-b); }

  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    if (a.is_constant()) return b.chain(a.v_ * b.v_, a.v_, 0.0);
    if (b.is_constant()) return a.chain(a.v_ * b.v_, b.v_, 0.0);
    HyperDual r(a.v_ * b.v_);
    r.g_ = a.v_ * b.g_ + b.v_ * a.g_;
    const Eigen::MatrixXd cross = a.g_ * b.g_.transpose();
    r.h_ = a.v_ * b.h_ + b.v_ * a.h_ + (cross + cross.transpose());
    return r;
  }

  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    const double inv = 1.0 / b.v_;
    return a * b.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  HyperDual& operator+=(const HyperDual& o) { return *this = *this + o; }
  HyperDual& operator-=(const HyperDual& o) { return *this = *this - o; }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

 private:
  double v_ = 0.0;
  Eigen::VectorXd g_;
  Eigen::MatrixXd h_;
};

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.value());
  return x.chain(s, std::cos(x.value()), -s);
}

inline HyperDual cos(const HyperDual& x) {
  const double c = std::cos(x.value());
  return x.chain(c, -std::sin(x.value()), -c);
}

inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.value());
  return x.chain(e, e, e);
}

inline HyperDual log(const HyperDual& x) {
  const double inv = 1.0 / x.value();
  return x.chain(std::log(x.value()), inv, -inv * inv);
}

/// x^c for a constant exponent.
inline HyperDual pow(const HyperDual& x, double c) {
  if (c == 0.0) return HyperDual(1.0);
  if (c == 1.0) return x;
  if (c == 2.0) return x * x;
  const double u = x.value();
  return x.chain(std::pow(u, c), c * std::pow(u, c - 1.0), c * (c - 1.0) * std::pow(u, c - 2.0));
}

inline HyperDual pow(const HyperDual& x, const HyperDual& y) {
  if (y.is_constant()) return pow(x, y.value());
  return exp(y * log(x));
}

}  // namespace jetmech
