#pragma once

// Pointwise multilinear algebra on coordinate charts.
//
// Sign conventions (used by every module):
//   bivector  Lambda(dx^i, dx^j) = mat(i, j);  d/da ^ d/db has mat(a,b) = +1
//   two-form  omega(d_i, d_j)    = mat(i, j);  da ^ db      has mat(a,b) = +1
//   sharp(Lambda, alpha)  = Lambda(alpha, -),   components  v^j = sum_i alpha_i mat(i, j)
//   interior(omega, v)    = omega(v, -),        components  a_j = sum_i v^i mat(i, j)
// Pullback by a Jacobian J is J^T omega J, pushforward is J Lambda J^T.

#include <functional>
#include <vector>

#include "jetmech/spaces.hpp"

namespace jetmech {

inline constexpr double kDefaultRankTol = 1e-9;

enum class TensorKind { bivector, two_form };

/// Dense skew-symmetric matrix of a bivector or 2-form at a point.
class SkewTensor {
 public:
  /// Throws ShapeError if `mat` is not dim x dim or not skew to 1e-14.
  SkewTensor(SpaceId space, TensorKind kind, Mat mat);

  [[nodiscard]] const SpaceId& space() const { return space_; }
  [[nodiscard]] TensorKind kind() const { return kind_; }
  [[nodiscard]] const Mat& mat() const { return mat_; }

  /// Adds the elementary term  coeff * (x^a wedge x^b).
  static void add_wedge(Mat& m, int a, int b, double coeff = 1.0);

 private:
  SpaceId space_;
  TensorKind kind_;
  Mat mat_;
};

/// Jacobian of a map between two charts, dim(target) x dim(source).
struct LinearMapData {
  SpaceId source;
  SpaceId target;
  Mat mat;
};

/// Returns (A - A^T) / 2, which is skew to the last bit.
Mat skew_part(const Mat& a);

Vec sharp(const SkewTensor& bivector, const Vec& covector);
Vec interior(const SkewTensor& form, const Vec& vector);
double pair(const SkewTensor& s, const Vec& a, const Vec& b);

SkewTensor pullback_two_form(const LinearMapData& jac, const SkewTensor& form);
SkewTensor pushforward_bivector(const LinearMapData& jac, const SkewTensor& bivector);

/// Singular values below tol * max(largest singular value, 1 if all zero)
/// count as zero.
int numeric_rank(const Mat& a, double tol = kDefaultRankTol);

/// Orthonormal basis of ker(a), one column per vector.
Mat null_space(const Mat& a, double tol = kDefaultRankTol);

/// Orthonormal basis of the column span of a.
Mat column_basis(const Mat& a, double tol = kDefaultRankTol);

/// dim(span U  cap  span V) = rank U + rank V - rank [U V].
int intersection_dim(const Mat& u, const Mat& v, double tol = kDefaultRankTol);

std::vector<Vec> kernel_basis(const SkewTensor& s, double tol = kDefaultRankTol);
int skew_rank(const SkewTensor& s, double tol = kDefaultRankTol);

using BivectorField = std::function<SkewTensor(const SpacePoint&)>;

/// max over i<j<k of |Lambda^{il} d_l Lambda^{jk} + cyclic| with central
/// differences of step h. Zero for Poisson fields.
double schouten_residual(const BivectorField& field, const SpacePoint& x, double h);

}  // namespace jetmech
