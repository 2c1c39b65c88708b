#include "jetmech/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "jetmech/errors.hpp"

namespace jetmech {
namespace {

constexpr double kSkewTol = 1e-14;

void require_tol(double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

double rank_threshold(const Vec& singular_values, double tol) {
  const double largest = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return tol * (largest > 0.0 ? largest : 1.0);
}

}  // namespace

SkewTensor::SkewTensor(SpaceId space, TensorKind kind, Mat mat)
    : space_(space), kind_(kind), mat_(std::move(mat)) {
  const int d = space_.dim();
  if (mat_.rows() != d || mat_.cols() != d) {
    throw ShapeError("skew tensor on " + space_.name() + " must be " + std::to_string(d) +
                     "x" + std::to_string(d));
  }
  if (d > 0 && (mat_ + mat_.transpose()).cwiseAbs().maxCoeff() > kSkewTol) {
    throw ShapeError("matrix is not skew-symmetric");
  }
}

void SkewTensor::add_wedge(Mat& m, int a, int b, double coeff) {
  m(a, b) += coeff;
  m(b, a) -= coeff;
}

Mat skew_part(const Mat& a) { return 0.5 * (a - a.transpose()); }

Vec sharp(const SkewTensor& bivector, const Vec& covector) {
  if (bivector.kind() != TensorKind::bivector) throw InvalidArgument("sharp needs a bivector");
  if (covector.size() != bivector.mat().rows()) throw ShapeError("covector length mismatch");
  return bivector.mat().transpose() * covector;
}

Vec interior(const SkewTensor& form, const Vec& vector) {
  if (form.kind() != TensorKind::two_form) throw InvalidArgument("interior needs a 2-form");
  if (vector.size() != form.mat().rows()) throw ShapeError("vector length mismatch");
  return form.mat().transpose() * vector;
}

double pair(const SkewTensor& s, const Vec& a, const Vec& b) {
  if (a.size() != s.mat().rows() || b.size() != s.mat().rows()) {
    throw ShapeError("argument length mismatch");
  }
  return a.dot(s.mat() * b);
}

SkewTensor pullback_two_form(const LinearMapData& jac, const SkewTensor& form) {
  if (form.kind() != TensorKind::two_form) throw InvalidArgument("pullback needs a 2-form");
  if (!(form.space() == jac.target)) throw SpaceMismatch("form does not live on the map target");
  if (jac.mat.rows() != jac.target.dim() || jac.mat.cols() != jac.source.dim()) {
    throw ShapeError("Jacobian shape does not match its spaces");
  }
  return SkewTensor(jac.source, TensorKind::two_form,
                    skew_part(jac.mat.transpose() * form.mat() * jac.mat));
}

SkewTensor pushforward_bivector(const LinearMapData& jac, const SkewTensor& bivector) {
  if (bivector.kind() != TensorKind::bivector) {
    throw InvalidArgument("pushforward needs a bivector");
  }
  if (!(bivector.space() == jac.source)) {
    throw SpaceMismatch("bivector does not live on the map source");
  }
  if (jac.mat.rows() != jac.target.dim() || jac.mat.cols() != jac.source.dim()) {
    throw ShapeError("Jacobian shape does not match its spaces");
  }
  return SkewTensor(jac.target, TensorKind::bivector,
                    skew_part(jac.mat * bivector.mat() * jac.mat.transpose()));
}

int numeric_rank(const Mat& a, double tol) {
  require_tol(tol);
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  const double cut = rank_threshold(s, tol);
  return static_cast<int>((s.array() > cut).count());
}

Mat null_space(const Mat& a, double tol) {
  require_tol(tol);
  const int cols = static_cast<int>(a.cols());
  if (a.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double cut = rank_threshold(s, tol);
  const int rank = static_cast<int>((s.array() > cut).count());
  return svd.matrixV().rightCols(cols - rank);
}

Mat column_basis(const Mat& a, double tol) {
  require_tol(tol);
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double cut = rank_threshold(s, tol);
  const int rank = static_cast<int>((s.array() > cut).count());
  return svd.matrixU().leftCols(rank);
}

int intersection_dim(const Mat& u, const Mat& v, double tol) {
  if (u.rows() != v.rows()) throw ShapeError("subspaces live in different dimensions");
  Mat stacked(u.rows(), u.cols() + v.cols());
  stacked << u, v;
  return numeric_rank(u, tol) + numeric_rank(v, tol) - numeric_rank(stacked, tol);
}

std::vector<Vec> kernel_basis(const SkewTensor& s, double tol) {
  const Mat basis = null_space(s.mat(), tol);
  std::vector<Vec> out;
  out.reserve(basis.cols());
  for (int c = 0; c < basis.cols(); ++c) out.emplace_back(basis.col(c));
  return out;
}

int skew_rank(const SkewTensor& s, double tol) { return numeric_rank(s.mat(), tol); }

double schouten_residual(const BivectorField& field, const SpacePoint& x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("step must be positive");
  const int d = x.space().dim();
  const Mat center = field(x).mat();

  // partial[l] = d_l Lambda at x
  std::vector<Mat> partial;
  partial.reserve(d);
  for (int l = 0; l < d; ++l) {
    Vec plus = x.coords();
    Vec minus = x.coords();
    plus[l] += h;
    minus[l] -= h;
    const Mat up = field(SpacePoint(x.space(), plus)).mat();
    const Mat down = field(SpacePoint(x.space(), minus)).mat();
    partial.push_back((up - down) / (2.0 * h));
  }

  auto term = [&](int a, int b, int c) {
    double acc = 0.0;
    for (int l = 0; l < d; ++l) acc += center(a, l) * partial[l](b, c);
    return acc;
  };

  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        const double cyclic = term(i, j, k) + term(j, k, i) + term(k, i, j);
        worst = std::max(worst, std::abs(cyclic));
      }
    }
  }
  return worst;
}

}  // namespace jetmech
