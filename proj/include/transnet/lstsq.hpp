#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "transnet/errors.hpp"
#include "transnet/features.hpp"

namespace transnet {

/// Weighted least-squares problem min ||diag(sqrt(w)) (A x - b)|| with Q
/// right-hand sides. An empty `row_weights` means unit weights.
template <typename Scalar = double>
struct LstsqSystem {
  Mat<Scalar> a;
  Mat<Scalar> b;
  Vec<Scalar> row_weights;
};

template <typename Scalar = double>
struct LstsqSolution {
  Mat<Scalar> x;
  Index rank{0};
  Scalar residual_norm{0};  // weighted, Frobenius over all right-hand sides
};

inline constexpr double kDefaultRcond = 1e-12;

/// Minimum-norm least-squares solution via SVD; singular values below
/// rcond * sigma_max are dropped. Tall systems are first reduced by a
/// Householder QR so the SVD runs on the C x C triangular factor, which has
/// the same singular values and right singular vectors as A.
template <typename Scalar = double>
LstsqSolution<Scalar> solve(const LstsqSystem<Scalar>& sys, Scalar rcond = Scalar(kDefaultRcond)) {
  const Index rows = sys.a.rows();
  const Index cols = sys.a.cols();
  if (rows < 1 || cols < 1) throw ConfigError("lstsq: empty system");
  if (sys.b.rows() != rows) throw DimensionError("lstsq: rhs row count does not match A");
  if (sys.row_weights.size() != 0 && sys.row_weights.size() != rows)
    throw DimensionError("lstsq: weight count does not match A");
  if (!sys.a.allFinite() || !sys.b.allFinite()) throw NumericalError("lstsq: non-finite entries in system");
  if (sys.row_weights.size() != 0 && !(sys.row_weights.array() > 0).all())
    throw ConfigError("lstsq: row weights must be positive");

  Mat<Scalar> wa = sys.a;
  Mat<Scalar> wb = sys.b;
  if (sys.row_weights.size() != 0) {
    const Vec<Scalar> s = sys.row_weights.cwiseSqrt();
    wa.array().colwise() *= s.array();
    wb.array().colwise() *= s.array();
  }

  Mat<Scalar> core;
  Mat<Scalar> rhs;
  if (rows > cols) {
    Eigen::HouseholderQR<Mat<Scalar>> qr(std::move(wa));
    core = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
    rhs = wb;
    rhs.applyOnTheLeft(qr.householderQ().transpose());
    rhs.conservativeResize(cols, Eigen::NoChange);
  } else {
    core = std::move(wa);
    rhs = wb;
  }

  Eigen::BDCSVD<Mat<Scalar>> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("lstsq: SVD did not converge");
  const Vec<Scalar>& sigma = svd.singularValues();
  const Scalar cutoff = sigma.size() > 0 ? rcond * sigma(0) : Scalar(0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

  LstsqSolution<Scalar> out;
  out.rank = rank;
  Mat<Scalar> coeff = svd.matrixU().leftCols(rank).transpose() * rhs;
  coeff.array().colwise() /= sigma.head(rank).array();
  out.x = svd.matrixV().leftCols(rank) * coeff;
  if (!out.x.allFinite()) throw NumericalError("lstsq: non-finite solution");

  Mat<Scalar> resid = sys.a * out.x - sys.b;
  if (sys.row_weights.size() != 0) resid.array().colwise() *= sys.row_weights.cwiseSqrt().array();
  out.residual_norm = resid.norm();
  return out;
}

}  // namespace transnet
