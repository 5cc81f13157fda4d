#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "transnet/errors.hpp"
#include "transnet/rng.hpp"

namespace transnet {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/// One hidden unit in point-slope form: the partition hyperplane has unit
/// normal `a` and passes through `r * a`; `gamma` sets the tanh steepness
/// along the normal.
template <typename Scalar = double>
struct Neuron {
  Vec<Scalar> a;
  Scalar r{0};
  Scalar gamma{1};
};

/// The same unit written as tanh(w . y + b).
template <typename Scalar = double>
struct AffineNeuron {
  Vec<Scalar> w;
  Scalar b{0};
};

template <typename Scalar = double>
AffineNeuron<Scalar> to_affine(const Neuron<Scalar>& n) {
  AffineNeuron<Scalar> out;
  out.w = n.gamma * n.a;
  out.b = -n.gamma * n.a.squaredNorm() * n.r;
  return out;
}

/// Distance from `y` to the partition hyperplane of `n`; `n.a` must be unit.
template <typename Scalar = double>
Scalar dist(const Vec<Scalar>& y, const Neuron<Scalar>& n) {
  return std::abs(n.a.dot(y) - n.r);
}

/// Dense affine form of a whole feature layer: row m of `w` and entry m of
/// `b` describe tanh(w_m . y + b_m). Both the tuned feature space and the
/// random-feature baseline reduce to this.
template <typename Scalar = double>
struct AffineFeatures {
  Mat<Scalar> w;  // M x d
  Vec<Scalar> b;  // M

  Index dim() const { return w.cols(); }
  Index size() const { return w.rows(); }
};

/// Draws `count` directions uniformly on the unit sphere in R^dim by
/// normalizing standard Gaussian vectors. Returns a count x dim matrix.
template <typename Scalar = double>
Mat<Scalar> sample_directions(Index dim, Index count, Engine& rng) {
  if (dim < 1 || count < 1) throw ConfigError("sample_directions: dim and count must be >= 1");
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Mat<Scalar> out(count, dim);
  Vec<Scalar> g(dim);
  for (Index m = 0; m < count; ++m) {
    Scalar norm = 0;
    do {
      for (Index i = 0; i < dim; ++i) g(i) = normal(rng);
      norm = g.norm();
    } while (!(norm >= Scalar(1e-300)));
    out.row(m) = (g / norm).transpose();
  }
  return out;
}

/// `count` i.i.d. Uniform[0,1] offsets.
template <typename Scalar = double>
Vec<Scalar> sample_radii(Index count, Engine& rng) {
  if (count < 1) throw ConfigError("sample_radii: count must be >= 1");
  std::uniform_real_distribution<Scalar> uniform(Scalar(0), Scalar(1));
  Vec<Scalar> out(count);
  for (Index m = 0; m < count; ++m) out(m) = uniform(rng);
  return out;
}

/// Metadata recorded when the shape parameter was tuned.
struct TuningMeta {
  double eta{0};
  int realizations{0};
  std::vector<double> gamma_grid;
  double achieved_loss{0};
};

/// An ordered set of M neurons sharing one shape parameter, defined on the
/// unit ball in R^dim. Immutable once built.
template <typename Scalar = double>
class FeatureSpaceT {
 public:
  /// Draws M neurons from (dim, seed). Directions and offsets come from
  /// separate sub-streams, so the first k neurons of an M-neuron space equal
  /// the k-neuron space with the same seed.
  static FeatureSpaceT generate(Index dim, Index count, std::uint64_t seed, Scalar gamma = 1) {
    Engine dir_rng = make_engine(seed, streams::kDirections);
    Engine rad_rng = make_engine(seed, streams::kRadii);
    Mat<Scalar> a = sample_directions<Scalar>(dim, count, dir_rng);
    Vec<Scalar> r = sample_radii<Scalar>(count, rad_rng);
    return FeatureSpaceT(std::move(a), std::move(r), seed, gamma);
  }

  FeatureSpaceT(Mat<Scalar> directions, Vec<Scalar> radii, std::uint64_t seed, Scalar gamma,
                std::optional<TuningMeta> meta = std::nullopt)
      : a_(std::move(directions)), r_(std::move(radii)), seed_(seed), gamma_(gamma),
        meta_(std::move(meta)) {
    if (a_.rows() < 1 || a_.cols() < 1) throw ConfigError("feature space must have dim >= 1 and M >= 1");
    if (r_.size() != a_.rows()) throw DimensionError("feature space: |r| does not match number of directions");
    if (!(gamma_ > 0) || !std::isfinite(static_cast<double>(gamma_)))
      throw ConfigError("feature space: gamma must be positive and finite");
    for (Index m = 0; m < a_.rows(); ++m) {
      if (std::abs(static_cast<double>(a_.row(m).norm()) - 1.0) > 1e-12)
        throw ConfigError("feature space: direction " + std::to_string(m) + " is not a unit vector");
      if (!(r_(m) >= 0 && r_(m) <= 1))
        throw ConfigError("feature space: offset " + std::to_string(m) + " outside [0,1]");
    }
  }

  Index dim() const { return a_.cols(); }
  Index size() const { return a_.rows(); }
  std::uint64_t seed() const { return seed_; }
  Scalar gamma() const { return gamma_; }
  const Mat<Scalar>& directions() const { return a_; }
  const Vec<Scalar>& radii() const { return r_; }
  const std::optional<TuningMeta>& tuning() const { return meta_; }

  Neuron<Scalar> neuron(Index m) const { return {a_.row(m).transpose(), r_(m), gamma_}; }

  AffineFeatures<Scalar> affine() const {
    AffineFeatures<Scalar> out;
    out.w = gamma_ * a_;
    out.b = -gamma_ * (a_.rowwise().squaredNorm().array() * r_.array()).matrix();
    return out;
  }

  FeatureSpaceT with_gamma(Scalar gamma, std::optional<TuningMeta> meta = std::nullopt) const {
    return FeatureSpaceT(a_, r_, seed_, gamma, std::move(meta));
  }

  /// First `count` neurons. Keeps the seed, so regenerating with
  /// (dim, count, seed) yields the same geometry.
  FeatureSpaceT prefix(Index count) const {
    if (count < 1 || count > size()) throw ConfigError("prefix: count out of range");
    return FeatureSpaceT(a_.topRows(count), r_.head(count), seed_, gamma_);
  }

 private:
  Mat<Scalar> a_;
  Vec<Scalar> r_;
  std::uint64_t seed_;
  Scalar gamma_;
  std::optional<TuningMeta> meta_;
};

using FeatureSpace = FeatureSpaceT<double>;

/// Fraction of neurons whose hyperplane passes within `tau` of `y`.
template <typename Scalar = double>
Scalar density(const Vec<Scalar>& y, const FeatureSpaceT<Scalar>& fs, Scalar tau) {
  if (!(tau > 0)) throw ConfigError("density: tau must be positive");
  const Vec<Scalar> d = ((fs.directions() * y) - fs.radii()).cwiseAbs();
  return static_cast<Scalar>((d.array() < tau).count()) / static_cast<Scalar>(fs.size());
}

/// Density for arbitrary affine features: distance |w.y + b| / ||w||.
/// Units with w = 0 have no hyperplane and never count.
template <typename Scalar = double>
Scalar density(const Vec<Scalar>& y, const AffineFeatures<Scalar>& f, Scalar tau) {
  if (!(tau > 0)) throw ConfigError("density: tau must be positive");
  const Vec<Scalar> norms = f.w.rowwise().norm();
  const Vec<Scalar> pre = (f.w * y + f.b).cwiseAbs();
  Index hits = 0;
  for (Index m = 0; m < f.size(); ++m)
    if (norms(m) > 0 && pre(m) < tau * norms(m)) ++hits;
  return static_cast<Scalar>(hits) / static_cast<Scalar>(f.size());
}

/// Feature values and derivatives at J points. Column 0 is the constant
/// basis function; column m+1 is neuron m.
///   grad[i](j, m)        = d/dy_i  of column m at point j
///   hess[i * d + k](j, m) = d2/dy_i dy_k of column m at point j
template <typename Scalar = double>
struct FeatureEval {
  Mat<Scalar> values;
  std::vector<Mat<Scalar>> grad;
  std::vector<Mat<Scalar>> hess;
};

template <typename Scalar = double>
FeatureEval<Scalar> eval_features(const AffineFeatures<Scalar>& f, const Mat<Scalar>& points, int order) {
  if (order < 0 || order > 2) throw ConfigError("eval_features: order must be 0, 1 or 2");
  if (points.cols() != f.dim()) throw DimensionError("eval_features: point dimension does not match features");
  const Index rows = points.rows();
  const Index count = f.size();
  const Index dim = f.dim();

  Mat<Scalar> phi = ((points * f.w.transpose()).rowwise() + f.b.transpose()).array().tanh().matrix();
  FeatureEval<Scalar> out;
  out.values.resize(rows, count + 1);
  out.values.col(0).setOnes();
  out.values.rightCols(count) = phi;
  if (order == 0) return out;

  const Mat<Scalar> slope = (Scalar(1) - phi.array().square()).matrix();
  out.grad.resize(dim);
  for (Index i = 0; i < dim; ++i) {
    out.grad[i] = Mat<Scalar>::Zero(rows, count + 1);
    out.grad[i].rightCols(count) = (slope.array().rowwise() * f.w.col(i).transpose().array()).matrix();
  }
  if (order == 1) return out;

  const Mat<Scalar> curv = (Scalar(-2) * phi.array() * slope.array()).matrix();
  out.hess.resize(dim * dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index k = 0; k < dim; ++k) {
      out.hess[i * dim + k] = Mat<Scalar>::Zero(rows, count + 1);
      out.hess[i * dim + k].rightCols(count) =
          (curv.array().rowwise() * (f.w.col(i).array() * f.w.col(k).array()).transpose()).matrix();
    }
  }
  return out;
}

/// Pointwise coefficients of a linear differential operator with no mixed
/// second derivatives:
///   (L u)(x_j) = c0(j) u + sum_i c1(j,i) du/dx_i + sum_i c2(j,i) d2u/dx_i2
/// An empty member means that order is absent.
template <typename Scalar = double>
struct LinearCoeffs {
  Vec<Scalar> c0;
  Mat<Scalar> c1;
  Mat<Scalar> c2;
};

/// Rows of L applied to every basis column at `points`, J x (M+1). Contracts
/// the derivative formulas of eval_features without materializing them.
template <typename Scalar = double>
Mat<Scalar> operator_matrix(const AffineFeatures<Scalar>& f, const Mat<Scalar>& points,
                            const LinearCoeffs<Scalar>& c) {
  if (points.cols() != f.dim()) throw DimensionError("operator_matrix: point dimension does not match features");
  const Index rows = points.rows();
  const Index count = f.size();
  const auto check = [&](Index r, Index cols, const char* what) {
    if (r != 0 && (r != rows || cols != f.dim()))
      throw DimensionError(std::string("operator_matrix: bad shape for ") + what);
  };
  if (c.c0.size() != 0 && c.c0.size() != rows) throw DimensionError("operator_matrix: bad shape for c0");
  check(c.c1.rows(), c.c1.cols(), "c1");
  check(c.c2.rows(), c.c2.cols(), "c2");

  const Mat<Scalar> phi = ((points * f.w.transpose()).rowwise() + f.b.transpose()).array().tanh().matrix();
  Mat<Scalar> out = Mat<Scalar>::Zero(rows, count + 1);
  if (c.c0.size() != 0) {
    out.col(0) = c.c0;
    out.rightCols(count) = (phi.array().colwise() * c.c0.array()).matrix();
  }
  if (c.c1.rows() == 0 && c.c2.rows() == 0) return out;

  const auto slope = (Scalar(1) - phi.array().square());
  if (c.c1.rows() != 0) {
    const Mat<Scalar> drift = c.c1 * f.w.transpose();
    out.rightCols(count).array() += slope * drift.array();
  }
  if (c.c2.rows() != 0) {
    const Mat<Scalar> diffusion = c.c2 * f.w.array().square().matrix().transpose();
    out.rightCols(count).array() += Scalar(-2) * phi.array() * slope * diffusion.array();
  }
  return out;
}

/// Translation + dilation placing a physical domain inside the unit ball:
/// y = (x - center) / radius.
template <typename Scalar = double>
struct BallMap {
  Vec<Scalar> center;
  Scalar radius{1};

  Index dim() const { return center.size(); }

  Mat<Scalar> apply(const Mat<Scalar>& x) const {
    return (x.rowwise() - center.transpose()) / radius;
  }

  /// First- and second-order chain factors d y / d x and d2 y / dx2 scale.
  Scalar first_order_factor() const { return Scalar(1) / radius; }
  Scalar second_order_factor() const { return Scalar(1) / (radius * radius); }

  /// Features expressed in physical coordinates: tanh(w.(x-c)/rho + b) =
  /// tanh((w/rho).x + b - w.c/rho). Derivatives of the result carry the
  /// 1/rho chain factors automatically.
  AffineFeatures<Scalar> pull_back(const AffineFeatures<Scalar>& f) const {
    if (f.dim() != dim()) throw DimensionError("ball map dimension does not match features");
    AffineFeatures<Scalar> out;
    out.w = f.w * first_order_factor();
    out.b = f.b - out.w * center;
    return out;
  }
};

}  // namespace transnet
