#include "transnet/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "transnet/rng.hpp"

namespace transnet {

namespace {

void validate(const GpConfig& cfg) {
  if (!(cfg.eta > 0)) throw ConfigError("gp: eta must be positive");
  if (!(cfg.variance > 0)) throw ConfigError("gp: variance must be positive");
  if (cfg.num_fourier < 1) throw ConfigError("gp: num_fourier must be >= 1");
}

// Maps every point to the index of its first exact duplicate. Coincident
// points are perfectly correlated and must receive identical values.
std::vector<Index> dedupe(const Mat<double>& points, std::vector<Index>& representatives) {
  const Index n = points.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  const auto less = [&](Index a, Index b) {
    for (Index i = 0; i < points.cols(); ++i) {
      if (points(a, i) != points(b, i)) return points(a, i) < points(b, i);
    }
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Index> out(n);
  representatives.clear();
  for (Index pos = 0; pos < n; ++pos) {
    const Index j = order[pos];
    if (pos == 0 || points.row(j) != points.row(order[pos - 1])) representatives.push_back(j);
    out[j] = static_cast<Index>(representatives.size()) - 1;
  }
  return out;
}

}  // namespace

double gp_kernel(const GpConfig& cfg, const Vec<double>& x, const Vec<double>& y) {
  return cfg.variance * std::exp(-(x - y).squaredNorm() / (2.0 * cfg.eta * cfg.eta));
}

Mat<double> gp_kernel_matrix(const GpConfig& cfg, const Mat<double>& points) {
  const Index n = points.rows();
  const Vec<double> sq = points.rowwise().squaredNorm();
  Mat<double> d2 = -2.0 * points * points.transpose();
  d2.colwise() += sq;
  d2.rowwise() += sq.transpose();
  Mat<double> k = (-(d2.array().max(0.0)) / (2.0 * cfg.eta * cfg.eta)).exp() * cfg.variance;
  k.diagonal().setConstant(cfg.variance);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j) k(i, j) = k(j, i);
  return k;
}

GpSampler::GpSampler(Mat<double> points, GpConfig cfg, Method method)
    : points_(std::move(points)), cfg_(cfg), method_(method) {
  validate(cfg_);
  if (points_.rows() < 1) throw ConfigError("gp: need at least one point");
  if (!points_.allFinite()) throw NumericalError("gp: non-finite sample point");

  std::vector<Index> reps;
  unique_of_ = dedupe(points_, reps);
  const auto unique = static_cast<Index>(reps.size());
  if (method_ == Method::kAuto) method_ = unique <= kCholeskyLimit ? Method::kCholesky : Method::kFourier;
  if (method_ == Method::kFourier) return;

  Mat<double> up(unique, points_.cols());
  for (Index u = 0; u < unique; ++u) up.row(u) = points_.row(reps[u]);
  const Mat<double> k = gp_kernel_matrix(cfg_, up);
  for (double jitter = 1e-10; jitter <= 1e-6 * (1 + 1e-9); jitter *= 10) {
    Mat<double> kj = k;
    kj.diagonal().array() += jitter * cfg_.variance;
    Eigen::LLT<Mat<double>> llt(kj);
    if (llt.info() == Eigen::Success) {
      factor_ = llt.matrixL();
      jitter_ = jitter;
      return;
    }
  }
  throw NumericalError("gp: covariance not positive definite after jitter 1e-6");
}

Vec<double> GpSampler::sample_cholesky(int k) const {
  Engine rng = make_engine(cfg_.seed, streams::kGpBase + static_cast<std::uint64_t>(k));
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec<double> z(factor_.rows());
  for (Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  const Vec<double> unique_values = factor_.triangularView<Eigen::Lower>() * z;
  Vec<double> out(points_.rows());
  for (Index j = 0; j < out.size(); ++j) out(j) = unique_values(unique_of_[j]);
  return out;
}

// f(x) = sqrt(2 var / D) sum_l xi_l cos(omega_l . x + phase_l) with
// omega ~ N(0, eta^-2 I), phase ~ U[0, 2 pi), xi ~ N(0, 1), all redrawn for
// every realization. Averaged over realizations the covariance is exactly
// the squared-exponential kernel.
Vec<double> GpSampler::sample_fourier(int k) const {
  Engine rng = make_engine(cfg_.seed, streams::kGpBase + static_cast<std::uint64_t>(k));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  const Index dim = points_.cols();
  const Index nf = cfg_.num_fourier;
  Mat<double> omega(nf, dim);
  for (Index l = 0; l < nf; ++l)
    for (Index i = 0; i < dim; ++i) omega(l, i) = normal(rng) / cfg_.eta;
  Vec<double> phase(nf);
  for (Index l = 0; l < nf; ++l) phase(l) = phase_dist(rng);
  Vec<double> xi(nf);
  for (Index l = 0; l < nf; ++l) xi(l) = normal(rng);

  const Mat<double> arg = (points_ * omega.transpose()).rowwise() + phase.transpose();
  return std::sqrt(2.0 * cfg_.variance / static_cast<double>(nf)) * (arg.array().cos().matrix() * xi);
}

GpRealization GpSampler::sample(int k) const {
  GpRealization out;
  out.points = points_;
  out.values = method_ == Method::kCholesky ? sample_cholesky(k) : sample_fourier(k);
  out.config = cfg_;
  out.realization_index = k;
  if (!out.values.allFinite()) throw NumericalError("gp: non-finite realization");
  return out;
}

GpRealization sample_gp(const Mat<double>& points, const GpConfig& cfg, int k) {
  return GpSampler(points, cfg).sample(k);
}

}  // namespace transnet
